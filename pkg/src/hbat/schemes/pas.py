"""Honeyword-enabled PAS: predicate secrets over paired letter tables.

A secret is two predicates, each a 5x5 block index plus a letter. Every
round shows two challenge tables of 25 blocks x 13 letters; the user
checks, for each predicate, whether its letter appears in its block in
each table, obtaining a 4-entry yes/no answer sequence, and types the
response element that sequence maps to. The designated round's tables
are built so each sweetword's predicate pair lands on a distinct
response element.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from ..core import SweetwordList, SessionTranscript, identify_sweetword

LETTERS = string.ascii_uppercase
RESPONSE_ELEMENTS = "PQRS"


class Predicate(NamedTuple):
    row: int       # 1..5
    col: int       # 1..5
    letter: str    # 'A'..'Z'

    def label(self) -> str:
        return f"{self.row}{self.col}{self.letter}"


def parse_predicate(text: str) -> Predicate:
    if len(text) != 3 or not text[:2].isdigit() or text[2] not in LETTERS:
        raise ValueError(f"bad predicate {text!r}; expected e.g. '23E'")
    pred = Predicate(int(text[0]), int(text[1]), text[2])
    if not (1 <= pred.row <= 5 and 1 <= pred.col <= 5):
        raise ValueError(f"predicate cell {pred.row},{pred.col} out of the 5x5 range")
    return pred


PredicatePair = tuple[Predicate, Predicate]

# Fixed response table: each element is reachable from exactly four answer
# sequences, arranged so each (first-predicate answers, second-predicate
# answers) combination appears once -- a 4x4 Latin square.
_SEQ = {"NN": (False, False), "NY": (False, True), "YN": (True, False), "YY": (True, True)}
_SQUARE = {
    "NN": "PQRS",
    "NY": "QSPR",
    "YN": "SRQP",
    "YY": "RPSQ",
}
DEFAULT_RESPONSE_TABLE: dict[tuple[bool, bool, bool, bool], str] = {
    _SEQ[r] + _SEQ[c]: _SQUARE[r][i]
    for r in _SQUARE for i, c in enumerate(("NN", "NY", "YN", "YY"))
}


@dataclass(frozen=True)
class PasParams:
    blocks_per_side: int = 5
    letters_per_block: int = 13
    rounds: int = 5
    k: int = 4

    @property
    def block_ids(self) -> list[tuple[int, int]]:
        n = self.blocks_per_side
        return [(r, c) for r in range(1, n + 1) for c in range(1, n + 1)]


@dataclass(frozen=True, eq=False)
class PasChallengeTables:
    """One round's pair of tables: block id -> the 13 letters it holds."""

    table1: dict[tuple[int, int], frozenset[str]]
    table2: dict[tuple[int, int], frozenset[str]]


@dataclass(frozen=True, eq=False)
class PasChallenge:
    rounds: tuple[PasChallengeTables, ...]
    designated_round: int
    assignments: dict[int, str]  # 1-based sweetword index -> designated response element


def answer_sequence(pred1: Predicate, pred2: Predicate,
                    tables: PasChallengeTables) -> tuple[bool, bool, bool, bool]:
    """(pred1 in table1, pred1 in table2, pred2 in table1, pred2 in table2)."""
    return (
        pred1.letter in tables.table1[(pred1.row, pred1.col)],
        pred1.letter in tables.table2[(pred1.row, pred1.col)],
        pred2.letter in tables.table1[(pred2.row, pred2.col)],
        pred2.letter in tables.table2[(pred2.row, pred2.col)],
    )


def response_for(seq: tuple[bool, bool, bool, bool],
                 response_table: dict | None = None) -> str:
    table = response_table or DEFAULT_RESPONSE_TABLE
    return table[tuple(seq)]


def sequences_for(element: str, response_table: dict | None = None) -> list[tuple[bool, ...]]:
    table = response_table or DEFAULT_RESPONSE_TABLE
    return sorted(seq for seq, el in table.items() if el == element)


def _fill_tables(pairs, seq_of_pair, params: PasParams, rng) -> PasChallengeTables:
    """Build two tables satisfying every (predicate, table) yes/no constraint.

    Place all YES letters first, ban all NO letters, then pad each block
    to 13 with uniform picks from the unconstrained letters. Distinct
    predicates never constrain the same letter twice, so the constraints
    cannot conflict.
    """
    must: list[dict[tuple[int, int], set[str]]] = [{}, {}]
    banned: list[dict[tuple[int, int], set[str]]] = [{}, {}]
    for pair, seq in zip(pairs, seq_of_pair):
        for which, (pred, present) in enumerate(
                ((pair[0], seq[0]), (pair[0], seq[1]), (pair[1], seq[2]), (pair[1], seq[3]))):
            table_idx = which % 2
            target = must[table_idx] if present else banned[table_idx]
            target.setdefault((pred.row, pred.col), set()).add(pred.letter)

    tables = []
    for idx in range(2):
        blocks = {}
        for block in params.block_ids:
            inside = set(must[idx].get(block, set()))
            out = banned[idx].get(block, set())
            if inside & out:
                raise AssertionError(f"conflicting constraints in block {block}: {inside & out}")
            pool = [ch for ch in LETTERS if ch not in inside and ch not in out]
            inside |= set(rng.sample(pool, params.letters_per_block - len(inside)))
            blocks[block] = frozenset(inside)
        tables.append(blocks)
    return PasChallengeTables(tables[0], tables[1])


def generate_random_tables(params: PasParams, rng) -> PasChallengeTables:
    """Unconstrained tables for the non-designated rounds."""
    def one():
        return {block: frozenset(rng.sample(LETTERS, params.letters_per_block))
                for block in params.block_ids}
    return PasChallengeTables(one(), one())


def generate_designated_tables(pairs, rng, params: PasParams | None = None,
                               assignments: dict[int, tuple[str, tuple[bool, ...]]] | None = None,
                               ) -> tuple[PasChallengeTables, dict[int, str]]:
    """Build the distinguishing round: each sweetword's pair is forced onto
    a distinct response element via one of that element's answer sequences.

    `assignments` may pin {index: (element, sequence)} (used by fixtures);
    by default one sequence per element is drawn at random and the k
    elements are dealt to the sweetwords in random order.
    """
    params = params or PasParams()
    k = len(pairs)
    if k < 2:
        raise ValueError("need at least 2 sweetwords")
    if k > len(RESPONSE_ELEMENTS):
        raise ValueError(f"k cannot exceed {len(RESPONSE_ELEMENTS)} response elements")
    flat = [p for pair in pairs for p in pair]
    if len(set(flat)) != len(flat):
        raise ValueError("predicates must be pairwise distinct across sweetwords")

    if assignments is None:
        elements = rng.sample(RESPONSE_ELEMENTS, k)
        assignments = {
            j + 1: (elements[j], rng.choice(sequences_for(elements[j])))
            for j in range(k)
        }
    seq_of_pair = [assignments[j + 1][1] for j in range(k)]
    tables = _fill_tables(pairs, seq_of_pair, params, rng)
    # Constraint replay: every pair must realize exactly its sequence.
    for pair, seq in zip(pairs, seq_of_pair):
        assert answer_sequence(pair[0], pair[1], tables) == tuple(seq)
    return tables, {j: assignments[j][0] for j in assignments}


class PasEngine:
    scheme = "pas"

    def __init__(self, params: PasParams | None = None) -> None:
        self.params = params or PasParams()

    @property
    def rounds(self) -> int:
        return self.params.rounds

    @property
    def max_sweetwords(self) -> int:
        return len(RESPONSE_ELEMENTS)

    # -- sweetwords -------------------------------------------------------

    def random_password(self, rng) -> PredicatePair:
        def pred():
            return Predicate(rng.randint(1, 5), rng.randint(1, 5), rng.choice(LETTERS))
        first = pred()
        second = pred()
        while second == first:
            second = pred()
        return (first, second)

    def perturb(self, password: PredicatePair, rng, existing=()) -> PredicatePair | None:
        """A predicate pair avoiding every predicate already in use."""
        used = {p for pair in existing for p in pair}
        pool = [Predicate(r, c, letter)
                for r in range(1, 6) for c in range(1, 6) for letter in LETTERS
                if Predicate(r, c, letter) not in used]
        if len(pool) < 2:
            return None
        first, second = rng.sample(pool, 2)
        return (first, second)

    def entry_violations(self, entries) -> list[str]:
        problems = []
        for i, pair in enumerate(entries):
            try:
                (r1, c1, l1), (r2, c2, l2) = pair
                ok = all(1 <= v <= 5 for v in (r1, c1, r2, c2)) and l1 in LETTERS and l2 in LETTERS
            except (TypeError, ValueError):
                ok = False
            if not ok:
                problems.append(f"entry {i + 1} is not a valid predicate pair")
            elif pair[0] == pair[1]:
                problems.append(f"entry {i + 1} repeats a predicate")
        if problems:
            return problems
        flat = [p for pair in entries for p in pair]
        if len(set(flat)) != len(flat):
            dupes = sorted({p.label() for p in flat if flat.count(p) > 1})
            problems.append(f"predicates not pairwise distinct: {dupes}")
        return problems

    def encode_entry(self, entry: PredicatePair) -> str:
        return f"{entry[0].label()}+{entry[1].label()}"

    def decode_entry(self, text: str) -> PredicatePair:
        a, b = text.split("+")
        return (parse_predicate(a), parse_predicate(b))

    # -- challenge ----------------------------------------------------------

    def new_challenge(self, sweetwords: SweetwordList, rng) -> PasChallenge:
        designated = rng.randint(1, self.rounds)
        rounds = []
        assignments: dict[int, str] = {}
        for r in range(1, self.rounds + 1):
            if r == designated:
                tables, assignments = generate_designated_tables(
                    sweetwords.entries, rng, self.params)
            else:
                tables = generate_random_tables(self.params, rng)
            rounds.append(tables)
        return PasChallenge(tuple(rounds), designated, assignments)

    # -- responses ------------------------------------------------------------

    def prs(self, challenge: PasChallenge, round_no: int, entry: PredicatePair) -> set[str]:
        tables = challenge.rounds[round_no - 1]
        return {response_for(answer_sequence(entry[0], entry[1], tables))}

    def legit_response(self, challenge: PasChallenge, round_no: int,
                       entry: PredicatePair, rng) -> str:
        (only,) = self.prs(challenge, round_no, entry)
        return only

    def response_space(self, challenge: PasChallenge, round_no: int) -> str:
        return RESPONSE_ELEMENTS

    def verify_session(self, challenge: PasChallenge, responses, sweetwords: SweetwordList):
        transcript = SessionTranscript(self.scheme, challenge, tuple(responses))
        return identify_sweetword(transcript, sweetwords, self)

    def challenge_payload(self, challenge: PasChallenge, round_no: int, session_id: str) -> dict:
        tables = challenge.rounds[round_no - 1]

        def blocks(table):
            return [{"block": [r, c], "letters": "".join(sorted(table[(r, c)]))}
                    for (r, c) in self.params.block_ids]

        return {
            "table1": blocks(tables.table1),
            "table2": blocks(tables.table2),
            "response_options": list(RESPONSE_ELEMENTS),
            "session_id": session_id,
            "round": round_no,
        }


def pas_bruteforce_complexity(cells: int, characters: int, indices_per_predicate: int,
                              predicates: int) -> int:
    """Observation brute-force candidate count: C(M*H + c - 1, c)^p."""
    if min(cells, characters, predicates) <= 0 or indices_per_predicate < 0:
        raise ValueError("parameters must be positive")
    return comb(cells * characters + indices_per_predicate - 1, indices_per_predicate) ** predicates
