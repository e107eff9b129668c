"""Honeyword-enabled S3PAS: virtual triangles on a randomized character grid.

Each session shows all 80 characters permuted on a 10x8 matrix (static for
the session). In round r the user takes 3 consecutive password characters
(cyclically), finds them on the grid, and clicks any character inside the
virtual triangle they span. The generator keeps re-permuting the grid
until, in one secretly designated round, the k sweetwords' triangles are
pairwise cell-disjoint, which is what lets the verifier map a consistent
session back to a single sweetword index.
"""
from __future__ import annotations

import string
import time
from dataclasses import dataclass, field, replace

from ..errors import GenerationTimeout
from ..geometry import GridPoint, Triangle, _triangle_cells, _triangle_interior
from ..core import SweetwordList, SessionTranscript, identify_sweetword

# 26 + 26 + 10 letters/digits plus 18 printable symbols = 80 characters.
S3PAS_ALPHABET = (string.ascii_uppercase + string.ascii_lowercase + string.digits
                  + "!#$%&()*+,-./:;<=>")

CHARACTER_CLASSES = (string.ascii_uppercase, string.ascii_lowercase, string.digits,
                     "!#$%&()*+,-./:;<=>")


@dataclass(frozen=True)
class S3pasParams:
    cols: int = 10
    rows: int = 8
    length: int = 4           # password length; also the number of rounds
    k: int = 6
    alphabet: str = S3PAS_ALPHABET
    max_iters: int = 100_000

    def __post_init__(self) -> None:
        if len(self.alphabet) != self.cols * self.rows:
            raise ValueError("alphabet must fill the grid exactly")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet characters must be unique")

    @property
    def grid_size(self) -> int:
        return self.cols * self.rows

    @property
    def rounds(self) -> int:
        return self.length


@dataclass(frozen=True)
class S3pasChallenge:
    """One session's grid (a bijection of characters to cells) plus the
    server-secret designated round."""

    cells: tuple[str, ...]          # row-major, rows*cols characters
    designated_round: int
    cols: int
    rows: int
    positions: dict[str, GridPoint] = field(compare=False, repr=False, default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", {
            ch: GridPoint(i % self.cols, i // self.cols) for i, ch in enumerate(self.cells)
        })

    def char_at(self, p: GridPoint) -> str:
        return self.cells[p.row * self.cols + p.col]

    def grid_rows(self) -> list[str]:
        return ["".join(self.cells[r * self.cols:(r + 1) * self.cols]) for r in range(self.rows)]


def round_ppi(sweetword: str, round_no: int) -> str:
    """The 3 consecutive password characters (cyclic) used in a round."""
    n = len(sweetword)
    i = round_no - 1
    return sweetword[i % n] + sweetword[(i + 1) % n] + sweetword[(i + 2) % n]


class S3pasEngine:
    scheme = "s3pas"

    def __init__(self, params: S3pasParams | None = None) -> None:
        self.params = params or S3pasParams()

    @property
    def rounds(self) -> int:
        return self.params.rounds

    @property
    def max_sweetwords(self) -> int:
        # One response element per cell, so k is capped by the grid size.
        return self.params.grid_size

    # -- passwords and sweetwords ------------------------------------------

    def random_password(self, rng) -> str:
        return "".join(rng.choice(self.params.alphabet) for _ in range(self.params.length))

    def perturb(self, password: str, rng, existing=()) -> str | None:
        """Same-length, same-character-class-per-position decoy candidate.

        Characters already appearing in `existing` sweetwords are avoided
        (decoys must be fully character-disjoint), drawing uniformly from
        what is left of each class. Returns None when a class is
        exhausted, i.e. this k is infeasible for the password's pattern.
        """
        used = {ch for w in existing for ch in w}
        out: list[str] = []
        for ch in password:
            cls = next((c for c in CHARACTER_CLASSES if ch in c), self.params.alphabet)
            pool = [c for c in cls if c in self.params.alphabet
                    and c not in used and c not in out]
            if not pool:
                return None
            out.append(rng.choice(pool))
        return "".join(out)

    def entry_violations(self, entries) -> list[str]:
        """Per-round partial-information distinctness across the set."""
        problems = []
        for i, w in enumerate(entries):
            if len(w) != self.params.length:
                problems.append(f"entry {i + 1} has length {len(w)}, expected {self.params.length}")
            elif any(ch not in self.params.alphabet for ch in w):
                problems.append(f"entry {i + 1} uses characters outside the alphabet")
        if problems:
            return problems
        for r in range(1, self.rounds + 1):
            parts = [round_ppi(w, r) for w in entries]
            if len(set(parts)) != len(parts):
                dupes = sorted({p for p in parts if parts.count(p) > 1})
                problems.append(f"round {r} partial password info not distinct: {dupes}")
        return problems

    def generation_violations(self, entries) -> list[str]:
        """Extra constraint imposed on generated honeywords: sweetwords must
        not share characters at all.

        Two triangles with a common vertex can never be cell-disjoint, so
        a shared character would make the designated round's resampling
        loop unsatisfiable whenever both words' windows cover it.
        """
        problems = []
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                shared = set(entries[i]) & set(entries[j])
                if shared:
                    problems.append(
                        f"entries {i + 1} and {j + 1} share characters {sorted(shared)}")
        return problems

    def encode_entry(self, entry: str) -> str:
        return entry

    def decode_entry(self, text: str) -> str:
        return text

    # -- challenge generation ----------------------------------------------

    def _round_triangle(self, positions: dict[str, GridPoint], word: str, r: int) -> Triangle:
        a, b, c = (positions[ch] for ch in round_ppi(word, r))
        return Triangle((a, b, c))

    def _response_key_cells(self, key: tuple) -> frozenset[tuple[int, int]]:
        """The cells a response may land on, keyed by sorted vertex coords:
        strictly interior cells, or -- when a thin or degenerate triangle
        traps none -- the full boundary-inclusive cell set, so a user
        always has a character to pick."""
        p = self.params
        return (_triangle_interior(key, p.cols, p.rows)
                or _triangle_cells(key, p.cols, p.rows))

    def _response_cells(self, positions: dict[str, GridPoint], word: str,
                        r: int) -> frozenset[tuple[int, int]]:
        a, b, c = (positions[ch] for ch in round_ppi(word, r))
        key = tuple(sorted(((a.col, a.row), (b.col, b.row), (c.col, c.row))))
        return self._response_key_cells(key)

    def generate_challenge(self, sweetwords: SweetwordList, rng,
                           max_iters: int | None = None,
                           designated_round: int | None = None) -> tuple[S3pasChallenge, int]:
        """Resample uniform grid permutations until the designated round's
        k triangles have pairwise-disjoint response cells.

        Returns the challenge and the number of permutations tried, which
        is the quantity the generation benchmark reports.
        """
        p = self.params
        problems = self.entry_violations(sweetwords.entries)
        if problems:
            raise ValueError(f"sweetwords unusable on this grid: {problems}")
        budget = max_iters if max_iters is not None else p.max_iters
        i = designated_round if designated_round is not None else rng.randint(1, self.rounds)
        # Triangles sharing a vertex character can never be cell-disjoint,
        # so an infeasible round is detected up front instead of burning
        # the whole permutation budget.
        parts = [round_ppi(w, i) for w in sweetwords.entries]
        part_sets = [set(part) for part in parts]
        for a in range(len(parts)):
            for b in range(a + 1, len(parts)):
                if part_sets[a] & part_sets[b]:
                    raise GenerationTimeout(
                        f"round {i} infeasible: sweetwords {a + 1} and {b + 1} share "
                        f"characters {sorted(part_sets[a] & part_sets[b])}")
        cols = p.cols
        cell_xy = [(idx % cols, idx // cols) for idx in range(p.grid_size)]
        # Acceptance only depends on where the designated round's PPI
        # characters land, so each trial places just those uniformly; the
        # remaining characters are laid out uniformly once a trial is
        # accepted. This is distribution-equivalent to permuting the whole
        # grid every trial, including the iteration count.
        needed = sorted({ch for part in parts for ch in part})
        for iteration in range(1, budget + 1):
            where = dict(zip(needed, rng.sample(cell_xy, len(needed))))
            seen = 0
            union: frozenset = frozenset()
            ok = True
            for part in parts:
                key = tuple(sorted((where[part[0]], where[part[1]], where[part[2]])))
                cells = self._response_key_cells(key)
                seen += len(cells)
                union = union | cells
                if len(union) != seen:
                    ok = False
                    break
            if ok:
                rest = [ch for ch in p.alphabet if ch not in where]
                rng.shuffle(rest)
                grid: list[str] = [""] * p.grid_size
                for ch, (x, y) in where.items():
                    grid[y * cols + x] = ch
                it = iter(rest)
                for idx, ch in enumerate(grid):
                    if not ch:
                        grid[idx] = next(it)
                return S3pasChallenge(tuple(grid), i, p.cols, p.rows), iteration
        raise GenerationTimeout(
            f"no grid with {sweetwords.k} disjoint triangles in round {i} after {budget} tries")

    def new_challenge(self, sweetwords: SweetwordList, rng) -> S3pasChallenge:
        """Session setup: on a timeout, redraw the designated round and
        retry up to 3 times before giving up."""
        last: GenerationTimeout | None = None
        for _ in range(4):
            try:
                challenge, _ = self.generate_challenge(sweetwords, rng)
                return challenge
            except GenerationTimeout as exc:
                last = exc
        raise last

    # -- responses and verification ----------------------------------------

    def prs(self, challenge: S3pasChallenge, round_no: int, entry: str) -> set[str]:
        """Characters under the area of the entry's virtual triangle this
        round (boundary characters only when the interior holds none)."""
        cols = challenge.cols
        return {challenge.cells[y * cols + x]
                for x, y in self._response_cells(challenge.positions, entry, round_no)}

    def legit_response(self, challenge: S3pasChallenge, round_no: int, entry: str, rng) -> str:
        options = sorted(self.prs(challenge, round_no, entry))
        return rng.choice(options)

    def response_space(self, challenge: S3pasChallenge, round_no: int) -> str:
        return self.params.alphabet

    def verify_session(self, challenge: S3pasChallenge, responses, sweetwords: SweetwordList):
        transcript = SessionTranscript(self.scheme, challenge, tuple(responses))
        return identify_sweetword(transcript, sweetwords, self)

    def challenge_payload(self, challenge: S3pasChallenge, round_no: int, session_id: str) -> dict:
        # The designated round index never leaves the server.
        return {"grid": challenge.grid_rows(), "round": round_no, "session_id": session_id}

    # -- analytics -----------------------------------------------------------

    def measure_mean_triangle_cells(self, runs: int, rng) -> float:
        """Empirical mean response-set size of a random password's round
        triangles on uniformly random grids."""
        p = self.params
        total = n = 0
        for _ in range(runs):
            chars = list(p.alphabet)
            rng.shuffle(chars)
            positions = {ch: GridPoint(i % p.cols, i // p.cols) for i, ch in enumerate(chars)}
            word = self.random_password(rng)
            for r in range(1, self.rounds + 1):
                total += len(self._response_cells(positions, word, r))
                n += 1
        return total / n


def expected_triangle_area(n: int) -> float:
    """Mean area of a triangle with vertices drawn uniformly from an
    n x n lattice of coordinates i/n, i = 1..n.

    Evaluated exactly: the six-fold sum reduces to an integer total of
    |(f-g)(i-k) - (f-h)(i-j)| divided by 2*n^8.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    rng_n = range(n)  # offsets cancel, so 0..n-1 gives the same differences
    for f in rng_n:
        for g in rng_n:
            fg = f - g
            for h in rng_n:
                fh = f - h
                for i in rng_n:
                    for j in rng_n:
                        fhij = fh * (i - j)
                        for k in rng_n:
                            total += abs(fg * (i - k) - fhij)
    return total / (2 * n ** 8)


def typo_false_alarm_prob(mean_triangle_cells: float, alphabet_size: int, rounds: int) -> float:
    """Probability that uniform mistyped responses track one particular
    honeyword through every round: (TR/T)^rounds."""
    if alphabet_size <= 0 or rounds <= 0 or mean_triangle_cells < 0:
        raise ValueError("parameters must be positive")
    return (mean_triangle_cells / alphabet_size) ** rounds


def brute_force_observation_complexity(alphabet_size: int, ppi_length: int = 3) -> int:
    """Candidate-combination count an observing attacker must prune."""
    from math import comb
    return comb(alphabet_size, ppi_length)


BENCH_CSV_HEADERS = ("value of k", "no. of max iteration", "no. of min iteration",
                     "avg iteration", "max exec time (ms)", "min exec time (ms)",
                     "avg exec time (ms)")


def challenge_gen_stats(k_values, runs: int, rng,
                        params: S3pasParams | None = None) -> list[dict]:
    """Benchmark the disjoint-triangle generation loop.

    For each k, generates `runs` fresh sweetword lists and challenges and
    reports min/max/mean of the loop iteration count and wall time. Only
    the iteration columns are hardware-independent.
    """
    from ..honeygen import random_account
    if runs < 1:
        raise ValueError("runs must be >= 1")
    rows = []
    for k in k_values:
        engine = S3pasEngine(replace(params or S3pasParams(), k=k))
        iters, times_ms = [], []
        for _ in range(runs):
            swl, _t = random_account(engine, k, rng)
            start = time.perf_counter()
            _, used = engine.generate_challenge(swl, rng)
            times_ms.append((time.perf_counter() - start) * 1000.0)
            iters.append(used)
        rows.append({
            "value of k": k,
            "no. of max iteration": max(iters),
            "no. of min iteration": min(iters),
            "avg iteration": sum(iters) / len(iters),
            "max exec time (ms)": max(times_ms),
            "min exec time (ms)": min(times_ms),
            "avg exec time (ms)": sum(times_ms) / len(times_ms),
        })
    return rows
