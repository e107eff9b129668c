"""Honeyword-enabled Count-On-Plane: digit walks on a fixed 66-cell grid.

The 66 characters sit in a fixed row-major order on an 11x6 plane; each
session assigns every character a digit 0..9. The user reads the digit on
her password's first character, walks that many rows down, then walks
right by the digit-sum of the remaining characters and answers with the
landing cell's digit. Because a row is 11 cells, the landing cell is
first_char + 11*v + h in the cyclic order. The generator picks one
response cell per sweetword, gives it a unique digit, and chooses the
sweetword's own digits so its walk lands exactly there.
"""
from __future__ import annotations

import string
from dataclasses import dataclass

from ..core import SweetwordList, SessionTranscript, identify_sweetword

COP_ALPHABET = string.ascii_uppercase + string.ascii_lowercase + string.digits + "*#@&"
_INDEX = {ch: i for i, ch in enumerate(COP_ALPHABET)}

CHARACTER_CLASSES = (string.ascii_uppercase, string.ascii_lowercase, string.digits, "*#@&")


@dataclass(frozen=True)
class CopParams:
    cols: int = 11
    rows: int = 6
    length: int = 4
    k: int = 5

    def __post_init__(self) -> None:
        if self.cols * self.rows != len(COP_ALPHABET):
            raise ValueError("grid must hold the 66-character set exactly")

    @property
    def grid_size(self) -> int:
        return self.cols * self.rows


def circular_distance(from_char: str, to_char: str) -> int:
    """Forward cyclic path length between two characters in the fixed order."""
    try:
        return (_INDEX[to_char] - _INDEX[from_char]) % len(COP_ALPHABET)
    except KeyError as exc:
        raise ValueError(f"unknown character {exc.args[0]!r}") from None


@dataclass(frozen=True, eq=False)
class CopChallenge:
    """A session's digit assignment plus the sweetword -> response-cell plan."""

    digits: dict[str, int]                  # every character's displayed digit
    response_cells: dict[str, str]          # sweetword -> its response cell
    response_digits: dict[str, int]         # sweetword -> that cell's (unique) digit

    def digit_of(self, ch: str) -> int:
        return self.digits[ch]


def _partition_capped(total: int, parts: int, cap: int, rng) -> list[int]:
    """Uniform random composition of `total` into `parts` parts, each <= cap.

    Stars-and-bars: a composition corresponds to a (parts-1)-subset of
    slot positions, so sampling the subset uniformly and rejecting
    over-cap splits keeps the distribution uniform over legal splits.
    """
    if total > parts * cap:
        raise AssertionError(f"cannot split {total} into {parts} parts <= {cap}")
    while True:
        bars = sorted(rng.sample(range(total + parts - 1), parts - 1))
        edges = [-1] + bars + [total + parts - 1]
        split = [b - a - 1 for a, b in zip(edges, edges[1:])]
        if all(v <= cap for v in split):
            return split


class CopEngine:
    scheme = "cop"
    rounds = 1  # a single response closes the session

    def __init__(self, params: CopParams | None = None) -> None:
        self.params = params or CopParams()

    @property
    def max_sweetwords(self) -> int:
        return 10  # responses are single digits

    # -- sweetwords -----------------------------------------------------------

    def random_password(self, rng) -> str:
        return "".join(rng.sample(COP_ALPHABET, self.params.length))

    def perturb(self, password: str, rng, existing=()) -> str | None:
        """Class-preserving decoy avoiding every character already used."""
        used = {ch for w in existing for ch in w}
        out: list[str] = []
        for ch in password:
            cls = next(c for c in CHARACTER_CLASSES if ch in c)
            pool = [c for c in cls if c not in used and c not in out]
            if not pool:
                return None
            out.append(rng.choice(pool))
        return "".join(out)

    def entry_violations(self, entries) -> list[str]:
        p = self.params
        problems = []
        for i, w in enumerate(entries):
            if len(w) != p.length:
                problems.append(f"entry {i + 1} has length {len(w)}, expected {p.length}")
            elif any(ch not in _INDEX for ch in w):
                problems.append(f"entry {i + 1} uses characters outside the 66-character set")
            elif len(set(w)) != len(w):
                problems.append(f"entry {i + 1} repeats a character")
        if problems:
            return problems
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                shared = set(entries[i]) & set(entries[j])
                if shared:
                    problems.append(
                        f"entries {i + 1} and {j + 1} share characters {sorted(shared)}")
        if len(entries) * p.length > p.grid_size - len(entries):
            problems.append("not enough cells left for response cells")
        return problems

    def encode_entry(self, entry: str) -> str:
        return entry

    def decode_entry(self, text: str) -> str:
        return text

    # -- challenge --------------------------------------------------------------

    def generate_challenge(self, sweetwords: SweetwordList, rng,
                           response_cells: list[str] | None = None,
                           response_digits: list[int] | None = None) -> CopChallenge:
        """Assign digits so each sweetword's walk ends on its own cell.

        For each sweetword: path length to its cell = 11*quotient +
        remainder; the quotient becomes the first character's digit and
        the remainder is split over the other characters (parts <= 9, and
        the remainder is at most 10, so a split always exists). Optional
        response_cells/response_digits pin the random picks for fixtures.
        """
        p = self.params
        entries = sweetwords.entries
        if sweetwords.k > self.max_sweetwords:
            raise ValueError(f"k cannot exceed {self.max_sweetwords} response digits")
        problems = self.entry_violations(entries)
        if problems:
            raise ValueError(f"sweetwords unusable: {problems}")

        used = {ch for w in entries for ch in w}
        candidates = [ch for ch in COP_ALPHABET if ch not in used]
        if response_cells is None:
            response_cells = rng.sample(candidates, sweetwords.k)
        if response_digits is None:
            response_digits = rng.sample(range(10), sweetwords.k)

        digits = {ch: rng.randint(0, 9) for ch in COP_ALPHABET}
        cell_of: dict[str, str] = {}
        digit_of: dict[str, int] = {}
        for word, cell, cell_digit in zip(entries, response_cells, response_digits):
            digits[cell] = cell_digit
            path = circular_distance(word[0], cell)
            quotient, remainder = divmod(path, p.cols)
            digits[word[0]] = quotient
            for ch, part in zip(word[1:], _partition_capped(remainder, p.length - 1, 9, rng)):
                digits[ch] = part
            cell_of[word] = cell
            digit_of[word] = cell_digit

        challenge = CopChallenge(digits, cell_of, digit_of)
        for word in entries:  # walk identity must close for every sweetword
            assert self.legit_response(challenge, 1, word, rng) == digit_of[word]
        return challenge

    def new_challenge(self, sweetwords: SweetwordList, rng) -> CopChallenge:
        return self.generate_challenge(sweetwords, rng)

    # -- responses ----------------------------------------------------------------

    def legit_response(self, challenge: CopChallenge, round_no: int, entry: str, rng=None) -> int:
        """Walk the grid exactly as the user does and return the landing digit."""
        p = self.params
        start = _INDEX[entry[0]]
        vertical = challenge.digits[entry[0]]
        pos = (start + p.cols * vertical) % p.grid_size      # v rows straight down
        horizontal = sum(challenge.digits[ch] for ch in entry[1:])
        pos = (pos + horizontal) % p.grid_size               # h cells right, wrapping
        return challenge.digits[COP_ALPHABET[pos]]

    def prs(self, challenge: CopChallenge, round_no: int, entry: str) -> set[int]:
        """Single-digit response set: whatever the entry's walk lands on.

        For the planned sweetwords this equals the unique digit assigned
        to their response cell (the walk identity is asserted at
        generation time); for arbitrary candidate words it is what an
        observer can compute from the public grid.
        """
        return {self.legit_response(challenge, round_no, entry)}

    def response_space(self, challenge: CopChallenge, round_no: int) -> range:
        return range(10)

    def verify(self, response_digit: int, challenge: CopChallenge,
               sweetwords: SweetwordList) -> int | None:
        """Map a submitted digit to the sweetword owning that response digit."""
        for j, word in enumerate(sweetwords.entries, start=1):
            if challenge.response_digits[word] == response_digit:
                return j
        return None

    def verify_session(self, challenge: CopChallenge, responses, sweetwords: SweetwordList):
        transcript = SessionTranscript(self.scheme, challenge, tuple(responses))
        return identify_sweetword(transcript, sweetwords, self)

    def challenge_payload(self, challenge: CopChallenge, round_no: int, session_id: str) -> dict:
        p = self.params
        return {
            "cells": [{"char": ch, "digit": challenge.digits[ch],
                       "x": i % p.cols, "y": i // p.cols}
                      for i, ch in enumerate(COP_ALPHABET)],
            "session_id": session_id,
        }


def confirm_response(first: int, second: int) -> int | None:
    """Double-entry typo mitigation: the digit counts only when both
    entries agree, otherwise the caller should re-prompt instead of
    forwarding a possibly mistyped digit to verification."""
    return first if first == second else None


def cop_bruteforce_complexity(cells: int, secret_length: int) -> int:
    """Observation brute-force candidate count: n * C(n + l - 2, l - 1)."""
    from math import comb
    if cells < 1 or secret_length < 1:
        raise ValueError("parameters must be >= 1")
    return cells * comb(cells + secret_length - 2, secret_length - 1)
