"""Sweetword storage model, sweetword identification, and the honeyChecker.

The verifier stores k sweetwords per account (the real password hidden
among k-1 decoys); only the honeyChecker knows which index is real. A
login is identified by intersecting, across rounds, the sets of sweetword
indices whose response set contains that round's submitted response. The
challenge generator guarantees one designated round with pairwise-disjoint
response sets, which makes the intersection at most a singleton.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .errors import NoRecordError, PrincipleViolationError, SweetwordValidationError
from .geometry import GridPoint, cells_on_segment

SCHEME_TAGS = ("s3pas", "chc", "pas", "cop")

# Sweetword entries are scheme-specific: str for the character schemes,
# frozenset[int] icon sets for CHC, predicate pairs for PAS.
Entry = Any


@dataclass(frozen=True)
class SweetwordList:
    """The k ordered sweetwords of one account (real password included)."""

    scheme: str
    entries: tuple[Entry, ...]

    def __post_init__(self) -> None:
        if self.scheme not in SCHEME_TAGS:
            raise SweetwordValidationError(f"unknown scheme {self.scheme!r}")
        if self.k < 2:
            raise SweetwordValidationError("need at least 2 sweetwords (one honeyword)")
        if len(set(self.entries)) != self.k:
            raise SweetwordValidationError("sweetwords must be pairwise distinct")

    @property
    def k(self) -> int:
        return len(self.entries)

    def index_of(self, entry: Entry) -> int:
        """1-based index of an entry, as communicated to the honeyChecker."""
        return self.entries.index(entry) + 1


@dataclass(frozen=True)
class HoneyIndexRecord:
    """What the honeyChecker stores: the username and the real index t."""

    username: str
    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("t is 1-based")


@dataclass(frozen=True)
class SessionTranscript:
    """Everything observable in one login attempt: challenge plus responses."""

    scheme: str
    challenge: Any
    responses: tuple[Any, ...]

    @property
    def rounds(self) -> int:
        return len(self.responses)


def candidate_index_sets(engine, challenge, responses: Sequence[Any],
                         sweetwords: SweetwordList) -> list[set[int]]:
    """Per round, the 1-based indices whose response set holds the response."""
    sets: list[set[int]] = []
    for round_no, response in enumerate(responses, start=1):
        sets.append({
            j for j, entry in enumerate(sweetwords.entries, start=1)
            if response in engine.prs(challenge, round_no, entry)
        })
    return sets


def identify_sweetword(transcript: SessionTranscript, sweetwords: SweetwordList,
                       engine) -> int | None:
    """Identify which sweetword a completed transcript was played against.

    Returns the unique index recorded in every round, or None when no
    sweetword is consistent with all responses (a reject, reported the
    same as a wrong password). More than one survivor means the challenge
    violated the disjoint-round guarantee and raises.
    """
    if transcript.rounds != engine.rounds:
        raise ValueError(f"transcript has {transcript.rounds} responses, expected {engine.rounds}")
    survivors: set[int] | None = None
    for candidates in candidate_index_sets(engine, transcript.challenge,
                                           transcript.responses, sweetwords):
        survivors = candidates if survivors is None else survivors & candidates
        if not survivors:
            return None
    assert survivors is not None
    if len(survivors) > 1:
        raise PrincipleViolationError(
            f"challenge violated Principle 1: indices {sorted(survivors)} all match")
    return next(iter(survivors))


class HoneyIndexStore:
    """In-memory (username -> t) store with per-username serialization."""

    def __init__(self) -> None:
        self._records: dict[str, int] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def _lock_for(self, username: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(username, threading.Lock())

    def set(self, username: str, t: int) -> None:
        with self._lock_for(username):
            self._records[username] = t

    def check(self, username: str, submitted_index: int) -> str:
        with self._lock_for(username):
            if username not in self._records:
                raise NoRecordError(username)
            return "OK" if self._records[username] == submitted_index else "ALARM"

    def known(self, username: str) -> bool:
        with self._lock_for(username):
            return username in self._records

    def items(self) -> list[tuple[str, int]]:
        with self._guard:
            return list(self._records.items())


def honeychecker_check(store: HoneyIndexStore, username: str, submitted_index: int) -> str:
    """OK iff the submitted index matches the stored t; ALARM otherwise."""
    return store.check(username, submitted_index)


class AccountRegistry:
    """Tracks which accounts are blocked; shared by the auth service."""

    def __init__(self, usernames: Iterable[str] = ()) -> None:
        self._blocked: set[str] = set()
        self._known: set[str] = set(usernames)
        self._lock = threading.Lock()

    def add(self, username: str) -> None:
        with self._lock:
            self._known.add(username)

    def known(self) -> set[str]:
        with self._lock:
            return set(self._known)

    def block(self, username: str) -> None:
        with self._lock:
            self._blocked.add(username)

    def block_all(self) -> None:
        with self._lock:
            self._blocked |= self._known

    def is_blocked(self, username: str) -> bool:
        with self._lock:
            return username in self._blocked

    def blocked(self) -> set[str]:
        with self._lock:
            return set(self._blocked)


def apply_block_policy(policy: str, username: str, registry: AccountRegistry) -> set[str]:
    """Apply the configured reaction to an alarm; returns accounts blocked.

    The light policy blocks only the offending account; the strict policy
    freezes every account in the registry.
    """
    if policy == "light":
        registry.block(username)
        return {username}
    if policy == "strict":
        registry.block_all()
        return registry.blocked()
    raise ValueError(f"unknown block policy {policy!r}")


# ---------------------------------------------------------------------------
# Reference scheme: 36 characters on a 6x6 matrix, password length 4,
# 4 rounds, 2-character cyclic password parts, responses on the open
# straight line between the two characters. It is deliberately simple and
# serves as a cross-check oracle for the full engines.
# ---------------------------------------------------------------------------

HYPO_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"


def hypo_prs(grid: Sequence[str], ppi: str) -> set[str]:
    """Response set of a 2-character password part on a 6x6 grid.

    The set holds every character whose cell center lies strictly between
    the two part characters on the straight line joining them.
    """
    if len(ppi) != 2 or ppi[0] == ppi[1]:
        raise ValueError("password part must be 2 distinct characters")
    rows = [list(r) for r in grid]
    if len(rows) != 6 or any(len(r) != 6 for r in rows):
        raise ValueError("grid must be 6x6")
    where = {ch: GridPoint(c, r) for r, row in enumerate(rows) for c, ch in enumerate(row)}
    for ch in ppi:
        if ch not in where:
            raise ValueError(f"character {ch!r} not on grid")
    between = cells_on_segment(where[ppi[0]], where[ppi[1]])
    return {rows[p.row][p.col] for p in between}


def simulate_session(engine, sweetwords: SweetwordList, rng, play_as: int,
                     respond: Callable[[Any, int, Entry], Any] | None = None,
                     challenge: Any | None = None) -> tuple[SessionTranscript, int | None]:
    """Run one full login against a fresh (or given) challenge.

    play_as is the 1-based index of the sweetword the simulated user
    holds: pass the real password's index for a legitimate user, or a
    honeyword's index for an attacker who picked that decoy from a stolen
    password file. A respond(challenge, round, entry) callback overrides
    the per-round response choice (used by the typo/DoS simulations).
    """
    if challenge is None:
        challenge = engine.new_challenge(sweetwords, rng)
    entry = sweetwords.entries[play_as - 1]
    responses = []
    for round_no in range(1, engine.rounds + 1):
        if respond is not None:
            responses.append(respond(challenge, round_no, entry))
        else:
            responses.append(engine.legit_response(challenge, round_no, entry, rng))
    transcript = SessionTranscript(engine.scheme, challenge, tuple(responses))
    return transcript, identify_sweetword(transcript, sweetwords, engine)
