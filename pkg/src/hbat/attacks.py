"""Adversary simulations quantifying the framework's security claims.

Every Monte Carlo estimator takes a seed and a worker count and returns
bit-identical results for a fixed seed regardless of how many workers run
the trials: each trial's generator is derived from (seed, trial index),
so the partitioning of trials over processes cannot matter.
"""
from __future__ import annotations

import hashlib
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import SweetwordList, simulate_session
from .errors import SweetwordValidationError
from .honeygen import generate_sweetwords, random_account


def derive_rng(seed: int, index: int) -> random.Random:
    """Per-trial generator that is stable across processes and platforms."""
    digest = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def _run_chunk(args):
    fn, cfg, seed, start, stop = args
    return [fn(cfg, derive_rng(seed, i)) for i in range(start, stop)]


def run_trials(fn: Callable, cfg, n: int, seed: int, workers: int = 1) -> list:
    """Evaluate fn(cfg, rng_i) for i in 0..n-1, optionally in parallel."""
    if n < 1:
        raise ValueError("need at least one trial")
    if workers <= 1:
        return _run_chunk((fn, cfg, seed, 0, n))
    step = math.ceil(n / workers)
    chunks = [(fn, cfg, seed, lo, min(lo + step, n)) for lo in range(0, n, step)]
    out: list = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_run_chunk, chunks):
            out.extend(part)
    return out


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo rate with its 95% normal-approximation interval."""

    rate: float
    successes: int
    trials: int

    @property
    def ci95(self) -> tuple[float, float]:
        half = 1.96 * math.sqrt(max(self.rate * (1 - self.rate), 1e-12) / self.trials)
        return (max(0.0, self.rate - half), min(1.0, self.rate + half))

    def as_dict(self) -> dict:
        low, high = self.ci95
        return {"rate": self.rate, "successes": self.successes, "trials": self.trials,
                "ci95_low": low, "ci95_high": high}


def _estimate(outcomes: Iterable[bool]) -> Estimate:
    hits = total = 0
    for ok in outcomes:
        total += 1
        hits += bool(ok)
    return Estimate(hits / total, hits, total)


# ---------------------------------------------------------------------------
# Observation brute force: candidate pruning from recorded sessions
# ---------------------------------------------------------------------------

def bruteforce_observer(engine, sweetwords: SweetwordList, secret_index: int,
                        candidates: Sequence, sessions: int, rng) -> list[int]:
    """Candidate-set size after each observed (challenge, responses) pair.

    The attacker starts from every enumerable secret, records the genuine
    user's sessions, and keeps only candidates whose per-round response
    sets contain every observed response. The trace starts with the full
    space and is non-increasing; the true secret always survives.
    """
    secret = sweetwords.entries[secret_index - 1]
    surviving = list(candidates)
    trace = [len(surviving)]
    for _ in range(sessions):
        challenge = engine.new_challenge(sweetwords, rng)
        responses = [engine.legit_response(challenge, r, secret, rng)
                     for r in range(1, engine.rounds + 1)]
        kept = []
        for cand in surviving:
            for r, response in enumerate(responses, start=1):
                if response not in engine.prs(challenge, r, cand):
                    break
            else:
                kept.append(cand)
        surviving = kept
        trace.append(len(surviving))
    assert secret in surviving, "pruning must never drop the true secret"
    return trace


# ---------------------------------------------------------------------------
# Random-click attack
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RandomClickReport:
    per_round_password: tuple[Estimate, ...]  # response falls in the password's set
    per_round_any: tuple[Estimate, ...]       # response falls in any sweetword's set


def _random_click_trial(cfg, rng) -> tuple[tuple[bool, bool], ...]:
    engine, k = cfg
    swl, secret_index = random_account(engine, k, rng)
    secret = swl.entries[secret_index - 1]
    challenge = engine.new_challenge(swl, rng)
    out = []
    for r in range(1, engine.rounds + 1):
        click = rng.choice(list(engine.response_space(challenge, r)))
        in_password = click in engine.prs(challenge, r, secret)
        in_any = in_password or any(
            click in engine.prs(challenge, r, w) for w in swl.entries if w != secret)
        out.append((in_password, in_any))
    return tuple(out)


def random_click_attack(engine, trials: int, seed: int, k: int | None = None,
                        workers: int = 1) -> RandomClickReport:
    """Per-round success probability of uniformly random responses."""
    if trials < 1:
        raise ValueError("need at least one trial")
    k = k or getattr(engine.params, "k")
    rows = run_trials(_random_click_trial, (engine, k), trials, seed, workers)
    per_pw, per_any = [], []
    for r in range(engine.rounds):
        per_pw.append(_estimate(row[r][0] for row in rows))
        per_any.append(_estimate(row[r][1] for row in rows))
    return RandomClickReport(tuple(per_pw), tuple(per_any))


# ---------------------------------------------------------------------------
# Deliberate honeyword submission (DoS) and typo false alarms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DosReport:
    """Full-session alarm rate plus the two per-round quantities the
    framework's analysis actually argues about."""

    alarm: Estimate            # transcript consistently tracked one honeyword
    designated_hit: Estimate   # designated-round response fell in a honeyword's set
    coverage: float            # mean fraction of response elements covered by sweetwords


def _wrong_response_trial(cfg, rng) -> tuple[bool, bool, float]:
    """One session of uniformly random *wrong* responses.

    Returns (alarmed, designated-round-hit-a-honeyword, coverage). A full
    alarm needs every round's mistake to land in one honeyword's set; in
    schemes with several rounds the unconstrained rounds make that rare
    even though the designated round always hits a decoy when the
    sweetwords cover the response space.
    """
    engine, k = cfg
    swl, secret_index = random_account(engine, k, rng)
    responses: list = []

    def respond(challenge, round_no, entry):
        own = engine.prs(challenge, round_no, entry)
        options = [x for x in engine.response_space(challenge, round_no) if x not in own]
        choice = rng.choice(options)
        responses.append((challenge, round_no, choice))
        return choice

    _, identified = simulate_session(engine, swl, rng, play_as=secret_index, respond=respond)
    alarmed = identified is not None and identified != secret_index

    challenge, _, _ = responses[0]
    designated = getattr(challenge, "designated_round", 1)
    _, _, submitted = responses[designated - 1]
    hit = any(submitted in engine.prs(challenge, designated, w)
              for j, w in enumerate(swl.entries, start=1) if j != secret_index)
    space = list(engine.response_space(challenge, designated))
    covered = set()
    for w in swl.entries:
        covered |= set(engine.prs(challenge, designated, w))
    return alarmed, hit, len(covered & set(space)) / len(space)


def dos_attack_sim(engine, trials: int, seed: int, k: int | None = None,
                   workers: int = 1) -> DosReport:
    """Deliberate honeyword-submission attack by someone who knows the
    password: submit wrong responses and hope they track a decoy."""
    if trials < 1:
        raise ValueError("need at least one trial")
    k = k or getattr(engine.params, "k")
    rows = run_trials(_wrong_response_trial, (engine, k), trials, seed, workers)
    return DosReport(
        alarm=_estimate(row[0] for row in rows),
        designated_hit=_estimate(row[1] for row in rows),
        coverage=sum(row[2] for row in rows) / len(rows),
    )


def typo_false_alarm_sim(engine, trials: int, seed: int, k: int | None = None,
                         workers: int = 1) -> Estimate:
    """False-alarm probability of the uniform-wrong-response typo model.

    Mechanically the same session shape as the deliberate attack: a typo
    only alarms when every round's mistake lands in one honeyword's set.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    k = k or getattr(engine.params, "k")
    rows = run_trials(_wrong_response_trial, (engine, k), trials, seed, workers)
    return _estimate(row[0] for row in rows)


def response_coverage(engine, swl: SweetwordList, challenge) -> float:
    """Fraction of all response elements covered by some sweetword's set
    (single-round schemes: the analytic alarm numerator)."""
    space = list(engine.response_space(challenge, 1))
    covered = set()
    for entry in swl.entries:
        covered |= set(engine.prs(challenge, 1, entry))
    return len(covered & set(space)) / len(space)


def _abstract_typo_trial(cfg, rng) -> bool:
    subset_size, space, rounds = cfg
    for _ in range(rounds):
        subset = rng.sample(range(space), subset_size)
        if rng.randrange(space) not in subset:
            return False
    return True


def abstract_typo_rate(subset_size: int, space: int, rounds: int, trials: int,
                       seed: int, workers: int = 1) -> Estimate:
    """Monte Carlo of the idealized typo model behind (TR/T)^rounds: each
    round draws a fresh TR-element response set and a uniform response."""
    return _estimate(run_trials(_abstract_typo_trial, (subset_size, space, rounds),
                                trials, seed, workers))


# ---------------------------------------------------------------------------
# Multiple-system vulnerability
# ---------------------------------------------------------------------------

def msv_intersection(list_a: SweetwordList, list_b: SweetwordList) -> set:
    """Entries common to two independently generated lists. When the lists
    come from two breached systems sharing a user password, this is what
    the attacker intersects to expose it."""
    return set(list_a.entries) & set(list_b.entries)


def _msv_trial(cfg, rng) -> bool:
    engine, k = cfg
    while True:
        password = engine.random_password(rng)
        try:
            a = generate_sweetwords(password, engine.scheme, k, rng)
            b = generate_sweetwords(password, engine.scheme, k, rng)
        except SweetwordValidationError:
            continue
        return msv_intersection(a, b) == {password}


def msv_attack_sim(engine, trials: int, seed: int, k: int | None = None,
                   workers: int = 1) -> Estimate:
    """How often two independent generations intersect to exactly the
    shared password."""
    if trials < 1:
        raise ValueError("need at least one trial")
    k = k or getattr(engine.params, "k")
    return _estimate(run_trials(_msv_trial, (engine, k), trials, seed, workers))


# ---------------------------------------------------------------------------
# Flatness: can a heuristic beat the 1/k guess?
# ---------------------------------------------------------------------------

_ENGLISH_FREQUENCY = {ch: f for ch, f in zip(
    "ETAOINSHRDLCUMWFGYPBVKJXQZ",
    (12.7, 9.1, 8.2, 7.5, 7.0, 6.7, 6.3, 6.1, 6.0, 4.3, 4.0, 2.8,
     2.8, 2.4, 2.4, 2.2, 2.0, 2.0, 1.9, 1.5, 1.0, 0.8, 0.2, 0.2, 0.1, 0.1))}


def _naturalness(word) -> float:
    return sum(_ENGLISH_FREQUENCY.get(ch.upper(), 0.0) for ch in str(word))


HEURISTICS: dict[str, Callable] = {
    "random": lambda entries, rng: rng.randrange(len(entries)) + 1,
    "letter_frequency": lambda entries, rng: max(
        range(1, len(entries) + 1), key=lambda j: (_naturalness(entries[j - 1]), -j)),
}


def flatness_estimate(accounts: Sequence[tuple[SweetwordList, int]],
                      heuristic_names: Sequence[str], seed: int) -> dict[str, dict]:
    """Each heuristic's success rate at picking the real password from the
    sweetword list, reported against the 1/k baseline.

    `accounts` holds (list, true index) pairs for at least 100 accounts.
    """
    if len(accounts) < 100:
        raise ValueError("need at least 100 accounts for a meaningful estimate")
    rng = random.Random(seed)
    out: dict[str, dict] = {}
    for name in heuristic_names:
        heuristic = HEURISTICS[name]
        estimate = _estimate(heuristic(swl.entries, rng) == t for swl, t in accounts)
        baseline = sum(1 / swl.k for swl, _ in accounts) / len(accounts)
        report = estimate.as_dict()
        report["baseline"] = baseline
        report["advantage"] = estimate.rate - baseline
        out[name] = report
    return out


def generate_accounts(engine, count: int, seed: int, k: int | None = None,
                      wordlike: bool = False) -> list[tuple[SweetwordList, int]]:
    """Fresh accounts for the flatness measurement. With wordlike=True,
    string-scheme passwords follow a name+digit habit instead of uniform
    draws, giving frequency heuristics something to latch onto."""
    rng = random.Random(seed)
    k = k or getattr(engine.params, "k")
    words = ("alex", "mary", "john", "sara", "liam", "emma", "raja", "nina")
    accounts: list[tuple[SweetwordList, int]] = []
    while len(accounts) < count:
        if wordlike and engine.scheme in ("s3pas", "cop"):
            password = rng.choice(words)[:3] + str(rng.randrange(10))
            try:
                swl = generate_sweetwords(password, engine.scheme, k, rng)
            except SweetwordValidationError:
                continue
            accounts.append((swl, swl.index_of(password)))
        else:
            accounts.append(random_account(engine, k, rng))
    return accounts
