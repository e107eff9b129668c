"""Honeyword generation and sweetword-set validation.

Decoys are produced by rejection sampling: draw syntax-preserving
perturbations of the real password (same length, same character class at
every position for the string schemes) and keep only candidates that
leave the whole set valid under the scheme's distinctness constraints.
The real password is inserted at a uniformly random index, which is the
index the honeyChecker later guards.
"""
from __future__ import annotations

from typing import Any

from .core import SweetwordList
from .errors import SweetwordValidationError

DEFAULT_RETRY_CAP = 100_000


def _engine_for(source) -> Any:
    from . import schemes
    if isinstance(source, str):
        return schemes.get_engine(source)
    if hasattr(source, "entry_violations"):  # already an engine
        return source
    return schemes.engine_for_params(source)


def validate_sweetword_set(sweetwords: SweetwordList, params=None) -> list[str]:
    """Check a sweetword set against its scheme constraints.

    Returns a list of violation messages (empty means valid): bounds on k,
    pairwise-distinct entries, and the per-scheme rule that makes a
    designated distinguishing round possible -- distinct per-round partial
    password information (S3PAS), pairwise-disjoint icon sets (CHC),
    pairwise-distinct predicates (PAS), or no shared characters (COP).
    """
    engine = _engine_for(params if params is not None else sweetwords.scheme)
    violations: list[str] = []
    if sweetwords.k < 2:
        violations.append("k must be at least 2")
    if sweetwords.k > engine.max_sweetwords:
        violations.append(
            f"k={sweetwords.k} exceeds the scheme's response-element count "
            f"{engine.max_sweetwords}")
    if len(set(sweetwords.entries)) != sweetwords.k:
        violations.append("entries are not pairwise distinct")
    violations.extend(engine.entry_violations(sweetwords.entries))
    return violations


def generate_sweetwords(password, scheme_or_params, k: int, rng,
                        retry_cap: int = DEFAULT_RETRY_CAP) -> SweetwordList:
    """Generate a k-entry sweetword list hiding `password` at a random index.

    Raises SweetwordValidationError when the password itself is invalid or
    when the retry budget runs out, which means k is too large for the
    scheme's constraints.
    """
    engine = _engine_for(scheme_or_params)
    if k < 2:
        raise SweetwordValidationError("k must be at least 2 (one honeyword minimum)")
    if k > engine.max_sweetwords:
        raise SweetwordValidationError(f"k too large for scheme: max {engine.max_sweetwords}")
    base_problems = engine.entry_violations([password])
    if base_problems:
        raise SweetwordValidationError(f"password invalid for {engine.scheme}: {base_problems}")

    # Some engines constrain generated sets beyond what validation demands
    # (S3PAS decoys must not share characters, or the designated round's
    # resampling loop could never terminate).
    extra = getattr(engine, "generation_violations", lambda entries: [])

    chosen = [password]
    tries = 0
    while len(chosen) < k:
        if tries >= retry_cap:
            raise SweetwordValidationError(
                f"k too large for scheme: no valid set of {k} after {retry_cap} tries")
        tries += 1
        candidate = engine.perturb(password, rng, chosen)
        if candidate is None:
            # The proposal pool is exhausted given what is already chosen;
            # further draws would face the same pool, so fail now.
            raise SweetwordValidationError(
                f"k too large for scheme: password pattern cannot hide {k - 1} decoys")
        if candidate in chosen:
            continue
        if extra(chosen + [candidate]) or engine.entry_violations(chosen + [candidate]):
            continue
        chosen.append(candidate)

    honeywords = chosen[1:]
    rng.shuffle(honeywords)
    slot = rng.randrange(k)  # uniform position of the real password
    entries = honeywords[:slot] + [password] + honeywords[slot:]
    swl = SweetwordList(engine.scheme, tuple(entries))
    leftover = validate_sweetword_set(swl, engine)
    if leftover:
        raise SweetwordValidationError(f"generated set failed validation: {leftover}")
    return swl


def random_account(engine, k: int, rng) -> tuple[SweetwordList, int]:
    """A fresh random password hidden in a fresh sweetword list; returns
    the list and the real password's 1-based index.

    Uniformly drawn passwords can be too class-heavy to hide k-1 decoys
    (e.g. three digits leave too few distinct digit substitutions), which
    surfaces as a validation error; such draws are discarded, mirroring a
    password policy that rejects what the account cannot protect.
    """
    while True:
        password = engine.random_password(rng)
        try:
            swl = generate_sweetwords(password, engine, k, rng)
        except SweetwordValidationError:
            continue
        return swl, swl.index_of(password)
