"""Scheme engines and their parameter types, keyed by scheme tag."""
from __future__ import annotations

from .s3pas import S3pasEngine, S3pasParams
from .chc import ChcEngine, ChcParams
from .pas import PasEngine, PasParams
from .cop import CopEngine, CopParams

SCHEME_TAGS = ("s3pas", "chc", "pas", "cop")

_ENGINES = {
    "s3pas": (S3pasEngine, S3pasParams),
    "chc": (ChcEngine, ChcParams),
    "pas": (PasEngine, PasParams),
    "cop": (CopEngine, CopParams),
}


def get_engine(scheme: str, **param_overrides):
    """Engine instance for a scheme tag, with optional parameter overrides."""
    try:
        engine_cls, params_cls = _ENGINES[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEME_TAGS}") from None
    return engine_cls(params_cls(**param_overrides)) if param_overrides else engine_cls()


def engine_for_params(params):
    """Engine instance wrapping an already-built params object."""
    for engine_cls, params_cls in _ENGINES.values():
        if isinstance(params, params_cls):
            return engine_cls(params)
    raise ValueError(f"no engine for params of type {type(params).__name__}")
