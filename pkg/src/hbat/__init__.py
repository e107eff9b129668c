"""Honeyword-enabled shoulder-surfing-resistant authentication toolkit."""

from .core import (
    AccountRegistry,
    HoneyIndexRecord,
    HoneyIndexStore,
    SessionTranscript,
    SweetwordList,
    apply_block_policy,
    honeychecker_check,
    identify_sweetword,
    simulate_session,
)
from .errors import (
    GenerationTimeout,
    HbatError,
    NoRecordError,
    PrincipleViolationError,
    SweetwordValidationError,
)
from .honeygen import generate_sweetwords, validate_sweetword_set
from .schemes import get_engine

__version__ = "0.1.0"

__all__ = [
    "AccountRegistry",
    "GenerationTimeout",
    "HbatError",
    "HoneyIndexRecord",
    "HoneyIndexStore",
    "NoRecordError",
    "PrincipleViolationError",
    "SessionTranscript",
    "SweetwordList",
    "SweetwordValidationError",
    "apply_block_policy",
    "generate_sweetwords",
    "get_engine",
    "honeychecker_check",
    "identify_sweetword",
    "simulate_session",
    "validate_sweetword_set",
    "__version__",
]
