"""Python surface of the multi-state reliability engine."""

from _msre import (  # noqa: F401
    EngineError,
    System,
    UFunction,
    analyze,
    compose,
    load_model,
    optimize,
    parse_model,
    simulate,
    validate_model,
)

__all__ = [
    "EngineError",
    "System",
    "UFunction",
    "analyze",
    "compose",
    "load_model",
    "optimize",
    "parse_model",
    "simulate",
    "validate_model",
]
