"""Internal argument validation helpers."""

from __future__ import annotations

import math

from .errors import DomainError


def require_real(name: str, value: float) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def require_unit(name: str, value: float) -> float:
    value = require_real(name, value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def require_exponent(k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        raise DomainError(f"pattern exponent k must be an integer, got {k!r}")
    if k < 0:
        raise DomainError(f"pattern exponent k must be >= 0, got {k}")
    return k


def require_subintervals(t: int) -> int:
    if isinstance(t, bool) or not isinstance(t, int):
        raise DomainError(f"sub-interval count t must be an integer, got {t!r}")
    if t < 1:
        raise DomainError(f"sub-interval count t must be >= 1, got {t}")
    return t
