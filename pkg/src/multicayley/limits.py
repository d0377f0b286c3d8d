"""Size bounds shared by the generators and expanders, plus the error types.

Every bound can be overridden through an environment variable of the form
``MULTICAYLEY_<NAME>`` (for example ``MULTICAYLEY_MAX_VERTICES=10``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


class SizeError(ValueError):
    """An input exceeds a configured size bound."""


class PreconditionError(ValueError):
    """An input violates the documented precondition of an operation."""


@dataclass(frozen=True)
class Limits:
    max_vertices: int = 9
    max_skeleton_d: int = 8
    max_determinant: int = 8
    max_gf_d: int = 6
    max_gf_terms: int = 10**6
    max_plane_tree: int = 12
    max_cactus_size: int = 4
    max_cactus_d: int = 4


def _from_env() -> Limits:
    base = Limits()
    overrides = {}
    for f in fields(Limits):
        raw = os.environ.get("MULTICAYLEY_" + f.name.upper())
        if raw is not None:
            overrides[f.name] = int(raw)
    return replace(base, **overrides)


_current = _from_env()


def limits() -> Limits:
    return _current


def set_limits(**changes: int) -> Limits:
    """Replace selected bounds process-wide and return the previous value."""
    global _current
    previous = _current
    _current = replace(_current, **changes)
    return previous


def check(value: int, bound: int, what: str) -> None:
    if value > bound:
        raise SizeError(f"{what} = {value} exceeds the configured bound {bound}")
