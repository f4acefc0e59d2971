"""Solver limits and run configuration."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, replace
from typing import Optional

log = logging.getLogger(__name__)

ENV_CAP = "ICL_CAP_N"


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Caps:
    n: int = 20  # chi, chi_f, chi_local, independent-set enumeration
    frac_local_n: int = 15
    rfold_n: int = 10
    rfold_r: int = 4
    minrank_n: int = 5
    universal_vertices: int = 100_000

    def __post_init__(self):
        for name, val in self.__dict__.items():
            if val <= 0:
                raise ValueError(f"cap {name} must be positive")

    @classmethod
    def from_env(cls, environ=None) -> "Caps":
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_CAP)
        if not raw:
            return cls()
        return cls().with_n(int(raw))

    def with_n(self, n: int) -> "Caps":
        """Override the general vertex cap (also lifts the fractional-local cap)."""
        return replace(self, n=n, frac_local_n=n)


DEFAULT_CAPS = Caps()


def check_cap(n: int, cap: Optional[int], default: int, what: str) -> int:
    """Validate ``n`` against ``cap`` (``None`` means ``default``); return the cap used."""
    if cap is None:
        cap = default
    elif cap > default:
        log.warning("%s: cap raised to n=%d (default %d); exact search may be slow", what, cap, default)
    if n > cap:
        raise CapExceeded(f"{what}: n={n} exceeds cap {cap}")
    return cap


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    scheme: str = "scalar"
    seed: Optional[int] = None
    caps: Caps = field(default_factory=Caps)
    output: Optional[str] = None
    format: str = "json"

    def __post_init__(self):
        if self.command not in {"analyze", "code", "verify", "family", "universal", "sweep"}:
            raise ValueError(f"unknown command {self.command!r}")
        if self.scheme not in {"scalar", "binary", "fractional"}:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.format not in {"json", "csv", "text"}:
            raise ValueError(f"unknown format {self.format!r}")
        if self.command == "code" and (self.seed is not None) != (self.scheme == "binary"):
            raise ValueError("--seed is required for the binary scheme and only for it")
