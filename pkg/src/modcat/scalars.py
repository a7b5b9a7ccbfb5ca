"""Exact root-of-unity phases and the global comparison tolerance.

Twists and cocycle values compose exactly, so they are kept as reduced
fractions of a full turn (:class:`PhaseQ`). Everything else is ordinary
``complex``/``numpy`` arithmetic compared through :func:`approx_eq`.
"""
from __future__ import annotations

import cmath
import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

__all__ = [
    "PhaseQ",
    "phase_mul",
    "phase_pow",
    "to_complex",
    "snap_phase",
    "get_tolerance",
    "set_tolerance",
    "tolerance",
    "approx_eq",
    "cscalar_to_json",
    "cscalar_from_json",
]

DEFAULT_TOLERANCE = 1e-9
_tolerance = DEFAULT_TOLERANCE


def get_tolerance() -> float:
    return _tolerance


def set_tolerance(tol: float) -> None:
    """Rebind the global tolerance used by every approximate comparison."""
    global _tolerance
    if not (tol > 0 and math.isfinite(tol)):
        raise ValueError(f"tolerance must be a positive finite float, got {tol!r}")
    _tolerance = float(tol)


@contextmanager
def tolerance(tol: float) -> Iterator[float]:
    """Temporarily rebind the global tolerance."""
    old = _tolerance
    set_tolerance(tol)
    try:
        yield tol
    finally:
        set_tolerance(old)


def approx_eq(a, b, tol: float | None = None) -> bool:
    """``|a-b| <= tol * max(1, |a|, |b|)``; elementwise-all for arrays."""
    tol = _tolerance if tol is None else tol
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    return bool(np.all(np.abs(a - b) <= tol * scale))


@dataclass(frozen=True, order=True)
class PhaseQ:
    """The unit complex number ``exp(2*pi*i * num/den)``.

    Normalized on construction to ``0 <= num < den`` in lowest terms.
    """

    num: int
    den: int = 1

    def __post_init__(self):
        if not isinstance(self.num, (int, np.integer)) or not isinstance(self.den, (int, np.integer)):
            raise TypeError("PhaseQ takes integer numerator and denominator")
        if self.den <= 0:
            raise ValueError("PhaseQ denominator must be positive")
        g = math.gcd(int(self.num), int(self.den))
        object.__setattr__(self, "num", (int(self.num) // g) % (int(self.den) // g))
        object.__setattr__(self, "den", int(self.den) // g)

    @classmethod
    def from_fraction(cls, f: Fraction | int) -> "PhaseQ":
        f = Fraction(f)
        return cls(f.numerator, f.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def order(self) -> int:
        return self.den

    def is_trivial(self) -> bool:
        return self.num == 0

    def __mul__(self, other: "PhaseQ") -> "PhaseQ":
        return phase_mul(self, other)

    def __pow__(self, n: int) -> "PhaseQ":
        return phase_pow(self, n)

    def __invert__(self) -> "PhaseQ":
        return PhaseQ(-self.num, self.den)

    def __complex__(self) -> complex:
        return to_complex(self)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def to_json(self) -> dict:
        return {"num": self.num, "den": self.den}

    @classmethod
    def from_json(cls, obj: dict) -> "PhaseQ":
        return cls(int(obj["num"]), int(obj["den"]))


ONE = PhaseQ(0, 1)


def phase_mul(p: PhaseQ, q: PhaseQ) -> PhaseQ:
    return PhaseQ.from_fraction(p.fraction + q.fraction)


def phase_pow(p: PhaseQ, n: int) -> PhaseQ:
    return PhaseQ.from_fraction(p.fraction * n)


_EXACT = {1: {0: 1 + 0j}, 2: {1: -1 + 0j}, 4: {1: 1j, 3: -1j}}


def to_complex(p: PhaseQ) -> complex:
    """Complex value; exact for the fourth roots of unity."""
    exact = _EXACT.get(p.den, {}).get(p.num)
    if exact is not None:
        return exact
    return cmath.exp(2j * math.pi * p.num / p.den)


def snap_phase(z: complex, max_den: int, max_dist: float = 1e-6) -> PhaseQ:
    """Nearest rational phase with denominator <= ``max_den`` to ``arg(z)``.

    Raises ``ValueError`` if the snapped phase lies farther than ``max_dist``
    (in turns) from the float phase.
    """
    turns = (cmath.phase(z) / (2 * math.pi)) % 1.0
    f = Fraction(turns).limit_denominator(max(1, max_den))
    dist = abs(float(f) - turns)
    dist = min(dist, 1.0 - dist)
    if dist > max_dist:
        raise ValueError(f"phase {turns!r} is not within {max_dist} of a rational with denominator <= {max_den}")
    return PhaseQ.from_fraction(f)


def cscalar_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def cscalar_from_json(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    return complex(float(obj["re"]), float(obj.get("im", 0.0)))
