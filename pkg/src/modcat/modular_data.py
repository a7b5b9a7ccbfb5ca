"""Modular data (S, theta): validation, dimensions, Verlinde fusion, currents."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from pathlib import Path

import numpy as np

from . import scalars
from .errors import DimensionMismatch, InputError, NonIntegralFusion, NotASimpleCurrent
from .fusion_ring import FusionRing
from .report import ValidationReport
from .scalars import PhaseQ, cscalar_from_json, cscalar_to_json, snap_phase

__all__ = [
    "ModularDatum",
    "validate",
    "quantum_dim",
    "quantum_dims",
    "verlinde_coefficients",
    "verlinde_fusion",
    "monodromy_charge",
    "simple_currents",
    "current_order",
    "charge_conjugation",
    "su2_level",
    "drinfeld_double_abelian",
    "drinfeld_double_z2",
    "load_datum",
    "save_datum",
    "VERLINDE_TOL",
]

VERLINDE_TOL = 1e-6
SNAP_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class ModularDatum:
    labels: tuple[str, ...]
    S: np.ndarray
    theta: tuple[PhaseQ, ...]
    unit: int = 0

    def __post_init__(self):
        S = np.array(self.S, dtype=complex)
        S.setflags(write=False)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "theta", tuple(self.theta))
        object.__setattr__(self, "unit", int(self.unit))
        _check_shapes(self.n, S, self.theta, self.unit)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.n:
                raise InputError(f"label index {label} out of range 0..{self.n - 1}")
            return int(label)
        if label in self.labels:
            return self.labels.index(label)
        if isinstance(label, str) and label.isdigit():
            return self.index(int(label))
        raise InputError(f"unknown label {label!r}")

    @cached_property
    def fusion(self) -> FusionRing:
        return verlinde_fusion(self)

    @cached_property
    def dims(self) -> np.ndarray:
        return quantum_dims(self)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "S": [[cscalar_to_json(z) for z in row] for row in self.S],
            "theta": [t.to_json() for t in self.theta],
            "unit": self.unit,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ModularDatum":
        try:
            labels = obj["labels"]
            S = [[cscalar_from_json(z) for z in row] for row in obj["S"]]
            theta = [PhaseQ.from_json(t) for t in obj["theta"]]
            unit = int(obj.get("unit", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed modular datum: {exc}") from exc
        _check_shapes(len(labels), S, theta, unit)
        return cls(tuple(labels), np.array(S, dtype=complex), tuple(theta), unit)


def _check_shapes(n, S, theta, unit):
    S = np.asarray(S)
    if S.shape != (n, n):
        raise DimensionMismatch(f"S has shape {S.shape}, expected ({n}, {n})")
    if len(theta) != n:
        raise DimensionMismatch(f"{len(theta)} twists for {n} labels")
    if not 0 <= unit < n:
        raise DimensionMismatch(f"unit {unit} out of range")


def charge_conjugation(md: ModularDatum) -> tuple[int, ...] | None:
    """The permutation read off S^2, or None if S^2 is not a permutation."""
    C = md.S @ md.S
    R = np.round(C.real)
    if not scalars.approx_eq(C, R) or not np.all((R == 0) | (R == 1)):
        return None
    if not (np.all(R.sum(axis=0) == 1) and np.all(R.sum(axis=1) == 1)):
        return None
    return tuple(int(np.argmax(row)) for row in R)


def validate(md: ModularDatum) -> ValidationReport:
    _check_shapes(md.n, md.S, md.theta, md.unit)
    S, n, u = md.S, md.n, md.unit
    tol = scalars.get_tolerance()
    rep = ValidationReport("modular datum")

    dev = float(np.abs(S - S.T).max(initial=0.0))
    rep.add("S symmetric", dev <= tol, dev)

    dev = float(np.abs(S @ S.conj().T - np.eye(n)).max(initial=0.0))
    rep.add("S unitary", dev <= tol, dev)

    rep.add("unit twist trivial", md.theta[u].is_trivial(), detail=f"theta[unit]={md.theta[u]}")

    C = S @ S
    dev = float(np.abs(C - np.round(C.real)).max(initial=0.0))
    perm = charge_conjugation(md)
    rep.add("S^2 permutation", perm is not None, dev)

    row = S[u]
    dev = float(max(np.abs(row.imag).max(initial=0.0), max(0.0, -row.real.min(initial=0.0))))
    positive = bool(np.all(np.abs(row.imag) <= tol) and np.all(row.real > tol))
    rep.add("unit row positive", positive, dev)
    return rep


def quantum_dims(md: ModularDatum) -> np.ndarray:
    u = md.unit
    return (md.S[u] / md.S[u, u]).real.copy()


def quantum_dim(md: ModularDatum, a) -> float:
    a = md.index(a)
    return float((md.S[md.unit, a] / md.S[md.unit, md.unit]).real)


def verlinde_coefficients(md: ModularDatum) -> np.ndarray:
    """Unrounded ``sum_a S_ia S_ja conj(S_ka) / S_unit,a`` as an n x n x n array."""
    S = md.S
    return np.einsum("ia,ja,ka->ijk", S, S, S.conj() / S[md.unit][None, :])


def verlinde_fusion(md: ModularDatum) -> FusionRing:
    raw = verlinde_coefficients(md)
    N = np.round(raw.real)
    dev = float(np.abs(raw - N).max(initial=0.0))
    if dev > VERLINDE_TOL:
        i, j, k = np.unravel_index(np.argmax(np.abs(raw - N)), raw.shape)
        raise NonIntegralFusion(f"N_{{{i},{j}}}^{k} = {raw[i, j, k]} is not within {VERLINDE_TOL} of an integer")
    if N.min(initial=0) < 0:
        raise NonIntegralFusion("Verlinde formula produced a negative coefficient")
    N = N.astype(np.int64)
    u = md.unit
    dual = charge_conjugation(md)
    if dual is None:
        raise NonIntegralFusion("S^2 is not a permutation; no charge conjugation")
    return FusionRing(N, u, dual, md.labels)


def current_order(md: ModularDatum, j) -> int:
    """Smallest N > 0 with j^N = unit under fusion."""
    j = md.index(j)
    fr = md.fusion
    x, order = j, 1
    while x != md.unit:
        prod_ = fr.fuse(x, j)
        if len(prod_) != 1 or next(iter(prod_.values())) != 1:
            raise NotASimpleCurrent(f"label {md.labels[j]} does not fuse like a current")
        x = next(iter(prod_))
        order += 1
        if order > md.n:
            raise NotASimpleCurrent(f"label {md.labels[j]} has no finite order")
    return order


def monodromy_charge(md: ModularDatum, x, j) -> PhaseQ:
    """Phase of ``S[x, j] / S[x, unit]`` for a simple current ``j``, snapped exactly."""
    x, j = md.index(x), md.index(j)
    if abs(quantum_dim(md, j) - 1.0) > scalars.get_tolerance():
        raise NotASimpleCurrent(f"label {md.labels[j]} has quantum dimension {quantum_dim(md, j)}")
    ratio = md.S[x, j] / md.S[x, md.unit]
    if abs(abs(ratio) - 1.0) > SNAP_TOL:
        raise NotASimpleCurrent(f"|S[x,j]/S[x,unit]| = {abs(ratio)} for x={md.labels[x]}")
    max_den = md.n * current_order(md, j)
    return snap_phase(ratio, max_den, SNAP_TOL)


def simple_currents(md: ModularDatum) -> list[int]:
    tol = scalars.get_tolerance()
    d = md.dims
    cur = [a for a in range(md.n) if abs(d[a] - 1.0) <= tol]
    fr = md.fusion
    cs = set(cur)
    for a, b in product(cur, repeat=2):
        assert set(fr.fuse(a, b)) <= cs, "simple currents not closed under fusion"
    assert all(fr.dual[a] in cs for a in cur), "simple currents not closed under duality"
    return cur


def su2_level(k: int) -> ModularDatum:
    """Affine su(2) at level k: labels 0..k."""
    if k < 1:
        raise InputError("level must be >= 1")
    n = k + 2
    a = np.arange(k + 1)
    S = math.sqrt(2 / n) * np.sin(np.pi * np.outer(a + 1, a + 1) / n)
    theta = tuple(PhaseQ(int(x * (x + 2)), 4 * n) for x in a)
    return ModularDatum(tuple(str(x) for x in a), S, theta, 0)


def drinfeld_double_abelian(group) -> ModularDatum:
    """Double of a finite abelian group; labels are (flux g, charge chi).

    ``S = chi(h) rho(g) / |G|`` and ``theta = chi(g)``. For Z2 the labels are
    named ``1, e, m, f`` (charge e, flux m).
    """
    from .cohomology import AbelianGroup

    g = group if isinstance(group, AbelianGroup) else AbelianGroup(tuple(group))
    els = g.elements()
    pairs = [(x, c) for x in els for c in els]
    order = g.order

    def char(c, x) -> PhaseQ:
        return PhaseQ.from_fraction(sum(Fraction(ci * xi, ni) for ci, xi, ni in zip(c, x, g.orders)))

    size = len(pairs)
    S = np.empty((size, size), dtype=complex)
    for p, (x, c) in enumerate(pairs):
        for q, (y, d) in enumerate(pairs):
            S[p, q] = scalars.to_complex(char(c, y) * char(d, x)) / order
    theta = tuple(char(c, x) for x, c in pairs)
    if g.orders == (2,):
        labels = ("1", "e", "m", "f")
    else:
        labels = tuple(f"{_fmt(x)}|{_fmt(c)}" for x, c in pairs)
    return ModularDatum(labels, S, theta, 0)


def drinfeld_double_z2() -> ModularDatum:
    return drinfeld_double_abelian((2,))


def _fmt(v) -> str:
    return ",".join(str(t) for t in v) if v else "0"


def load_datum(path, force: bool = False) -> ModularDatum:
    """Read a datum JSON file; raise InputError if it fails validation unless forced."""
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    md = ModularDatum.from_json(obj)
    if not force:
        rep = validate(md)
        if not rep.ok:
            raise InvalidDatum(rep)
    return md


class InvalidDatum(Exception):
    def __init__(self, report: ValidationReport):
        super().__init__("modular datum failed validation: " + ", ".join(c.name for c in report.failed()))
        self.report = report


def save_datum(md: ModularDatum, path) -> None:
    Path(path).write_text(json.dumps(md.to_json(), indent=1))
