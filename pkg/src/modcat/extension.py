"""Simple-current algebra candidates, local sectors, extensions, and the
S-transformation of character vectors (including the E6 family at su(2)
level 10).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import scalars
from .errors import (FixedPointsPresent, LengthMismatch, NotAdmissible, NotClosed, NotCurrents,
                     WrongDatum, ModcatError)
from .modular_data import (ModularDatum, current_order, monodromy_charge, quantum_dim, su2_level,
                           validate, verlinde_fusion)
from .report import ValidationReport
from .scalars import PhaseQ, phase_pow

__all__ = [
    "CurrentAlgebraCandidate",
    "ExtensionData",
    "candidate",
    "twist_admissible",
    "monodromy_neutral",
    "local_sector",
    "extend",
    "orbit_sum_matrix",
    "unitarize",
    "s_transform",
    "e6_character_set",
    "e6_closure_check",
    "E6_SEXT",
    "E6_SEXT_ORDER",
]


@dataclass(frozen=True, eq=False)
class CurrentAlgebraCandidate:
    """``A = sum_{J in H} J`` for a fusion-closed set H of simple currents."""

    datum: ModularDatum
    subset: tuple[int, ...]

    def names(self) -> list[str]:
        return [self.datum.labels[j] for j in self.subset]


def candidate(md: ModularDatum, H) -> CurrentAlgebraCandidate:
    idx = sorted({md.index(h) for h in H})
    tol = scalars.get_tolerance()
    not_cur = [md.labels[j] for j in idx if abs(quantum_dim(md, j) - 1.0) > tol]
    if not_cur:
        raise NotCurrents(f"labels {not_cur} are not simple currents")
    if md.unit not in idx:
        raise NotClosed("subset must contain the unit")
    fr = md.fusion
    hs = set(idx)
    for a, b in product(idx, repeat=2):
        out = set(fr.fuse(a, b))
        if not out <= hs:
            raise NotClosed(f"{md.labels[a]} x {md.labels[b]} leaves the subset")
    for a in idx:
        if fr.dual[a] not in hs:
            raise NotClosed(f"dual of {md.labels[a]} not in the subset")
    return CurrentAlgebraCandidate(md, tuple(idx))


@dataclass
class TwistEntry:
    label: str
    theta: PhaseQ
    order: int
    theta_pow_order: PhaseQ
    passed: bool
    trivial_twist: bool

    def to_dict(self) -> dict:
        return {"label": self.label, "theta": self.theta.to_json(), "order": self.order,
                "theta^N": self.theta_pow_order.to_json(), "passed": self.passed,
                "trivial_twist": self.trivial_twist}


@dataclass
class TwistReport:
    entries: list[TwistEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def all_trivial(self) -> bool:
        return all(e.trivial_twist for e in self.entries)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"passed": self.ok, "all_trivial": self.all_trivial,
                "currents": [e.to_dict() for e in self.entries]}


def twist_admissible(c: CurrentAlgebraCandidate) -> TwistReport:
    """``theta_J ** N_J == 1`` exactly, for every J in the subset."""
    md = c.datum
    rep = TwistReport()
    for j in c.subset:
        order = current_order(md, j)
        th = md.theta[j]
        p = phase_pow(th, order)
        rep.entries.append(TwistEntry(md.labels[j], th, order, p, p.is_trivial(), th.is_trivial()))
    return rep


def monodromy_neutral(c: CurrentAlgebraCandidate) -> bool:
    md = c.datum
    return all(monodromy_charge(md, j, k).is_trivial() for j, k in product(c.subset, repeat=2))


def local_sector(c: CurrentAlgebraCandidate) -> list[int]:
    md = c.datum
    return [x for x in range(md.n) if all(monodromy_charge(md, x, j).is_trivial() for j in c.subset)]


@dataclass(frozen=True, eq=False)
class ExtensionData:
    local: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    datum: ModularDatum
    branching: dict[int, tuple[int, ...]]

    def to_dict(self) -> dict:
        md = self.datum
        return {
            "local": list(self.local),
            "orbits": [list(o) for o in self.orbits],
            "labels": list(md.labels),
            "S": [[scalars.cscalar_to_json(z) for z in row] for row in md.S],
            "theta": [t.to_json() for t in md.theta],
        }


def orbit_sum_matrix(S: np.ndarray, blocks, representatives=None) -> np.ndarray:
    """``M[A, B] = sum_{l in A} S[l, rep(B)]``; ``rep`` defaults to the first member."""
    reps = [b[0] for b in blocks] if representatives is None else list(representatives)
    return np.array([[sum(S[l, r] for l in a) for r in reps] for a in blocks], dtype=complex)


def unitarize(M: np.ndarray) -> tuple[np.ndarray, float]:
    """Rescale by the positive scalar that makes ``M`` unitary, if one exists.

    Returns the rescaled matrix and the scalar; unitarity itself is left to
    the caller to check.
    """
    gram = M @ M.conj().T
    c = 1.0 / math.sqrt(float(np.mean(np.diag(gram).real)))
    return M * c, c


def extend(c: CurrentAlgebraCandidate) -> ExtensionData:
    md = c.datum
    tw = twist_admissible(c)
    if not tw.all_trivial:
        bad = [e.label for e in tw.entries if not e.trivial_twist]
        raise NotAdmissible(f"currents {bad} have non-trivial twist")
    if not monodromy_neutral(c):
        raise NotAdmissible("subset is not monodromy-neutral")
    local = local_sector(c)
    fr = md.fusion

    def act(j, x):
        out = fr.fuse(j, x)
        (y,) = out
        return y

    fixed = [(md.labels[j], md.labels[x]) for x in local for j in c.subset
             if j != md.unit and act(j, x) == x]
    if fixed:
        raise FixedPointsPresent(f"fixed points (current, label): {fixed}")
    seen: set[int] = set()
    orbits = []
    for x in local:
        if x in seen:
            continue
        orb = tuple(sorted({act(j, x) for j in c.subset}))
        seen.update(orb)
        orbits.append(orb)
    orbits.sort(key=lambda o: (md.unit not in o, o))

    M, _ = unitarize(orbit_sum_matrix(md.S, orbits))
    thetas = []
    for o in orbits:
        ts = {md.theta[x] for x in o}
        if len(ts) != 1:
            raise NotAdmissible(f"twist not constant on orbit {o}")
        thetas.append(ts.pop())
    labels = tuple(md.labels[o[0]] for o in orbits)
    ext = ModularDatum(labels, M, tuple(thetas), 0)
    rep = validate(ext)
    if not rep.ok:
        raise ModcatError("extended datum failed validation: " + ", ".join(x.name for x in rep.failed()))
    verlinde_fusion(ext)
    return ExtensionData(tuple(local), tuple(orbits), ext, {i: o for i, o in enumerate(orbits)})


def s_transform(md: ModularDatum, v) -> np.ndarray:
    """Coefficients of ``f(-1/tau)`` for ``f = sum_l v_l chi_l``: ``S^T v``."""
    v = np.asarray(v)
    if v.shape != (md.n,):
        raise LengthMismatch(f"vector of length {v.shape} for {md.n} labels")
    out = md.S.T @ v
    if np.all(np.abs(out.imag) <= scalars.get_tolerance()):
        return out.real
    return out


# row/column order of the extended S-matrix below is (o, sigma, v)
E6_SEXT_ORDER = ("o", "s", "v")
E6_SEXT = 0.5 * np.array([[1.0, math.sqrt(2), 1.0],
                          [math.sqrt(2), 0.0, -math.sqrt(2)],
                          [1.0, -math.sqrt(2), 1.0]])


def _is_su2_10(md: ModularDatum) -> bool:
    ref = su2_level(10)
    return md.n == 11 and scalars.approx_eq(md.S, ref.S) and md.theta == ref.theta


def e6_character_set(md10: ModularDatum) -> dict[str, np.ndarray]:
    """The eleven character combinations of the E6 example, keyed by ASCII names.

    ``X_<a>``, ``X_<a>_check`` and ``Xb_<a>`` for ``a`` in ``o, v, s``, plus
    ``chi_5`` and ``Xb_minus``.
    """
    if not _is_su2_10(md10):
        raise WrongDatum("E6 characters are defined for su(2) level 10 only")
    D = 2 + math.sqrt(3)

    def vec(coeffs):
        u = np.zeros(11)
        for lam, x in coeffs.items():
            u[lam] = x
        return u

    return {
        "X_o": vec({0: 1, 6: 1}),
        "X_v": vec({4: 1, 10: 1}),
        "X_s": vec({3: 1, 7: 1}),
        "X_o_check": vec({1: 1, 5: 1, 7: 1}),
        "X_v_check": vec({3: 1, 5: 1, 9: 1}),
        "X_s_check": vec({2: 1, 4: 1, 6: 1, 8: 1}),
        "Xb_o": vec({0: D ** 0.5, 6: -D ** -0.5}),
        "Xb_v": vec({4: D ** -0.5, 10: -D ** 0.5}),
        "Xb_s": vec({3: 1, 7: -1}),
        "chi_5": vec({5: 1}),
        "Xb_minus": vec({0: 1, 2: -1, 4: 1, 6: -1, 8: 1, 10: -1}) / math.sqrt(6),
    }


def e6_closure_check(md10: ModularDatum | None = None, sext: np.ndarray | None = None) -> ValidationReport:
    """S-transformation closure of the E6 character families."""
    md10 = su2_level(10) if md10 is None else md10
    sext = E6_SEXT if sext is None else np.asarray(sext)
    ch = e6_character_set(md10)
    rep = ValidationReport("E6 character closure")
    keys = E6_SEXT_ORDER
    families = [("X_{}", "X_{}"), ("X_{}_check", "Xb_{}"), ("Xb_{}", "X_{}_check")]
    for src, dst in families:
        for i, a in enumerate(keys):
            lhs = s_transform(md10, ch[src.format(a)])
            rhs = sum(sext[i, j] * ch[dst.format(b)] for j, b in enumerate(keys))
            rep.add(f"S {src.format(a)} = sum_b Sext[{a},b] {dst.format('b')}",
                    scalars.approx_eq(lhs, rhs), float(np.abs(lhs - rhs).max()))
    for src, dst in (("chi_5", "Xb_minus"), ("Xb_minus", "chi_5")):
        lhs = s_transform(md10, ch[src])
        rep.add(f"S {src} = {dst}", scalars.approx_eq(lhs, ch[dst]), float(np.abs(lhs - ch[dst]).max()))
    return rep
