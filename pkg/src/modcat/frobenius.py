"""Explicit algebra objects by structure tensors and their axiom checks.

Conventions, for a basis ``e_0..e_{n-1}``:

* ``m[i, j, k]``     ``m(e_i x e_j) = sum_k m[i,j,k] e_k``
* ``eta[k]``         ``eta(1) = sum_k eta[k] e_k``
* ``delta[k, i, j]`` ``Delta(e_k) = sum_ij delta[k,i,j] e_i x e_j``
* ``eps[k]``         ``eps(e_k)``
* ``swap[i, j]``     ``c(e_i x e_j) = swap[i,j] e_j x e_i``
* endomorphisms are row matrices: ``f(e_i) = sum_j f[i, j] e_j``

Residuals are the largest absolute entry of the difference of the two fully
contracted sides; a check passes when the residual is within the global
tolerance.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import scalars
from .cohomology import AbelianGroup, Cocycle2, is_cocycle, trivial_cocycle
from .errors import InputError, InvalidCocycle, NotScalar, NotUnimodular, ShapeMismatch, SwapMissing
from .scalars import cscalar_from_json, cscalar_to_json, to_complex

__all__ = [
    "AlgebraPresentation",
    "AxiomReport",
    "check_algebra",
    "check_coalgebra",
    "check_frobenius",
    "check_special",
    "beta_scalar",
    "star_product",
    "check_swap_commutative",
    "check_bialgebra_identity",
    "check_haploid",
    "algebra_dim",
    "fs_indicator",
    "full_ledger",
    "rescale_coproduct",
    "function_algebra",
    "twisted_group_algebra",
    "unit_algebra",
    "load_presentation",
]


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    m: np.ndarray
    eta: np.ndarray
    delta: np.ndarray
    eps: np.ndarray
    swap: np.ndarray | None = None
    grading: tuple[int, ...] | None = None

    def __post_init__(self):
        for name in ("m", "eta", "delta", "eps", "swap"):
            val = getattr(self, name)
            if val is None:
                continue
            arr = np.array(val, dtype=complex)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.grading is not None:
            object.__setattr__(self, "grading", tuple(int(x) for x in self.grading))
        self._check_shapes()

    @property
    def dim(self) -> int:
        return self.eta.shape[0]

    def _check_shapes(self):
        n = self.eta.shape[0] if self.eta.ndim == 1 else -1
        want = {"m": (n, n, n), "eta": (n,), "delta": (n, n, n), "eps": (n,)}
        if self.swap is not None:
            want["swap"] = (n, n)
        for name, shape in want.items():
            arr = getattr(self, name)
            if arr.shape != shape:
                raise ShapeMismatch(f"{name} has shape {arr.shape}, expected {shape}")
            if not np.all(np.isfinite(arr)):
                raise ShapeMismatch(f"{name} has non-finite entries")
        if self.grading is not None and len(self.grading) != n:
            raise ShapeMismatch(f"grading has {len(self.grading)} entries for dimension {n}")

    def to_json(self) -> dict:
        def enc(a):
            if a.ndim == 0:
                return cscalar_to_json(a)
            return [enc(x) for x in a]

        d = {"dim": self.dim, "m": enc(self.m), "eta": enc(self.eta),
             "delta": enc(self.delta), "eps": enc(self.eps)}
        if self.swap is not None:
            d["swap"] = enc(self.swap)
        if self.grading is not None:
            d["grading"] = list(self.grading)
        return d

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraPresentation":
        def dec(x):
            if isinstance(x, list):
                return [dec(y) for y in x]
            return cscalar_from_json(x)

        try:
            ap = cls(np.array(dec(obj["m"]), dtype=complex), np.array(dec(obj["eta"]), dtype=complex),
                     np.array(dec(obj["delta"]), dtype=complex), np.array(dec(obj["eps"]), dtype=complex),
                     None if obj.get("swap") is None else np.array(dec(obj["swap"]), dtype=complex),
                     obj.get("grading"))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ShapeMismatch):
                raise
            raise InputError(f"malformed algebra presentation: {exc}") from exc
        if "dim" in obj and int(obj["dim"]) != ap.dim:
            raise ShapeMismatch(f"declared dim {obj['dim']} but tensors have dimension {ap.dim}")
        return ap


def load_presentation(path) -> AlgebraPresentation:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return AlgebraPresentation.from_json(obj)


@dataclass
class AxiomReport:
    title: str
    residuals: dict[str, float] = field(default_factory=dict)
    scalars: dict[str, complex] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    def record(self, name: str, residual: float) -> None:
        self.residuals[name] = float(residual)

    def passed(self, name: str) -> bool:
        return self.residuals[name] <= scalars.get_tolerance()

    @property
    def ok(self) -> bool:
        tol = scalars.get_tolerance()
        return all(r <= tol for r in self.residuals.values())

    def __bool__(self) -> bool:
        return self.ok

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        self.residuals.update(other.residuals)
        self.scalars.update(other.scalars)
        self.notes.update(other.notes)
        return self

    def to_dict(self) -> dict:
        tol = scalars.get_tolerance()
        return {
            "title": self.title,
            "passed": self.ok,
            "axioms": {k: {"passed": r <= tol, "residual": r} for k, r in self.residuals.items()},
            "scalars": {k: cscalar_to_json(v) for k, v in self.scalars.items()},
            **({"notes": dict(self.notes)} if self.notes else {}),
        }

    def format(self) -> str:
        tol = scalars.get_tolerance()
        lines = [f"== {self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for k, r in self.residuals.items():
            lines.append(f"  [{'PASS' if r <= tol else 'FAIL'}] {k}  (residual {r:.3e})")
        for k, v in self.scalars.items():
            v = complex(v)
            txt = f"{v.real:.12g}" if abs(v.imag) <= tol else f"{v.real:.12g}{v.imag:+.12g}i"
            lines.append(f"  {k} = {txt}")
        for k, v in self.notes.items():
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)


def _res(a, b) -> float:
    return float(np.abs(np.asarray(a) - np.asarray(b)).max(initial=0.0))


def check_algebra(ap: AlgebraPresentation) -> AxiomReport:
    m, eta, n = ap.m, ap.eta, ap.dim
    rep = AxiomReport("algebra")
    # e_i (e_j e_l)  vs  (e_i e_j) e_l
    left = np.einsum("jla,iak->ijlk", m, m)
    right = np.einsum("ija,alk->ijlk", m, m)
    rep.record("associativity", _res(left, right))
    eye = np.eye(n)
    rep.record("right unit", _res(np.einsum("a,iak->ik", eta, m), eye))
    rep.record("left unit", _res(np.einsum("a,aik->ik", eta, m), eye))
    return rep


def check_coalgebra(ap: AlgebraPresentation) -> AxiomReport:
    d, eps, n = ap.delta, ap.eps, ap.dim
    rep = AxiomReport("co-algebra")
    left = np.einsum("kac,aij->kijc", d, d)    # (Delta x id) Delta
    right = np.einsum("kia,ajc->kijc", d, d)   # (id x Delta) Delta
    rep.record("coassociativity", _res(left, right))
    eye = np.eye(n)
    rep.record("right counit", _res(np.einsum("kij,j->ki", d, eps), eye))
    rep.record("left counit", _res(np.einsum("kij,i->kj", d, eps), eye))
    return rep


def check_frobenius(ap: AlgebraPresentation) -> AxiomReport:
    m, d = ap.m, ap.delta
    rep = AxiomReport("Frobenius")
    mid = np.einsum("abc,cil->abil", m, d)                # Delta m (e_a x e_b)
    left = np.einsum("aij,jbl->abil", d, m)               # (id x m)(Delta x id)
    right = np.einsum("bjl,aji->abil", d, m)              # (m x id)(id x Delta)
    rep.record("Frobenius (id x m)(Delta x id) = Delta m", _res(left, mid))
    rep.record("Frobenius (m x id)(id x Delta) = Delta m", _res(right, mid))
    return rep


def _m_after_delta(ap: AlgebraPresentation) -> np.ndarray:
    return np.einsum("kij,ijl->kl", ap.delta, ap.m)


def check_special(ap: AlgebraPresentation) -> AxiomReport:
    """``m Delta = beta_A id`` and ``eps eta = beta_I``, both invertible.

    Raises :class:`NotScalar` if ``m Delta`` has off-diagonal entries above
    tolerance.
    """
    tol = scalars.get_tolerance()
    md = _m_after_delta(ap)
    off = md - np.diag(np.diag(md))
    off_res = float(np.abs(off).max(initial=0.0))
    if off_res > tol:
        raise NotScalar(f"m o Delta has off-diagonal residual {off_res:.3e}")
    beta_a = complex(md[0, 0])
    beta_i = complex(np.dot(ap.eps, ap.eta))
    rep = AxiomReport("special")
    rep.record("m Delta = beta_A id", _res(md, beta_a * np.eye(ap.dim)))
    rep.record("beta_A invertible", 0.0 if abs(beta_a) > tol else 1.0)
    rep.record("beta_I invertible", 0.0 if abs(beta_i) > tol else 1.0)
    rep.scalars["beta_A"] = beta_a
    rep.scalars["beta_I"] = beta_i
    return rep


def beta_scalar(ap: AlgebraPresentation) -> complex:
    """``eps m Delta eta``."""
    return complex(ap.eta @ _m_after_delta(ap) @ ap.eps)


def star_product(ap: AlgebraPresentation, f, g) -> np.ndarray:
    """``f * g = m (f x g) Delta`` on row-convention endomorphism matrices."""
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    n = ap.dim
    if f.shape != (n, n) or g.shape != (n, n):
        raise ShapeMismatch(f"endomorphisms must be {n} x {n}")
    return np.einsum("kij,ia,jb,abl->kl", ap.delta, f, g, ap.m)


def star_unit(ap: AlgebraPresentation) -> np.ndarray:
    """``eta o eps`` as a row matrix."""
    return np.outer(ap.eps, ap.eta)


def _require_swap(ap: AlgebraPresentation) -> np.ndarray:
    if ap.swap is None:
        raise SwapMissing("presentation has no swap table")
    return ap.swap


def check_swap_commutative(ap: AlgebraPresentation) -> AxiomReport:
    xi = _require_swap(ap)
    m, eta = ap.m, ap.eta
    rep = AxiomReport("swap commutativity")
    rep.record("swap unimodular", float(np.abs(np.abs(xi) - 1.0).max(initial=0.0)))
    # (m x id)(id x c)(c x id) = c (id x m) on e_a x e_b x e_c: m[b,c,d] (xi_ab xi_ac - xi_ad)
    r1 = np.einsum("bcd,abcd->abcd", m, xi[:, :, None, None] * xi[:, None, :, None] - xi[:, None, None, :])
    # (id x m)(c x id)(id x c) = c (m x id): m[a,b,d] (xi_ac xi_bc - xi_dc)
    r2 = np.einsum("abd,abdc->abdc", m,
                   xi[:, None, None, :] * xi[None, :, None, :] - xi[None, None, :, :])
    rep.record("swap natural w.r.t. m (first)", float(np.abs(r1).max(initial=0.0)))
    rep.record("swap natural w.r.t. m (second)", float(np.abs(r2).max(initial=0.0)))
    rep.record("swap fixes unit (right)", float(np.abs(eta[None, :] * (xi - 1)).max(initial=0.0)))
    rep.record("swap fixes unit (left)", float(np.abs(eta[:, None] * (xi - 1)).max(initial=0.0)))
    commuted = np.einsum("ij,jik->ijk", xi, m)
    rep.record("m c = m", _res(commuted, m))
    return rep


def check_bialgebra_identity(ap: AlgebraPresentation) -> AxiomReport:
    """``(m x m)(id x c x id)(Delta x Delta) = beta_A Delta m``."""
    xi = _require_swap(ap)
    special = check_special(ap)
    beta_a = special.scalars["beta_A"]
    d, m = ap.delta, ap.m
    lhs = np.einsum("aij,bkl,jk,ikp,jlq->abpq", d, d, xi, m, m)
    rhs = beta_a * np.einsum("abc,cpq->abpq", m, d)
    rep = AxiomReport("bialgebra identity")
    rep.record("(m x m)(id x c x id)(Delta x Delta) = beta_A Delta m", _res(lhs, rhs))
    rep.scalars["beta_A"] = beta_a
    return rep


def check_haploid(ap: AlgebraPresentation, unit_label: int = 0) -> bool | None:
    """Multiplicity one of the unit label in the grading; None when ungraded."""
    if ap.grading is None:
        return None
    return ap.grading.count(unit_label) == 1


def algebra_dim(ap: AlgebraPresentation, md=None) -> float:
    if ap.grading is not None and md is not None:
        return float(sum(md.dims[g] for g in ap.grading))
    return float(ap.dim)


def fs_indicator(ap: AlgebraPresentation, md=None, dim: float | None = None) -> int:
    """Sign relating ``dim(A)`` to ``beta_A beta_I``.

    ``dim`` overrides the computed categorical dimension.
    """
    special = check_special(ap)
    prod_ = special.scalars["beta_A"] * special.scalars["beta_I"]
    d = algebra_dim(ap, md) if dim is None else dim
    ratio = d / prod_
    if abs(abs(ratio) - 1.0) > scalars.get_tolerance() or abs(ratio.imag) > scalars.get_tolerance():
        raise NotUnimodular(f"dim(A)/(beta_A beta_I) = {ratio}")
    return 1 if ratio.real > 0 else -1


def full_ledger(ap: AlgebraPresentation, md=None) -> AxiomReport:
    """Every applicable axiom check on one presentation."""
    rep = AxiomReport("algebra presentation")
    rep.merge(check_algebra(ap)).merge(check_coalgebra(ap)).merge(check_frobenius(ap))
    try:
        rep.merge(check_special(ap))
    except NotScalar as exc:
        rep.record("m Delta = beta_A id", float("inf"))
        rep.notes["special"] = str(exc)
        return rep
    rep.scalars["beta"] = beta_scalar(ap)
    if ap.swap is not None:
        rep.merge(check_swap_commutative(ap)).merge(check_bialgebra_identity(ap))
    try:
        rep.scalars["nu_A"] = fs_indicator(ap, md)
    except NotUnimodular as exc:
        rep.notes["nu_A"] = str(exc)
    haploid = check_haploid(ap, md.unit if md is not None else 0)
    rep.notes["haploid"] = "not applicable" if haploid is None else str(haploid)
    return rep


def rescale_coproduct(ap: AlgebraPresentation, beta: complex) -> AlgebraPresentation:
    """``(Delta, eps) -> (Delta / beta, beta eps)``."""
    return replace(ap, delta=ap.delta / beta, eps=ap.eps * beta)


def unit_algebra() -> AlgebraPresentation:
    one = np.ones((1, 1, 1))
    return AlgebraPresentation(one, np.ones(1), one, np.ones(1), np.ones((1, 1)))


def function_algebra(size: int) -> AlgebraPresentation:
    """Functions on a finite set: pointwise product, diagonal coproduct, counting counit."""
    if size < 1:
        raise InputError("size must be >= 1")
    diag = np.zeros((size, size, size))
    idx = np.arange(size)
    diag[idx, idx, idx] = 1.0
    ones = np.ones(size)
    return AlgebraPresentation(diag, ones, diag, ones, np.ones((size, size)))


def twisted_group_algebra(g: AbelianGroup, psi: Cocycle2 | None = None,
                          swap=None) -> AlgebraPresentation:
    """``e_a e_b = psi(a,b) e_{ab}`` with the coproduct dual to ``eps(e_a) = delta_{a,0}``.

    ``Delta(e_a) = sum_b psi(a,b) / psi(b,b^-1) e_{ab} x e_{b^-1}``, which gives
    ``beta_A = |G|`` and ``beta_I = 1``. The swap defaults to the trivial
    symmetric braiding of vector spaces.
    """
    psi = trivial_cocycle(g) if psi is None else psi
    if not is_cocycle(g, psi):
        raise InvalidCocycle("psi fails the normalized cocycle identity")
    n = g.order
    mt, inv = g.mul_table, g.inverse
    e = g.index(g.identity)
    val = np.array([[to_complex(p) for p in row] for row in psi.table])
    m = np.zeros((n, n, n), dtype=complex)
    delta = np.zeros((n, n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            m[a, b, mt[a][b]] = val[a, b]
            delta[a, mt[a][b], inv[b]] = val[a, b] / val[b, inv[b]]
    eta = np.zeros(n, dtype=complex)
    eta[e] = 1.0
    eps = eta.copy()
    swap = np.ones((n, n)) if swap is None else swap
    return AlgebraPresentation(m, eta, delta, eps, swap)
