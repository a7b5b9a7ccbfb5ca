"""Exact integer fusion rings.

Structure constants are stored as ``N[i, j, k] = N_{ij}^k``. Nothing here
assumes commutativity; every check is order-sensitive.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import InputError, ShapeMismatch
from .report import ValidationReport

__all__ = ["FusionRing", "check_ring_axioms", "fusion_matrix", "group_ring", "regular_nimrep", "checked_matmul"]

# products of int64 entries are refused once they could exceed this bound
_SAFE = 2**62


def checked_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matrix product that refuses to run if int64 could overflow."""
    inner = a.shape[-1]
    bound = inner * int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0))
    if bound >= _SAFE:
        raise OverflowError("integer matrix product may overflow int64")
    return a @ b


@dataclass(frozen=True, eq=False)
class FusionRing:
    N: np.ndarray
    unit: int
    dual: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        N = np.asarray(self.N)
        if N.ndim != 3 or not (N.shape[0] == N.shape[1] == N.shape[2]):
            raise ShapeMismatch(f"N must be n x n x n, got shape {N.shape}")
        if not np.issubdtype(N.dtype, np.integer):
            if not np.all(N == np.round(N)):
                raise InputError("fusion coefficients must be integers")
        N = N.astype(np.int64)
        N.setflags(write=False)
        object.__setattr__(self, "N", N)
        n = N.shape[0]
        dual = tuple(int(d) for d in self.dual)
        if len(dual) != n or any(not 0 <= d < n for d in dual):
            raise ShapeMismatch("dual must be a permutation of the labels")
        object.__setattr__(self, "dual", dual)
        if not 0 <= self.unit < n:
            raise ShapeMismatch("unit out of range")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != n:
                raise ShapeMismatch("labels length must equal n")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.N.shape[0]

    def name(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.n:
                raise InputError(f"label {label} out of range")
            return int(label)
        if self.labels and label in self.labels:
            return self.labels.index(label)
        if isinstance(label, str) and label.lstrip("-").isdigit():
            return self.index(int(label))
        raise InputError(f"unknown label {label!r}")

    def fuse(self, i: int, j: int) -> dict[int, int]:
        """``i x j`` as a multiset ``{k: N_ij^k}``."""
        return {int(k): int(c) for k, c in enumerate(self.N[i, j]) if c}

    def to_json(self) -> dict:
        d = {"n": self.n, "unit": self.unit, "dual": list(self.dual), "N": self.N.tolist()}
        if self.labels:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_json(cls, obj: dict) -> "FusionRing":
        try:
            N = np.array(obj["N"])
            if "n" in obj and N.shape[:1] != (int(obj["n"]),):
                raise ShapeMismatch(f"declared n={obj['n']} but N has shape {N.shape}")
            return cls(N, int(obj["unit"]), tuple(obj["dual"]), obj.get("labels"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed fusion ring: {exc}") from exc


def fusion_matrix(fr: FusionRing, i) -> np.ndarray:
    """``(N_i)[j, k] = N_{ij}^k``."""
    return np.array(fr.N[fr.index(i)])


def group_ring(table) -> FusionRing:
    """Fusion ring of a finite group from its multiplication table.

    ``table[a][b]`` is the index of ``a*b``; the identity is detected.
    """
    t = np.asarray(table, dtype=int)
    n = t.shape[0]
    unit = next(e for e in range(n) if all(t[e, g] == g and t[g, e] == g for g in range(n)))
    N = np.zeros((n, n, n), dtype=np.int64)
    for a, b in product(range(n), repeat=2):
        N[a, b, t[a, b]] = 1
    dual = tuple(int(np.nonzero(t[a] == unit)[0][0]) for a in range(n))
    return FusionRing(N, unit, dual)


def check_ring_axioms(fr: FusionRing) -> ValidationReport:
    N, n, u = fr.N, fr.n, fr.unit
    rep = ValidationReport("fusion ring axioms")

    neg = np.argwhere(N < 0)
    rep.add("non-negative", len(neg) == 0, counterexample=neg[0].tolist() if len(neg) else None)

    eye = np.eye(n, dtype=np.int64)
    bad = np.argwhere(N[u] != eye)
    rep.add("left unit", len(bad) == 0, counterexample=bad[0].tolist() if len(bad) else None)
    bad = np.argwhere(N[:, u, :] != eye)
    rep.add("right unit", len(bad) == 0, counterexample=bad[0].tolist() if len(bad) else None)

    if n * int(N.max(initial=0)) ** 2 >= 2**62:
        raise OverflowError("fusion coefficients too large for exact int64 associativity check")
    # (i x j) x k  vs  i x (j x k), coefficient of l; one slab per i keeps memory at n^3
    first, worst = None, 0
    for i in range(n):
        lhs = np.tensordot(N[i], N, axes=(1, 0))
        rhs = np.tensordot(N, N[i], axes=(2, 0))
        diff = lhs != rhs
        if diff.any():
            worst = max(worst, int(np.abs(lhs - rhs).max()))
            if first is None:
                first = [i, *np.argwhere(diff)[0].tolist()]
    rep.add("associativity", first is None, deviation=float(worst), counterexample=first)

    dual = np.array(fr.dual)
    expected = np.zeros((n, n), dtype=np.int64)
    expected[np.arange(n), dual] = 1
    bad = np.argwhere(N[:, :, u] != expected)
    rep.add("duality", len(bad) == 0, counterexample=bad[0].tolist() if len(bad) else None)

    bad = [i for i in range(n) if dual[dual[i]] != i]
    rep.add("dual involutive", not bad, counterexample=bad[0] if bad else None)
    return rep


def regular_nimrep(fr: FusionRing):
    """The ring acting on itself; boundaries are the ring labels.

    ``R(i)[a, c] = N_{ai}^c`` (right multiplication), so that
    ``R(i) R(j) = sum_k N_{ij}^k R(k)`` holds without commutativity. For
    commutative rings this is ``fusion_matrix(i)``.
    """
    from .nimrep import NimRep

    R = {i: np.ascontiguousarray(fr.N[:, i, :]) for i in range(fr.n)}
    return NimRep(fr, tuple(fr.name(i) for i in range(fr.n)), R)
