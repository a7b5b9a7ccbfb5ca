"""NIM-reps of fusion rings: verification, su(2) graph construction, and the
algebra, boundary and entropy data that can be read off them.

All matrix arithmetic is exact int64 with overflow guards; floating point
enters only through :func:`boundary_dims` and :func:`perron_dims`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from pathlib import Path

import numpy as np

from .errors import InputError, NegativeEntry, NoPhysicalM0, ShapeMismatch, TruncationFailure
from .fusion_ring import FusionRing, checked_matmul, fusion_matrix
from .report import ValidationReport

__all__ = [
    "NimRep",
    "verify",
    "from_su2_graph",
    "reconstruct_algebra",
    "physical_m0",
    "branching",
    "boundary_fusion_check",
    "boundary_dims",
    "perron_dims",
    "path_graph",
    "dynkin_graph",
    "load_nimrep",
]


@dataclass(frozen=True, eq=False)
class NimRep:
    """One ``b x b`` non-negative integer matrix per ring label.

    Rows and columns index boundaries; ``R[X][m, n]`` is the multiplicity of
    boundary ``n`` in ``X`` acting on boundary ``m``.
    """

    ring: FusionRing
    boundaries: tuple[str, ...]
    R: dict[int, np.ndarray]

    def __post_init__(self):
        b = len(self.boundaries)
        object.__setattr__(self, "boundaries", tuple(str(x) for x in self.boundaries))
        R = {}
        for label, mat in self.R.items():
            i = self.ring.index(label)
            arr = np.asarray(mat)
            if arr.shape != (b, b):
                raise ShapeMismatch(f"R({label}) has shape {arr.shape}, expected ({b}, {b})")
            if not np.issubdtype(arr.dtype, np.integer):
                if not np.all(arr == np.round(arr)):
                    raise InputError(f"R({label}) has non-integer entries")
            arr = arr.astype(np.int64)
            arr.setflags(write=False)
            R[i] = arr
        missing = [i for i in range(self.ring.n) if i not in R]
        if missing:
            raise ShapeMismatch(f"no matrix for ring labels {missing}")
        object.__setattr__(self, "R", dict(sorted(R.items())))

    @property
    def b(self) -> int:
        return len(self.boundaries)

    def boundary_index(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            return int(name)
        if name in self.boundaries:
            return self.boundaries.index(name)
        raise InputError(f"unknown boundary {name!r}")

    def renamed(self, names) -> "NimRep":
        return NimRep(self.ring, tuple(names), self.R)

    def to_json(self, inline_ring: bool = True) -> dict:
        return {
            "ring": self.ring.to_json() if inline_ring else None,
            "boundaries": list(self.boundaries),
            "R": {self.ring.name(i): m.tolist() for i, m in self.R.items()},
        }

    @classmethod
    def from_json(cls, obj: dict, ring: FusionRing | None = None, base: Path | None = None) -> "NimRep":
        try:
            if ring is None:
                r = obj["ring"]
                if isinstance(r, str):
                    path = Path(r) if base is None else base / r
                    r = json.loads(path.read_text())
                ring = FusionRing.from_json(r)
            return cls(ring, tuple(obj["boundaries"]), {k: np.array(v) for k, v in obj["R"].items()})
        except (KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
            raise InputError(f"malformed NIM-rep: {exc}") from exc


def load_nimrep(path, ring: FusionRing | None = None) -> NimRep:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return NimRep.from_json(obj, ring, path.parent)


def verify(nim: NimRep) -> ValidationReport:
    fr, R, b = nim.ring, nim.R, nim.b
    rep = ValidationReport("NIM-rep")

    neg = [(i, *np.argwhere(m < 0)[0].tolist()) for i, m in R.items() if (m < 0).any()]
    rep.add("non-negative", not neg, counterexample=neg[0] if neg else None)

    eye = np.eye(b, dtype=np.int64)
    bad = np.argwhere(R[fr.unit] != eye)
    rep.add("R(unit) = 1", len(bad) == 0, counterexample=bad[0].tolist() if len(bad) else None)

    first = None
    for i in range(fr.n):
        diff = np.argwhere(R[fr.dual[i]] != R[i].T)
        if len(diff):
            first = (i, *diff[0].tolist())
            break
    rep.add("R(dual X) = R(X)^t", first is None, counterexample=first)

    stack = np.stack([R[k] for k in range(fr.n)])
    first, worst = None, 0
    for i, j in product(range(fr.n), repeat=2):
        lhs = checked_matmul(R[i], R[j])
        rhs = np.tensordot(fr.N[i, j], stack, axes=(0, 0))
        if not np.array_equal(lhs, rhs):
            worst = max(worst, int(np.abs(lhs - rhs).max()))
            if first is None:
                first = (i, j, *np.argwhere(lhs != rhs)[0].tolist())
    rep.add("R(X) R(Y) = sum N_XY^Z R(Z)", first is None, deviation=float(worst), counterexample=first)
    return rep


def path_graph(nodes: int) -> np.ndarray:
    A = np.zeros((nodes, nodes), dtype=np.int64)
    for a in range(nodes - 1):
        A[a, a + 1] = A[a + 1, a] = 1
    return A


def dynkin_graph(kind: str) -> np.ndarray:
    """Adjacency of a simply-laced Dynkin diagram: ``A<n>``, ``D<n>``, ``E6``, ``E7``, ``E8``.

    ``D<n>`` is the path on n-1 nodes with an extra node on the second-to-last;
    ``E<n>`` is the path on n-1 nodes with an extra node on the third.
    """
    kind = kind.upper()
    fam, size = kind[0], int(kind[1:])
    if fam == "A":
        return path_graph(size)
    A = np.zeros((size, size), dtype=np.int64)
    A[: size - 1, : size - 1] = path_graph(size - 1)
    if fam == "D" and size >= 4:
        hook = size - 3
    elif fam == "E" and size in (6, 7, 8):
        hook = 2
    else:
        raise InputError(f"unknown Dynkin diagram {kind}")
    A[hook, size - 1] = A[size - 1, hook] = 1
    return A


def _su2_ring(k: int) -> FusionRing:
    from .modular_data import su2_level

    return su2_level(k).fusion


def from_su2_graph(adjacency, k: int, ring: FusionRing | None = None,
                   boundaries=None) -> NimRep:
    """NIM-rep of su(2) level k from ``R(1) = adjacency`` via ``R(l+1) = R(1) R(l) - R(l-1)``."""
    A = np.asarray(adjacency)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeMismatch("adjacency must be square")
    if not np.array_equal(A, A.T) or not np.all((A == 0) | (A == 1)):
        raise InputError("adjacency must be a symmetric 0/1 matrix")
    A = A.astype(np.int64)
    b = A.shape[0]
    R = [np.eye(b, dtype=np.int64), A]
    for lam in range(1, k + 1):
        nxt = checked_matmul(A, R[lam]) - R[lam - 1]
        if lam + 1 <= k and (nxt < 0).any():
            raise NegativeEntry(f"R({lam + 1}) has a negative entry; graph incompatible with level {k}")
        R.append(nxt)
    if R[k + 1].any():
        raise TruncationFailure(f"R({k + 1}) is not zero; graph incompatible with level {k}")
    ring = _su2_ring(k) if ring is None else ring
    names = tuple(str(x + 1) for x in range(b)) if boundaries is None else tuple(boundaries)
    return NimRep(ring, names, {lam: R[lam] for lam in range(k + 1)})


def reconstruct_algebra(nim: NimRep) -> dict[int, int]:
    """``A = sum_X min_m R(X)_mm X`` as ``{label: multiplicity}``."""
    out = {}
    for i, m in nim.R.items():
        mult = int(np.diag(m).min())
        if mult:
            out[i] = mult
    return out


def physical_m0(nim: NimRep) -> int | None:
    """Lowest boundary at which every diagonal minimum is attained, if any."""
    diags = np.stack([np.diag(m) for m in nim.R.values()])
    ok = np.all(diags == diags.min(axis=1, keepdims=True), axis=0)
    hits = np.nonzero(ok)[0]
    return int(hits[0]) if len(hits) else None


def physical_m0_candidates(nim: NimRep) -> list[int]:
    diags = np.stack([np.diag(m) for m in nim.R.values()])
    ok = np.all(diags == diags.min(axis=1, keepdims=True), axis=0)
    return [int(x) for x in np.nonzero(ok)[0]]


def branching(nim: NimRep, m0: int) -> dict[int, dict[int, int]]:
    """For each boundary n, ``{X: R(X)[m0, n]}`` (nonzero entries only)."""
    m0 = nim.boundary_index(m0)
    out = {}
    for n in range(nim.b):
        out[n] = {i: int(m[m0, n]) for i, m in nim.R.items() if m[m0, n]}
    return out


def boundary_fusion_check(nim: NimRep, m0: int, candidate: FusionRing) -> ValidationReport:
    """``R(X) = sum_p R(X)[m0, p] Ntilde_p`` for every ring label X."""
    m0 = nim.boundary_index(m0)
    if candidate.n != nim.b:
        raise ShapeMismatch(f"candidate ring has {candidate.n} labels for {nim.b} boundaries")
    rep = ValidationReport("boundary fusion consistency")
    rep.add("candidate unit is m0", candidate.unit == m0, detail=f"unit={candidate.unit}, m0={m0}")
    cand = np.stack([fusion_matrix(candidate, p) for p in range(candidate.n)])
    first = None
    for i, m in nim.R.items():
        predicted = np.tensordot(m[m0], cand, axes=(0, 0))
        if not np.array_equal(predicted, m):
            first = (nim.ring.name(i), *np.argwhere(predicted != m)[0].tolist())
            break
    rep.add("R(X) = sum_p b_X^p N_p", first is None, counterexample=first)
    return rep


def boundary_dims(nim: NimRep, md, m0: int | None = None) -> np.ndarray:
    """``Dim(n) = sum_X b_X^n d_X / sum_X b_X^{m0} d_X``."""
    if m0 is None:
        m0 = physical_m0(nim)
        if m0 is None:
            raise NoPhysicalM0("no boundary attains all diagonal minima")
    d = np.asarray(md.dims, dtype=float)
    row = np.stack([nim.R[i][m0] for i in range(nim.ring.n)])  # [X, n]
    weights = d @ row
    return weights / weights[m0]


def perron_dims(nim: NimRep, generator, m0: int) -> np.ndarray:
    """Perron eigenvector of ``R(generator)``, normalized to 1 at m0."""
    A = nim.R[nim.ring.index(generator)].astype(float)
    vals, vecs = np.linalg.eigh((A + A.T) / 2)
    v = vecs[:, np.argmax(vals)]
    v = v / v[m0]
    return v
