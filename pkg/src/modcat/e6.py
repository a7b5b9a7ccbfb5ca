"""Golden data for the E6 boundary theory of su(2) level 10, and a one-shot
consistency run over all of it.

Boundary names: ``o, v, s`` (hatted) and ``oc, vc, sc`` (checked).
"""
from __future__ import annotations

import hashlib
import json
import math

import numpy as np

from . import scalars
from .extension import E6_SEXT, E6_SEXT_ORDER, e6_character_set, e6_closure_check, orbit_sum_matrix, unitarize
from .fusion_ring import FusionRing, check_ring_axioms
from .modular_data import su2_level, validate
from .nimrep import (NimRep, boundary_dims, boundary_fusion_check, branching, dynkin_graph, from_su2_graph,
                     perron_dims, physical_m0, physical_m0_candidates, reconstruct_algebra, verify)
from .report import ValidationReport

__all__ = [
    "BOUNDARIES",
    "BRANCHING",
    "FUSION_TABLE",
    "EXPECTED_DIMS",
    "golden_fusion_ring",
    "golden_checksum",
    "verify_checksum",
    "e6_nimrep",
    "run_all_checks",
]

LEVEL = 10
BOUNDARIES = ("o", "v", "s", "oc", "vc", "sc")

# boundary -> su(2) labels it restricts to
BRANCHING = {
    "o": (0, 6),
    "v": (4, 10),
    "s": (3, 7),
    "oc": (1, 5, 7),
    "vc": (3, 5, 9),
    "sc": (2, 4, 6, 8),
}

# the 15 products not involving the unit "o"; commutative
FUSION_TABLE = {
    ("v", "v"): {"o": 1},
    ("v", "s"): {"s": 1},
    ("s", "s"): {"o": 1, "v": 1},
    ("v", "oc"): {"vc": 1},
    ("v", "vc"): {"oc": 1},
    ("v", "sc"): {"sc": 1},
    ("s", "oc"): {"sc": 1},
    ("s", "vc"): {"sc": 1},
    ("s", "sc"): {"oc": 1, "vc": 1},
    ("oc", "oc"): {"o": 1, "sc": 1},
    ("oc", "vc"): {"v": 1, "sc": 1},
    ("oc", "sc"): {"s": 1, "oc": 1, "vc": 1},
    ("vc", "vc"): {"o": 1, "sc": 1},
    ("vc", "sc"): {"s": 1, "oc": 1, "vc": 1},
    ("sc", "sc"): {"o": 1, "v": 1, "sc": 2},
}

_R3 = math.sqrt(3)
EXPECTED_DIMS = {
    "o": 1.0,
    "v": 1.0,
    "s": math.sqrt(2),
    "oc": (math.sqrt(6) + math.sqrt(2)) / 2,
    "vc": (math.sqrt(6) + math.sqrt(2)) / 2,
    "sc": 1 + _R3,
}

QDIM_6 = 2 + _R3

_CHECKSUM = "5324ef78e7b98ac8f33e3b9e0116970a2299598ff14bed1168769d617b39ddd0"


def _golden_payload() -> dict:
    return {
        "boundaries": list(BOUNDARIES),
        "branching": {k: list(v) for k, v in BRANCHING.items()},
        "fusion": [[a, b, sorted(c.items())] for (a, b), c in sorted(FUSION_TABLE.items())],
        "sext": [[float(x).hex() for x in row] for row in E6_SEXT],
        "sext_order": list(E6_SEXT_ORDER),
        "D": float(QDIM_6).hex(),
        "characters": {k: [float(x).hex() for x in v]
                       for k, v in sorted(e6_character_set(su2_level(LEVEL)).items())},
    }


def golden_checksum() -> str:
    blob = json.dumps(_golden_payload(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def verify_checksum() -> bool:
    return golden_checksum() == _CHECKSUM


def golden_fusion_ring(table: dict | None = None) -> FusionRing:
    """6 x 6 x 6 boundary fusion constants, ``o`` as unit, all labels self-dual."""
    table = FUSION_TABLE if table is None else table
    idx = {b: i for i, b in enumerate(BOUNDARIES)}
    n = len(BOUNDARIES)
    N = np.zeros((n, n, n), dtype=np.int64)
    for b in BOUNDARIES:
        N[0, idx[b], idx[b]] = N[idx[b], 0, idx[b]] = 1
    for (a, b), prod_ in table.items():
        for c, mult in prod_.items():
            N[idx[a], idx[b], idx[c]] = N[idx[b], idx[a], idx[c]] = mult
    return FusionRing(N, 0, tuple(range(n)), BOUNDARIES)


def _name_boundaries(nim: NimRep, m0: int) -> list[str]:
    """Assign golden names by matching each boundary's branching to the golden table."""
    lookup = {tuple(sorted(v)): k for k, v in BRANCHING.items()}
    names = []
    for n, mult in branching(nim, m0).items():
        if any(c != 1 for c in mult.values()):
            raise ValueError(f"boundary {n} has branching multiplicities above one")
        key = tuple(sorted(mult))
        if key not in lookup:
            raise ValueError(f"boundary {n} branching {key} matches no golden boundary")
        names.append(lookup[key])
    return names


def e6_nimrep() -> tuple[NimRep, int]:
    """The E6 NIM-rep with golden boundary names, and its m0 index."""
    nim = from_su2_graph(dynkin_graph("E6"), LEVEL)
    m0 = physical_m0(nim)
    return nim.renamed(_name_boundaries(nim, m0)), m0


def run_all_checks(fusion_table: dict | None = None) -> ValidationReport:
    rep = ValidationReport("E6 boundary theory of su(2) level 10")
    rep.add("golden checksum", verify_checksum(), detail=golden_checksum()[:16])

    md = su2_level(LEVEL)
    v = validate(md)
    rep.add("su(2) level 10 datum valid", v.ok, detail=", ".join(c.name for c in v.failed()))
    rep.add("dim(6) = 2+sqrt3", abs(md.dims[6] - QDIM_6) <= 1e-12, abs(md.dims[6] - QDIM_6))

    raw = from_su2_graph(dynkin_graph("E6"), LEVEL)
    vr = verify(raw)
    rep.add("E6 graph NIM-rep verifies", vr.ok, detail=", ".join(c.name for c in vr.failed()))

    alg = reconstruct_algebra(raw)
    rep.add("reconstructed algebra = 0 + 6", alg == {0: 1, 6: 1}, detail=str(alg))

    m0 = physical_m0(raw)
    rep.add("physical m0 exists", m0 is not None,
            detail=f"m0 = node {None if m0 is None else raw.boundaries[m0]}, "
                   f"candidates {[raw.boundaries[c] for c in physical_m0_candidates(raw)]}")
    if m0 is None:
        return rep

    try:
        names = _name_boundaries(raw, m0)
        matched = sorted(names) == sorted(BOUNDARIES)
    except ValueError as exc:
        names, matched = [], False
        rep.add("branching matches golden table", False, detail=str(exc))
    if names:
        rep.add("branching matches golden table", matched, detail=str(dict(zip(raw.boundaries, names))))
        rep.add("m0 is o", names[m0] == "o")
    if not matched:
        return rep
    nim = raw.renamed(names)

    # reorder boundaries into golden order so m0 is boundary 0
    order = [names.index(b) for b in BOUNDARIES]
    perm = NimRep(nim.ring, BOUNDARIES, {i: m[np.ix_(order, order)] for i, m in nim.R.items()})
    ring = golden_fusion_ring(fusion_table)
    ra = check_ring_axioms(ring)
    rep.add("golden boundary ring axioms", ra.ok, detail=", ".join(c.name for c in ra.failed()))
    bf = boundary_fusion_check(perm, 0, ring)
    rep.add("boundary fusion consistency", bf.ok,
            detail="; ".join(f"{c.name} {c.counterexample}" for c in bf.failed()))

    dims = boundary_dims(perm, md, 0)
    dev = max(abs(dims[i] - EXPECTED_DIMS[b]) for i, b in enumerate(BOUNDARIES))
    rep.add("boundary dims (1, 1, sqrt2, ...)", dev <= 1e-6, dev)
    pdims = perron_dims(perm, 1, 0)
    dev = float(np.abs(dims - pdims).max())
    rep.add("boundary dims agree with Perron vector", dev <= 1e-6, dev)

    cl = e6_closure_check(md)
    rep.add("character closure (11 identities)", cl.ok,
            max(c.deviation for c in cl.checks), detail=f"{sum(c.passed for c in cl.checks)}/{len(cl.checks)}")

    blocks = [BRANCHING[b] for b in E6_SEXT_ORDER]
    M, _ = unitarize(orbit_sum_matrix(md.S, blocks))
    dev = float(np.abs(M - E6_SEXT).max())
    rep.add("golden Sext matches unitarized orbit sums", dev <= scalars.get_tolerance(), dev)
    S = E6_SEXT
    dev = max(float(np.abs(S - S.T).max()), float(np.abs(S @ S.T - np.eye(3)).max()),
              float(np.abs(S @ S - np.eye(3)).max()))
    rep.add("golden Sext symmetric, unitary, S^2 = 1", dev <= 1e-12, dev)
    rep.data["boundary_dims"] = {b: float(dims[i]) for i, b in enumerate(BOUNDARIES)}
    rep.data["algebra"] = {str(k): v for k, v in alg.items()}
    return rep
