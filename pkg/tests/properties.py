"""Randomized property checks shared by the property tests and the acceptance suite."""
from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from modcat import scalars
from modcat.cohomology import abelian_groups_of_order, cohomology_classes
from modcat.extension import s_transform
from modcat.frobenius import (check_algebra, check_coalgebra, check_frobenius, check_special,
                              rescale_coproduct, twisted_group_algebra)
from modcat.fusion_ring import fusion_matrix, group_ring, regular_nimrep
from modcat.modular_data import drinfeld_double_abelian, su2_level, verlinde_fusion
from modcat.nimrep import dynkin_graph, from_su2_graph, physical_m0, reconstruct_algebra, verify
from modcat.scalars import PhaseQ, to_complex

PROFILE = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

# (graph, level) pairs whose recursion truncates correctly
GRAPHS = ([(f"A{k + 1}", k) for k in range(1, 13)] + [(f"D{n}", 2 * n - 4) for n in range(4, 9)]
          + [("E6", 10), ("E7", 16), ("E8", 28)])
GROUPS = [g for n in range(1, 17) for g in abelian_groups_of_order(n)]
DOUBLE_GROUPS = [(1,), (2,), (3,), (4,), (2, 2), (5,), (2, 3)]


@st.composite
def nimreps(draw):
    kind = draw(st.sampled_from(["graph", "regular", "double"]))
    if kind == "graph":
        name, k = draw(st.sampled_from(GRAPHS))
        return from_su2_graph(dynkin_graph(name), k)
    if kind == "regular":
        return regular_nimrep(verlinde_fusion(su2_level(draw(st.integers(1, 14)))))
    return regular_nimrep(verlinde_fusion(drinfeld_double_abelian(draw(st.sampled_from(DOUBLE_GROUPS)))))


@st.composite
def rings(draw):
    kind = draw(st.sampled_from(["su2", "double", "s3", "cyclic"]))
    if kind == "su2":
        return verlinde_fusion(su2_level(draw(st.integers(1, 14))))
    if kind == "double":
        return verlinde_fusion(drinfeld_double_abelian(draw(st.sampled_from(DOUBLE_GROUPS))))
    if kind == "s3":
        return group_ring(oracles.s3_table())
    n = draw(st.integers(1, 9))
    return group_ring([[(a + b) % n for b in range(n)] for a in range(n)])


@st.composite
def group_algebras(draw):
    g = draw(st.sampled_from(GROUPS))
    classes = cohomology_classes(g)
    return g, twisted_group_algebra(g, classes[draw(st.integers(0, len(classes) - 1))])


phases = st.builds(lambda d, n: PhaseQ(n % d, d), st.integers(1, 60), st.integers(0, 10**6))
nonzero_complex = st.builds(complex, st.floats(0.2, 5), st.floats(-3, 3))


@PROFILE
@given(nimreps())
def prop_domination(nim):
    m0 = physical_m0(nim)
    if m0 is None:
        return
    for X, mat in nim.R.items():
        d = np.diag(mat)
        assert np.all(d >= d[m0]), (X, d.tolist(), m0)


@PROFILE
@given(rings())
def prop_dual_is_transpose(fr):
    for i in range(fr.n):
        assert np.array_equal(fusion_matrix(fr, fr.dual[i]), fusion_matrix(fr, i).T)
    nim = regular_nimrep(fr)
    assert verify(nim).ok
    for i in range(fr.n):
        assert np.array_equal(nim.R[fr.dual[i]], nim.R[i].T)


@PROFILE
@given(nimreps())
def prop_haploid_self_dual(nim):
    assert verify(nim).ok
    alg = reconstruct_algebra(nim)
    assert alg.get(nim.ring.unit) == 1
    for X, mult in alg.items():
        assert alg.get(nim.ring.dual[X]) == mult


@PROFILE
@given(group_algebras(), nonzero_complex)
def prop_rescaling_covariance(ga, beta):
    g, ap = ga
    r = rescale_coproduct(ap, beta)
    checks = (check_algebra, check_coalgebra, check_frobenius)
    for check in checks:
        assert check(ap).ok == check(r).ok
    s0, s1 = check_special(ap), check_special(r)
    assert s0.ok == s1.ok
    b0a, b0i = s0.scalars["beta_A"], s0.scalars["beta_I"]
    b1a, b1i = s1.scalars["beta_A"], s1.scalars["beta_I"]
    assert abs(b1a - b0a / beta) <= 1e-9 * abs(b0a)
    assert abs(b1i - beta * b0i) <= 1e-9 * abs(beta)
    assert abs(b1a * b1i - b0a * b0i) <= 1e-9 * abs(b0a * b0i)


@PROFILE
@given(st.integers(1, 20), st.integers(0, 2**32 - 1))
def prop_s_transform_isometry(k, seed):
    md = su2_level(k) if seed % 3 else drinfeld_double_abelian(DOUBLE_GROUPS[seed % len(DOUBLE_GROUPS)])
    rng = np.random.default_rng(seed)
    v = rng.normal(size=md.n) + 1j * rng.normal(size=md.n)
    w = s_transform(md, v)
    assert abs(np.linalg.norm(w) - np.linalg.norm(v)) <= scalars.get_tolerance() * max(1.0, np.linalg.norm(v))


@PROFILE
@given(st.sampled_from([g for g in GRAPHS if g[1] <= 12]))
def prop_simple_current_relation(graph):
    name, k = graph
    nim = from_su2_graph(dynkin_graph(name), k)
    R = nim.R
    for a in range(k + 1):
        assert np.array_equal(R[a], R[k - a] @ R[k])
        for b in range(k + 1):
            assert np.array_equal(R[a] @ R[b], R[b] @ R[a])


@PROFILE
@given(phases, phases)
def prop_phase_homomorphism(p, q):
    assert abs(to_complex(p * q) - to_complex(p) * to_complex(q)) <= scalars.get_tolerance()
    assert p ** p.den == PhaseQ(0, 1)


@PROFILE
@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def prop_approx_eq_reflexive_symmetric(a, b):
    assert scalars.approx_eq(a, a)
    assert scalars.approx_eq(a, b) == scalars.approx_eq(b, a)


ACCEPTANCE_PROPERTIES = {
    "domination inequality": prop_domination,
    "R(dual) = transpose": prop_dual_is_transpose,
    "haploidity and self-duality": prop_haploid_self_dual,
    "coproduct rescaling covariance": prop_rescaling_covariance,
    "s_transform isometry": prop_s_transform_isometry,
}
