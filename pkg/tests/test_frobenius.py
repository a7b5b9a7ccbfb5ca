import json
from dataclasses import replace

import numpy as np
import pytest

import oracles
from modcat import scalars
from modcat.cohomology import AbelianGroup, abelian_groups_of_order, cohomology_classes, trivial_cocycle
from modcat.errors import InvalidCocycle, NotScalar, NotUnimodular, ShapeMismatch, SwapMissing
from modcat.frobenius import (AlgebraPresentation, algebra_dim, beta_scalar, check_algebra,
                              check_bialgebra_identity, check_coalgebra, check_frobenius, check_haploid,
                              check_special, check_swap_commutative, fs_indicator, full_ledger,
                              function_algebra, load_presentation, rescale_coproduct, star_product, star_unit,
                              twisted_group_algebra, unit_algebra)
from modcat.modular_data import drinfeld_double_z2
from modcat.scalars import PhaseQ

KLEIN = AbelianGroup((2, 2))


def _nontrivial_klein():
    return twisted_group_algebra(KLEIN, cohomology_classes(KLEIN)[1])


def _all_pass(rep):
    return rep.ok and all(r <= scalars.get_tolerance() for r in rep.residuals.values())


# --- algebra / coalgebra / Frobenius ------------------------------------------

def test_function_algebra_is_algebra():
    assert _all_pass(check_algebra(function_algebra(3)))


def test_twisted_klein_is_associative_by_bruteforce():
    ap = _nontrivial_klein()
    assert check_algebra(ap).ok
    assert oracles.contract_associativity(ap.m.tolist()) <= 1e-12


def test_perturbed_product_fails_with_matching_residual():
    ap = function_algebra(3)
    m = ap.m.copy()
    m[0, 0, 0] += 1e-3
    rep = check_algebra(replace(ap, m=m))
    assert not rep.ok
    assert max(rep.residuals.values()) == pytest.approx(1e-3, rel=1e-6)
    # an off-diagonal perturbation breaks associativity itself
    m = ap.m.copy()
    m[0, 1, 0] += 1e-3
    rep = check_algebra(replace(ap, m=m))
    assert not rep.passed("associativity")
    assert 5e-4 <= rep.residuals["associativity"] <= 5e-3
    assert rep.residuals["associativity"] == pytest.approx(oracles.contract_associativity(m.tolist()), rel=1e-9)


def test_coalgebra_examples():
    assert check_coalgebra(function_algebra(3)).ok
    assert check_coalgebra(twisted_group_algebra(AbelianGroup((4,)), None)).ok
    ap = function_algebra(3)
    rep = check_coalgebra(replace(ap, delta=np.zeros_like(ap.delta)))
    assert not rep.passed("right counit") and not rep.passed("left counit")


def test_frobenius_examples():
    assert check_frobenius(twisted_group_algebra(AbelianGroup((3,)))).ok
    assert check_frobenius(function_algebra(4)).ok


def test_group_product_with_diagonal_coproduct_fails_frobenius():
    ap = twisted_group_algebra(AbelianGroup((3,)))
    diag = np.zeros((3, 3, 3))
    for j in range(3):
        diag[j, j, j] = 1
    rep = check_frobenius(replace(ap, delta=diag))
    assert not rep.ok


# --- special ----------------------------------------------------------------

@pytest.mark.parametrize("orders", [(2,), (3,), (2, 2), (4,), (2, 4), (3, 3)])
def test_twisted_group_algebra_parameters(orders):
    g = AbelianGroup(orders)
    for psi in cohomology_classes(g):
        rep = check_special(twisted_group_algebra(g, psi))
        assert rep.ok
        assert rep.scalars["beta_A"] == pytest.approx(g.order)
        assert rep.scalars["beta_I"] == pytest.approx(1)


@pytest.mark.parametrize("size", range(1, 9))
def test_function_algebra_parameters(size):
    ap = function_algebra(size)
    for check in (check_algebra, check_coalgebra, check_frobenius):
        assert check(ap).ok
    rep = check_special(ap)
    assert rep.ok
    assert (rep.scalars["beta_A"], rep.scalars["beta_I"]) == (pytest.approx(1), pytest.approx(size))


def test_unit_algebra():
    ap = unit_algebra()
    assert full_ledger(ap).ok
    rep = check_special(ap)
    assert (rep.scalars["beta_A"], rep.scalars["beta_I"]) == (1, 1)
    assert fs_indicator(ap) == 1
    assert beta_scalar(ap) == 1


def test_non_scalar_m_delta_raises():
    ap = function_algebra(2)
    delta = ap.delta.copy()
    delta[0, 1, 1] = 0.5
    with pytest.raises(NotScalar):
        check_special(replace(ap, delta=delta))
    rep = full_ledger(replace(ap, delta=delta))
    assert not rep.ok and "special" in rep.notes


def test_zero_counit_not_invertible():
    ap = function_algebra(2)
    rep = check_special(replace(ap, eps=np.zeros(2)))
    assert not rep.passed("beta_I invertible")


# --- beta and star product ----------------------------------------------------

def test_beta_scalar_examples():
    assert beta_scalar(twisted_group_algebra(AbelianGroup((5,)))) == pytest.approx(5)
    assert beta_scalar(function_algebra(3)) == pytest.approx(3)
    assert beta_scalar(unit_algebra()) == pytest.approx(1)


def test_star_product_unit():
    rng = np.random.default_rng(0)
    for ap in (function_algebra(3), _nontrivial_klein()):
        g = rng.normal(size=(ap.dim, ap.dim)) + 1j * rng.normal(size=(ap.dim, ap.dim))
        u = star_unit(ap)
        assert np.abs(star_product(ap, u, g) - g).max() <= 1e-12
        assert np.abs(star_product(ap, g, u) - g).max() <= 1e-12


def test_star_identity_squares_to_beta_a():
    g = AbelianGroup((2, 3))
    ap = twisted_group_algebra(g)
    eye = np.eye(g.order)
    assert np.abs(star_product(ap, eye, eye) - g.order * eye).max() <= 1e-12


def test_star_product_associative_on_random_triples():
    rng = np.random.default_rng(1)
    for ap in (function_algebra(4), _nontrivial_klein(), twisted_group_algebra(AbelianGroup((3,)))):
        n = ap.dim
        for _ in range(5):
            f, g, h = (rng.normal(size=(n, n)) for _ in range(3))
            lhs = star_product(ap, star_product(ap, f, g), h)
            rhs = star_product(ap, f, star_product(ap, g, h))
            assert np.abs(lhs - rhs).max() <= scalars.get_tolerance() * max(1, np.abs(lhs).max())


def test_star_product_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        star_product(function_algebra(2), np.eye(3), np.eye(3))


# --- swap, bialgebra ---------------------------------------------------------

def test_trivial_group_algebra_is_commutative():
    ap = twisted_group_algebra(AbelianGroup((2, 3)))
    assert check_swap_commutative(ap).ok
    assert check_bialgebra_identity(ap).ok


def test_fermionic_sign_breaks_commutativity():
    ap = twisted_group_algebra(AbelianGroup((2,)), swap=np.array([[1, 1], [1, -1]]))
    assert not check_swap_commutative(ap).passed("m c = m")


def test_nontrivial_klein_cocycle():
    ap = _nontrivial_klein()
    for check in (check_algebra, check_coalgebra, check_frobenius, check_special):
        assert check(ap).ok
    assert not check_swap_commutative(ap).passed("m c = m")
    assert not check_bialgebra_identity(ap).ok


def test_function_algebra_bialgebra_identity():
    for size in (1, 2, 3, 5):
        assert check_bialgebra_identity(function_algebra(size)).ok
        assert check_swap_commutative(function_algebra(size)).ok


def test_swap_missing():
    ap = replace(function_algebra(2), swap=None)
    with pytest.raises(SwapMissing):
        check_swap_commutative(ap)
    with pytest.raises(SwapMissing):
        check_bialgebra_identity(ap)
    assert "m c = m" not in full_ledger(ap).residuals


def test_non_unimodular_swap_reported():
    ap = twisted_group_algebra(AbelianGroup((2,)), swap=np.array([[1, 1], [1, 2]]))
    assert not check_swap_commutative(ap).passed("swap unimodular")


# --- Frobenius-Schur indicator and haploidity ----------------------------------

def test_fs_indicator_group_algebras():
    for orders in ((2,), (3,), (2, 2), (4,), (2, 4)):
        g = AbelianGroup(orders)
        for psi in cohomology_classes(g):
            assert fs_indicator(twisted_group_algebra(g, psi)) == 1


def test_fs_indicator_synthetic_negative():
    ap = function_algebra(3)
    signed = replace(ap, eps=-ap.eps)
    assert check_special(signed).scalars["beta_I"] == pytest.approx(-3)
    assert fs_indicator(signed) == -1
    assert fs_indicator(ap, dim=-3.0) == -1


def test_fs_indicator_not_unimodular():
    with pytest.raises(NotUnimodular):
        fs_indicator(function_algebra(3), dim=2.0)


def test_graded_dimension_and_haploidity():
    md = drinfeld_double_z2()
    ap = replace(twisted_group_algebra(AbelianGroup((2,))), grading=(0, 1))
    assert algebra_dim(ap, md) == pytest.approx(2)
    assert check_haploid(ap, md.unit) is True
    assert fs_indicator(ap, md) == 1
    assert full_ledger(ap, md).notes["haploid"] == "True"
    doubled = replace(function_algebra(2), grading=(0, 0))
    assert check_haploid(doubled, 0) is False
    assert check_haploid(function_algebra(2)) is None
    assert full_ledger(function_algebra(2)).notes["haploid"] == "not applicable"


# --- constructors -------------------------------------------------------------

def test_trivial_group_is_unit_algebra():
    ap = twisted_group_algebra(AbelianGroup((1,)))
    u = unit_algebra()
    assert ap.dim == 1
    for a, b in ((ap.m, u.m), (ap.eta, u.eta), (ap.delta, u.delta), (ap.eps, u.eps)):
        assert np.allclose(a, b)
    assert np.allclose(function_algebra(1).m, u.m)


def test_z2_group_algebra_dimensions():
    ap = twisted_group_algebra(AbelianGroup((2,)))
    assert ap.dim == 2
    rep = check_special(ap)
    assert (rep.scalars["beta_A"], rep.scalars["beta_I"]) == (pytest.approx(2), pytest.approx(1))


def test_invalid_cocycle_rejected():
    g = AbelianGroup((2, 2))
    t = [list(r) for r in trivial_cocycle(g).table]
    t[1][2] = PhaseQ(1, 2)
    from modcat.cohomology import Cocycle2

    with pytest.raises(InvalidCocycle):
        twisted_group_algebra(g, Cocycle2(g, tuple(map(tuple, t))))


def test_all_groups_up_to_16_pass_core_axioms():
    for n in range(1, 17):
        for g in abelian_groups_of_order(n):
            for psi in cohomology_classes(g):
                ap = twisted_group_algebra(g, psi)
                rep = check_algebra(ap).merge(check_coalgebra(ap)).merge(check_frobenius(ap))
                rep.merge(check_special(ap))
                assert rep.ok, (g.orders, rep.format())
                assert rep.scalars["beta_A"] == pytest.approx(g.order)
                assert rep.scalars["beta_I"] == pytest.approx(1)
                assert beta_scalar(ap) == pytest.approx(rep.scalars["beta_A"] * rep.scalars["beta_I"])


def test_rescaling_covariance_examples():
    ap = twisted_group_algebra(AbelianGroup((3,)))
    r = rescale_coproduct(ap, 2.5)
    s0, s1 = check_special(ap).scalars, check_special(r).scalars
    assert s1["beta_A"] == pytest.approx(s0["beta_A"] / 2.5)
    assert s1["beta_I"] == pytest.approx(s0["beta_I"] * 2.5)
    assert full_ledger(r).ok


# --- JSON ---------------------------------------------------------------------

def test_json_round_trip(tmp_path):
    ap = replace(_nontrivial_klein(), grading=(0, 1, 2, 3))
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(ap.to_json()))
    back = load_presentation(path)
    for a, b in ((ap.m, back.m), (ap.delta, back.delta), (ap.eta, back.eta), (ap.eps, back.eps),
                 (ap.swap, back.swap)):
        assert np.array_equal(a, b)
    assert back.grading == ap.grading


def test_shape_mismatch_on_construction():
    with pytest.raises(ShapeMismatch):
        AlgebraPresentation(np.zeros((2, 2, 2)), np.zeros(3), np.zeros((2, 2, 2)), np.zeros(2))
