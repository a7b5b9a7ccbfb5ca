import cmath
import json
import math

import pytest

from modcat import scalars
from modcat.scalars import (PhaseQ, approx_eq, cscalar_from_json, cscalar_to_json, phase_mul, phase_pow,
                            snap_phase, to_complex)


@pytest.mark.parametrize("p, q, expected", [
    ((1, 2), (1, 2), (0, 1)),
    ((1, 3), (1, 2), (5, 6)),
    ((3, 4), (3, 4), (1, 2)),
])
def test_phase_mul_examples(p, q, expected):
    assert phase_mul(PhaseQ(*p), PhaseQ(*q)) == PhaseQ(*expected)


@pytest.mark.parametrize("p, n, expected", [
    ((1, 2), 2, (0, 1)),
    ((1, 4), 2, (1, 2)),
    ((5, 6), 6, (0, 1)),
])
def test_phase_pow_examples(p, n, expected):
    assert phase_pow(PhaseQ(*p), n) == PhaseQ(*expected)


def test_phase_pow_zero_and_negative():
    p = PhaseQ(2, 7)
    assert phase_pow(p, 0) == PhaseQ(0, 1)
    assert phase_mul(phase_pow(p, -3), phase_pow(p, 3)) == PhaseQ(0, 1)


@pytest.mark.parametrize("p, z", [((0, 1), 1 + 0j), ((1, 2), -1 + 0j), ((1, 4), 1j)])
def test_to_complex_examples(p, z):
    w = to_complex(PhaseQ(*p))
    assert abs(w - z) <= 1e-15


def test_to_complex_unit_is_exact():
    w = to_complex(PhaseQ(0, 1))
    assert w.real == 1.0 and w.imag == 0.0


def test_reduced_form():
    p = PhaseQ(6, 8)
    assert (p.num, p.den) == (3, 4)
    q = PhaseQ(-1, 3)
    assert (q.num, q.den) == (2, 3)
    assert PhaseQ(5, 5) == PhaseQ(0, 1)
    with pytest.raises(ValueError):
        PhaseQ(1, 0)


def test_modulus_one():
    for den in range(1, 13):
        for num in range(den):
            assert abs(abs(to_complex(PhaseQ(num, den))) - 1) <= scalars.get_tolerance()


def test_pow_denominator_is_trivial():
    for den in range(1, 20):
        for num in range(den):
            assert phase_pow(PhaseQ(num, den), den) == PhaseQ(0, 1)


def test_approx_eq_relative_scale():
    assert approx_eq(1.0, 1.0 + 5e-10)
    assert not approx_eq(1.0, 1.0 + 5e-9)
    assert approx_eq(1e6, 1e6 + 1e-4)
    assert approx_eq(1e-12, 0.0)
    assert approx_eq(1.0, 1.1, tol=0.2)


def test_tolerance_context_and_validation():
    assert scalars.get_tolerance() == scalars.DEFAULT_TOLERANCE
    with scalars.tolerance(1e-3):
        assert approx_eq(1.0, 1.0005)
    assert not approx_eq(1.0, 1.0005)
    for bad in (0.0, -1.0, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            scalars.set_tolerance(bad)


def test_json_round_trip():
    p = PhaseQ(5, 12)
    assert json.loads(json.dumps(p.to_json())) == {"num": 5, "den": 12}
    assert PhaseQ.from_json(p.to_json()) == p
    z = complex(0.25, -math.sqrt(2))
    assert cscalar_to_json(z) == {"re": 0.25, "im": -math.sqrt(2)}
    assert cscalar_from_json(cscalar_to_json(z)) == z


def test_snap_phase():
    z = cmath.exp(2j * math.pi * 5 / 12) * (1 + 1e-9)
    assert snap_phase(z, 12) == PhaseQ(5, 12)
    with pytest.raises(ValueError):
        snap_phase(cmath.exp(2j * math.pi * 0.123456), 12)
