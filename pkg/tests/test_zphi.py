"""Golden-ratio ring arithmetic, Binet formulas, Laurent polynomials."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fibkit import GoldenInt, GoldenRat, LaurentPoly3, binet_fib, binet_lucas, fib, lucas, phi_pow
from fibkit.zphi import HALF, INV_SQRT5, ONE, PHI, SQRT5

golden = st.builds(GoldenInt, st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))


@given(golden, golden, golden)
def test_ring_laws(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(golden, golden)
def test_conjugation_is_a_homomorphism(x, y):
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()


def test_conj_sends_phi_to_one_minus_phi():
    assert PHI.conj() == GoldenInt(1, -1) == ONE - PHI


def test_phi_times_one_minus_phi_is_minus_one():
    assert PHI * (ONE - PHI) == GoldenInt(-1, 0)


@given(golden)
def test_norm_formula(x):
    n = x * x.conj()
    assert n.b == 0
    assert n.a == x.a ** 2 + x.a * x.b - x.b ** 2
    assert x.norm() == n.a


def test_sqrt5_squares_to_five():
    assert SQRT5 * SQRT5 == GoldenInt(5, 0)
    assert SQRT5 == 2 * PHI - 1


@pytest.mark.parametrize("n,expected", [
    (0, GoldenInt(1, 0)),
    (5, GoldenInt(3, 5)),
    (-1, GoldenInt(-1, 1)),
])
def test_phi_pow_values(n, expected):
    assert phi_pow(n) == expected


def test_phi_pow_negative_one_is_inverse():
    assert phi_pow(-1) * PHI == ONE


def test_phi_pow_coefficient_law():
    for n in range(-200, 201):
        z = phi_pow(n)
        assert z == GoldenInt(fib(n - 1), fib(n))
        assert 2 * z.a + z.b == binet_lucas(n)


@pytest.mark.parametrize("n,expected", [(1, 1), (12, 144), (-6, -8)])
def test_binet_fib_values(n, expected):
    assert binet_fib(n) == expected


@pytest.mark.parametrize("n,expected", [(0, 2), (7, 29), (-3, -4)])
def test_binet_lucas_values(n, expected):
    assert binet_lucas(n) == expected


def test_binet_agrees_with_sequence_engine():
    for n in range(-200, 201):
        assert binet_fib(n) == fib(n)
        assert binet_lucas(n) == lucas(n)


def test_golden_rat_reduction_and_sign():
    q = GoldenRat(GoldenInt(4, -6), -10)
    assert q.den == 5
    assert q.num == GoldenInt(-2, 3)
    with pytest.raises(ZeroDivisionError):
        GoldenRat(ONE, 0)


def test_golden_rat_field_ops():
    third = GoldenRat(ONE, 3)
    assert third + third + third == GoldenRat(ONE)
    assert (INV_SQRT5 * SQRT5) == GoldenRat(ONE)
    assert HALF * 2 == GoldenRat(ONE)
    assert (GoldenRat(PHI) / GoldenRat(PHI)) == GoldenRat(ONE)


def test_golden_rat_integer_extraction():
    assert GoldenRat(GoldenInt(14, 0), 7).as_integer() == 2
    assert not GoldenRat(PHI).is_integer()


def test_laurent_cancellation_to_zero():
    x = LaurentPoly3.monomial((1, 0, 0))
    y = LaurentPoly3.monomial((0, 1, 0))
    assert ((x + y) - (x + y)).is_zero()
    assert (x + y) - (x + y) == LaurentPoly3.zero()


def test_laurent_inverse_symbols():
    x = LaurentPoly3.monomial((1, 0, 0))
    x_inv = LaurentPoly3.monomial((-1, 0, 0))
    assert x * x_inv == LaurentPoly3.scalar(1)


def test_laurent_square_with_sign_scalar():
    # (X + s*X^-1)^2 = X^2 + 2s + s^2 X^-2 with s = -1
    s = -1
    x = LaurentPoly3.monomial((1, 0, 0))
    term = x + LaurentPoly3.monomial((-1, 0, 0), s)
    expected = (LaurentPoly3.monomial((2, 0, 0))
                + LaurentPoly3.scalar(2 * s)
                + LaurentPoly3.monomial((-2, 0, 0), s * s))
    assert term ** 2 == expected


def test_laurent_zero_coefficients_are_pruned():
    p = LaurentPoly3({(1, 2, 3): GoldenRat(GoldenInt(0, 0))})
    assert p.is_zero()
    q = LaurentPoly3.monomial((0, 0, 1), 3) * LaurentPoly3.scalar(0)
    assert q.coefficients() == {}


def test_laurent_repr_is_deterministic():
    p = LaurentPoly3({(1, 0, -2): GoldenRat(ONE), (-1, 0, 0): GoldenRat(PHI)})
    assert repr(p) == repr(LaurentPoly3(dict(reversed(list(p.coefficients().items())))))
