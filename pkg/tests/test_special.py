import math
from fractions import Fraction

import mpmath
import pytest
import scipy.special as sc
from hypothesis import given
from hypothesis import strategies as st

from conftest import rel
from debyelib import special
from debyelib.errors import BoundsError, DomainError, PoleError


def test_hurwitz_refuses_small_shift():
    with pytest.raises(DomainError):
        special.hurwitz_zeta_int(2, 0.5)


def test_gamma_matches_factorial():
    for n in range(1, 20):
        assert special.gamma(n) == math.factorial(n - 1)


@pytest.mark.parametrize("x", [0, -1, -7])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        special.gamma(x)


def test_gamma_overflow():
    with pytest.raises(OverflowError):
        special.gamma(172.0)


@pytest.mark.parametrize(
    "k, expected",
    [(0, Fraction(1)), (1, Fraction(-1, 2)), (2, Fraction(1, 6)), (3, Fraction(0)),
     (4, Fraction(-1, 30)), (12, Fraction(-691, 2730)), (20, Fraction(-174611, 330))],
)
def test_bernoulli_known_values(k, expected):
    assert special.bernoulli_number(k) == expected


def test_bernoulli_matches_mpmath():
    for k in range(0, 80, 2):
        b = special.bernoulli_number(k)
        assert mpmath.bernfrac(k) == (b.numerator, b.denominator)


def test_bernoulli_bound():
    with pytest.raises(BoundsError):
        special.bernoulli_number(202)
    assert special.bernoulli_number(202, bound=300) != 0


@pytest.mark.parametrize("m", [2, 4, 10, 30])
def test_even_zeta_from_bernoulli(m):
    b = float(special.bernoulli_number(m))
    z = (-1) ** (m // 2 + 1) * b * (2 * math.pi) ** m / (2 * math.factorial(m))
    assert rel(z, special.zeta_int(m)) < 1e-14


@pytest.mark.parametrize("n", range(0, 9))
def test_bernoulli_polynomial_at_zero_and_one_half(n):
    assert special.bernoulli_polynomial(n, 0) == special.bernoulli_number(n)
    half = special.bernoulli_polynomial(n, Fraction(1, 2))
    assert half == (Fraction(2) ** (1 - n) - 1) * special.bernoulli_number(n)


@given(st.integers(1, 10), st.floats(-3, 3))
def test_bernoulli_polynomial_shift_identity(n, z):
    # B_n(z + 1) - B_n(z) = n z^(n-1)
    lhs = special.bernoulli_polynomial(n, z + 1) - special.bernoulli_polynomial(n, z)
    assert abs(lhs - n * z ** (n - 1)) <= 1e-10 * max(1.0, abs(z) ** n * 4**n)


@pytest.mark.parametrize("s", [2, 3, 4, 5, 7, 11, 18, 19, 20, 21, 40, 60])
def test_zeta_int(s):
    assert rel(special.zeta_int(s), float(mpmath.zeta(s))) < 1e-15


@pytest.mark.parametrize("s, a", [(2, 1.0), (3, 2.0), (4, 7.5), (6, 100.0), (45, 1.5)])
def test_hurwitz_zeta(s, a):
    assert rel(special.hurwitz_zeta_int(s, a), float(mpmath.zeta(s, a))) < 1e-14


POLYLOG_POINTS = [-30.0, -3.0, -1.0, -0.7, -0.2, 0.0, 0.1, 0.5, 0.6, 0.9, 0.999, 0.999999, 1.0]


@pytest.mark.parametrize("n", range(0, 7))
@pytest.mark.parametrize("x", POLYLOG_POINTS)
def test_polylog_matches_mpmath(n, x):
    if x == 1.0 and n < 2:
        with pytest.raises(DomainError):
            special.polylog(n, x)
        return
    ref = float(mpmath.polylog(n, x))
    got = special.polylog(n, x)
    assert abs(got - ref) <= 2e-15 * max(1.0, abs(ref))


def test_polylog_refuses_past_one():
    with pytest.raises(DomainError):
        special.polylog(3, 1.5)


@given(st.integers(2, 8), st.floats(-0.99, 0.99))
def test_polylog_duplication(n, x):
    # Li_n(x) + Li_n(-x) = 2^(1-n) Li_n(x^2)
    lhs = special.polylog(n, x) + special.polylog(n, -x)
    assert abs(lhs - 2.0 ** (1 - n) * special.polylog(n, x * x)) < 1e-14


@given(st.integers(2, 8), st.floats(0.01, 0.99))
def test_polylog_derivative(n, x):
    # x d/dx Li_n(x) = Li_{n-1}(x), checked by central difference
    h = 1e-6 * x
    d = (special.polylog(n, x + h) - special.polylog(n, x - h)) / (2 * h)
    assert abs(x * d - special.polylog(n - 1, x)) < 1e-6 * max(1.0, abs(special.polylog(n - 1, x)))


@pytest.mark.parametrize("j", range(0, 8))
@pytest.mark.parametrize("x", [-4.0, -0.5, 0.3, 0.9, 2.5])
def test_polylog_nonpositive(j, x):
    ref = float(mpmath.polylog(-j, x))
    assert abs(special.polylog_nonpositive(j, x) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_polylog_nonpositive_pole():
    with pytest.raises(DomainError):
        special.polylog_nonpositive(2, 1.0)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("x", [1.0001, 1.5, 2.0, 3.0, 10.0, 1e4])
def test_polylog_continued_matches_mpmath(n, x):
    ref = complex(mpmath.polylog(n, x))
    got = special.polylog_continued(n, x)
    assert abs(got - ref) <= 1e-13 * max(1.0, abs(ref))


@given(st.integers(1, 8), st.floats(1.01, 1e3))
def test_continued_imaginary_part(n, x):
    im = special.polylog_continued(n, x).imag
    expected = -math.pi * math.log(x) ** (n - 1) / math.factorial(n - 1)
    assert abs(im - expected) <= 1e-12 * max(1.0, abs(expected))


def test_li1_at_two():
    z = special.polylog_continued(1, 2.0)
    assert abs(z.real) < 1e-15 and z.imag == pytest.approx(-math.pi, rel=1e-15)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("x", [1.5, 3.0, 10.0])
def test_jonquiere_residual(n, x):
    assert special.jonquiere_residual(n, x) <= 1e-10


@pytest.mark.parametrize("n", [1, 2, 4, 7, 12])
@pytest.mark.parametrize("Z", [1e-8, 0.01, 0.5, 3.0, 11.0, 40.0, 300.0])
def test_lower_incomplete_gamma(n, Z):
    ref = sc.gammainc(n, Z) * math.gamma(n)
    got = special.lower_incomplete_gamma(n, Z)
    assert rel(got, ref) < 1e-13


@given(st.integers(1, 10), st.floats(0.0, 50.0))
def test_lower_incomplete_gamma_recurrence(n, Z):
    # gamma(n+1, Z) = n gamma(n, Z) - Z^n e^-Z
    lhs = special.lower_incomplete_gamma(n + 1, Z)
    rhs = n * special.lower_incomplete_gamma(n, Z) - Z**n * math.exp(-Z)
    scale = n * special.lower_incomplete_gamma(n, Z) + Z**n * math.exp(-Z)
    assert abs(lhs - rhs) <= 1e-13 * scale


def test_lower_incomplete_gamma_zero():
    assert special.lower_incomplete_gamma(3, 0.0) == 0.0


@pytest.mark.parametrize("n", [1, 3, 6])
@pytest.mark.parametrize("Z", [-20.0, -2.0, -0.1, 0.0, 0.1, 2.0, 20.0, 200.0])
def test_kummer_ratio(n, Z):
    ref = float(mpmath.hyp1f1(n, n + 1, -Z))
    assert rel(special.kummer_ratio(n, Z), ref) < 1e-13


@pytest.mark.parametrize("fn, args", [
    (special.lower_incomplete_gamma, (0, 1.0)),
    (special.kummer_ratio, (0, 1.0)),
    (special.polylog, (-1, 0.5)),
    (special.polylog_continued, (2, 0.5)),
])
def test_domain_errors(fn, args):
    with pytest.raises(DomainError):
        fn(*args)
