import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

mpmath.mp.dps = 40


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.fixture
def mp_debye():
    """Reference D_N(alpha, X) by mpmath quadrature at 40 digits."""

    def f(N, alpha, X):
        X = mpmath.mpf(X)
        integral = mpmath.quad(lambda t: t**N / (mpmath.expm1(t) + (1 - alpha)), [0, X])
        return float(N / X**N * integral)

    return f
