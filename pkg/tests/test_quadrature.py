import numpy as np
import pytest

from dirichlet_divisor.errors import ToleranceError
from dirichlet_divisor.periodic import psi
from dirichlet_divisor.quadrature import (
    CENTER,
    GAUSS_WEIGHTS,
    KRONROD_WEIGHTS,
    NODES,
    QuadConfig,
    integrate_panels,
    piece_floor,
    quad_with_breakpoints,
)

from .oracles import piecewise_sqrt_saw_integral


def test_rule_tables():
    assert NODES[CENTER] == 0.0
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    # Kronrod rule integrates polynomials of degree 22 exactly
    assert KRONROD_WEIGHTS @ NODES**22 == pytest.approx(2 / 23, abs=1e-15)


def test_sqrt_sawtooth_with_breakpoints():
    g = lambda u: psi(np.sqrt(u))
    got = quad_with_breakpoints(g, 3.5, 10.5, [4, 9], QuadConfig(abs_tol=1e-13, rel_tol=1e-13))
    assert got == pytest.approx(piecewise_sqrt_saw_integral(3.5, 10.5), abs=1e-12)


def test_constant_exact():
    # exact up to the rounding of the weight table
    assert quad_with_breakpoints(lambda u: np.full_like(u, 2.5), 1.0, 7.0) == pytest.approx(15.0, rel=4e-16)


def test_square():
    assert quad_with_breakpoints(lambda u: u * u, 0.0, 1.0) == pytest.approx(1 / 3, abs=1e-14)


def test_reversed_and_empty():
    g = lambda u: u * u
    assert quad_with_breakpoints(g, 1.0, 0.0) == pytest.approx(-1 / 3, abs=1e-14)
    assert quad_with_breakpoints(g, 2.0, 2.0) == 0.0


def test_panel_tags_and_piece_floor():
    # integrate floor(u) * tag over [0, 3] split at integers, tags 1 and 2
    def g(u, tag):
        return piece_floor(u) * tag

    lo = np.array([0.0, 1.0, 2.0, 0.0])
    hi = np.array([1.0, 2.0, 3.0, 3.0])
    tags = np.array([1, 1, 1, 0])
    assert integrate_panels(g, lo, hi, tags) == pytest.approx(3.0, abs=1e-14)


def test_max_depth_exceeded_names_interval():
    cfg = QuadConfig(abs_tol=1e-14, rel_tol=1e-14, max_depth=2)
    with pytest.raises(ToleranceError) as info:
        quad_with_breakpoints(lambda u: psi(np.sqrt(u)), 3.5, 10.5, [], cfg)
    lo, hi = info.value.where
    assert 3.5 <= lo < hi <= 10.5


@pytest.mark.parametrize(
    "kwargs", [dict(abs_tol=0), dict(rel_tol=-1), dict(max_depth=61), dict(max_depth=0), dict(fourier_V=0)]
)
def test_quadconfig_validation(kwargs):
    with pytest.raises(ValueError):
        QuadConfig(**kwargs)
