import numpy as np
import pytest

from fracbvp import GridFunction, get_case, make_case3, oracle_solution, sup_error
from fracbvp.cases import (CASE3_CONSTANTS, _case4_dense,
                           gauss_first_integral, gauss_forcing,
                           gauss_second_integral, oscillatory_first_integral,
                           oscillatory_forcing, oscillatory_second_integral)
from fracbvp.grid import sup_distance

from oracles import simpson, simpson_double


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def test_case1_forcing_peak():
    case = get_case(1)
    assert case.rhs(0.7, 0.0) == pytest.approx(-20.0, abs=1e-14)
    assert case.left_bc.value == -3.0
    assert case.right_bc.value == -2.0


def test_case2_constants():
    case = get_case(2)
    assert case.left_bc.value == 5.0
    assert case.right_bc.robin_weight == 200.0
    assert case.right_bc.value == 0.1
    assert case.default_scheme == "rect"


def test_case3_forcing_vanishes_at_origin():
    case = get_case(3)
    assert case.rhs(0.0, 0.0) == 0.0
    assert case.default_scheme == "abm"
    assert case.default_partition.spacing == "quadratic"


def test_case3_forcing_identity():
    # -x(1 - sin^2) == -x(1 + cos(200x))/2 pointwise
    x = np.linspace(0.0, 1.0, 777)
    lhs = oscillatory_forcing(x)
    rhs = -x * (1.0 + np.cos(200.0 * x)) / 2.0
    assert np.max(np.abs(lhs - rhs)) <= 1e-14


def test_case4_forcing_annihilated_at_five():
    case = get_case(4)
    x = np.linspace(0.0, 1.0, 101)
    assert np.max(np.abs(case.rhs(x, 5.0 * np.ones_like(x)))) == 0.0
    assert case.depends_on_u


def test_get_case_id_forms():
    assert get_case(1).id == "case1"
    assert get_case("2").id == "case2"
    assert get_case("case3").id == "case3"


def test_unknown_case_rejected():
    with pytest.raises(ValueError):
        get_case("case9")
    with pytest.raises(ValueError):
        get_case("poisson")


# ---------------------------------------------------------------------------
# closed forms against brute-force quadrature
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("x", [0.3, 0.7, 1.0])
def test_gauss_antiderivatives_vs_simpson(x):
    assert abs(gauss_first_integral(x)
               - simpson(gauss_forcing, x, 1e-7)) <= 1e-9
    assert abs(gauss_second_integral(x)
               - simpson_double(gauss_forcing, x, 1e-7)) <= 1e-9


@pytest.mark.parametrize("x", [0.25, 0.55, 1.0])
def test_oscillatory_antiderivatives_vs_simpson(x):
    assert abs(oscillatory_first_integral(x)
               - simpson(oscillatory_forcing, x, 1e-7)) <= 1e-9
    assert abs(oscillatory_second_integral(x)
               - simpson_double(oscillatory_forcing, x, 1e-7)) <= 1e-9


# ---------------------------------------------------------------------------
# oracle self-consistency
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("case_id,a_res,b_res", [
    (1, -3.0, -2.0), (4, 3.0, -2.0)])
def test_dirichlet_oracle_boundary_values(case_id, a_res, b_res):
    assert abs(oracle_solution(case_id, 0.0) - a_res) <= 1e-10
    assert abs(oracle_solution(case_id, 1.0) - b_res) <= 1e-10


@pytest.mark.parametrize("case_id,first,second", [
    (2, gauss_first_integral, gauss_second_integral),
    (3, oscillatory_first_integral, oscillatory_second_integral)])
def test_robin_oracle_boundary_residual(case_id, first, second):
    """u'(1) + w u(1) - C at rounding level, with the slope reconstructed
    from oracle values and the independently validated antiderivatives."""
    case = get_case(case_id)
    a = case.left_bc.value
    assert abs(oracle_solution(case_id, 0.0) - a) <= 1e-10
    u1 = float(oracle_solution(case_id, 1.0))
    affine_slope = u1 - a - float(second(1.0))
    slope_1 = affine_slope + float(first(1.0))
    residual = slope_1 + case.right_bc.robin_weight * u1 - case.right_bc.value
    assert abs(residual) <= 1e-10


@pytest.mark.parametrize("case_id,tol", [(2, 1e-7), (3, 1e-5)])
def test_robin_oracle_slope_numerically(case_id, tol):
    """Same residual with a five-point one-sided slope, no closed forms."""
    case = get_case(case_id)
    d = 1e-3
    pts = 1.0 - d * np.arange(5)
    u = oracle_solution(case_id, pts)
    slope_1 = (25 * u[0] - 48 * u[1] + 36 * u[2] - 16 * u[3] + 3 * u[4]) / (12 * d)
    residual = slope_1 + case.right_bc.robin_weight * u[0] - case.right_bc.value
    assert abs(residual) <= tol


@pytest.mark.parametrize("case_id,d,tol", [
    (1, 1e-4, 1e-5), (2, 1e-4, 1e-5), (3, 1e-4, 1e-3), (4, 1e-2, 5e-3)])
def test_oracle_satisfies_its_equation(case_id, d, tol):
    """Central second difference of the oracle matches rhs(x, oracle(x))."""
    case = get_case(case_id)
    rng = np.random.default_rng(42)
    # case 4 is interpolated from a 1e-6 lattice; keeping the difference
    # points on that lattice avoids interpolation noise in the stencil
    x = np.round(rng.uniform(2 * d, 1.0 - 2 * d, 1000) / d) * d
    up = oracle_solution(case, x + d)
    u0 = oracle_solution(case, x)
    um = oracle_solution(case, x - d)
    second = (up - 2.0 * u0 + um) / d**2
    target = case.rhs(x, u0)
    assert np.max(np.abs(second - target)) <= tol


def test_case4_richardson_confirmation():
    coarse = _case4_dense(1_000_000)
    fine = _case4_dense(2_000_000)
    assert np.max(np.abs(coarse - fine[::2])) <= 1e-10


def test_oracle_domain_guard():
    with pytest.raises(ValueError):
        oracle_solution(1, -0.1)
    with pytest.raises(ValueError):
        oracle_solution(1, 1.1)


# ---------------------------------------------------------------------------
# custom case-3 constants
# ---------------------------------------------------------------------------

def test_case3_override_keeps_oracle_consistent():
    custom = make_case3(a=1.0, b=7.0, c=-0.5)
    assert custom.oracle(0.0) == pytest.approx(1.0, abs=1e-12)
    d = 1e-4
    x = np.linspace(2 * d, 1.0 - 2 * d, 200)
    second = (custom.oracle(x + d) - 2 * custom.oracle(x)
              + custom.oracle(x - d)) / d**2
    assert np.max(np.abs(second - custom.rhs(x, 0.0))) <= 1e-3


def test_case3_defaults_recorded():
    assert CASE3_CONSTANTS == {"a": 0.0, "b": 200.0, "c": 0.0}


# ---------------------------------------------------------------------------
# the error metric
# ---------------------------------------------------------------------------

def test_sup_error_zero_for_sampled_oracle():
    case = get_case(1)
    g = GridFunction.sample(case.oracle, 100)
    assert sup_error(g, case) == 0.0


def test_sup_error_sees_constant_offset():
    case = get_case(1)
    g = GridFunction.sample(case.oracle, 100)
    shifted = g.with_values(g.values + 1e-3)
    assert sup_error(shifted, case) == pytest.approx(1e-3, rel=1e-9)


def test_sup_error_triangle_inequality():
    case = get_case(1)
    rng = np.random.default_rng(5)
    f = GridFunction(0.01, rng.normal(size=101))
    g = GridFunction(0.01, rng.normal(size=101))
    assert sup_error(f, case) <= sup_distance(f, g) + sup_error(g, case) + 1e-15


def test_sup_error_nonnegative_and_uses_own_grid():
    case = get_case(3)
    for n in (17, 40, 233):
        g = GridFunction.sample(case.oracle, n)
        assert sup_error(g, case) == 0.0
