import numpy as np
import pytest

from fracbvp import (GridFunction, IfoiDivergenceError, IvpProblem,
                     compose_check, ifoi_solve_ivp, make_alpha_partition)
from fracbvp.cases import gauss_forcing, rk4_solve_ivp

from oracles import simpson_double, total_variation


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def test_regular_partition_of_ten():
    p = make_alpha_partition("regular", 10)
    assert p.stage_orders == pytest.approx([-0.2] * 10)
    assert p.cumulative == pytest.approx([0.0, 0.2, 0.4, 0.6, 0.8, 1.0,
                                          1.2, 1.4, 1.6, 1.8, 2.0])
    assert p.cumulative[-1] == 2.0


def test_quadratic_partition_of_five():
    p = make_alpha_partition("quadratic", 5)
    assert p.cumulative[1:] == pytest.approx([0.08, 0.32, 0.72, 1.28, 2.0])


def test_single_stage_partition():
    p = make_alpha_partition("regular", 1)
    assert p.stage_orders == (-2.0,)


def test_partition_rejects_zero_stages():
    with pytest.raises(ValueError):
        make_alpha_partition("regular", 0)


def test_partition_rejects_unknown_spacing():
    with pytest.raises(ValueError):
        make_alpha_partition("cubic", 4)


@pytest.mark.parametrize("spacing", ["regular", "quadratic"])
@pytest.mark.parametrize("m", [1, 2, 5, 10, 25])
def test_partition_invariants(spacing, m):
    p = make_alpha_partition(spacing, m)
    cum = p.cumulative
    assert cum[0] == 0.0 and cum[-1] == 2.0
    assert all(b > a for a, b in zip(cum, cum[1:]))
    assert all(-2.0 <= a < 0.0 for a in p.stage_orders)
    assert p.stage_count == m


# ---------------------------------------------------------------------------
# the staged IVP solver
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("scheme", ["gl", "rect", "abm"])
@pytest.mark.parametrize("spacing,m", [("regular", 10), ("quadratic", 5)])
def test_zero_forcing_gives_the_line(scheme, spacing, m):
    problem = IvpProblem(lambda x, u: 0.0 * x, u0=3.0, s0=-1.0)
    sol, trace = ifoi_solve_ivp(problem, make_alpha_partition(spacing, m),
                                50, scheme)
    assert np.allclose(sol.values, 3.0 - sol.nodes, atol=1e-13)
    assert trace.picard_iterations == 0


def test_gaussian_forcing_endpoint_vs_brute_force_quadrature():
    # Staged first-order series integration carries ~0.1 absolute error at
    # this resolution (the per-stage first-order constants add up to the
    # single order-2 constant); 0.15 is the honest ceiling.
    problem = IvpProblem(gauss_forcing, u0=-3.0, s0=0.0)
    sol, _ = ifoi_solve_ivp(problem, make_alpha_partition("regular", 10),
                            100, "gl")
    expect = -3.0 + simpson_double(gauss_forcing, 1.0)
    assert abs(sol.values[-1] - expect) <= 0.15


def test_u_dependent_forcing_vs_classical_integration():
    problem = IvpProblem(lambda x, u: 2.0 * x * (5.0 - u), u0=3.0, s0=0.0,
                         depends_on_u=True)
    sol, trace = ifoi_solve_ivp(problem, make_alpha_partition("regular", 10),
                                50, "abm")
    reference = rk4_solve_ivp(lambda x, u: 2.0 * x * (5.0 - u), 3.0, 0.0,
                              50, substeps=2000)
    assert np.max(np.abs(sol.values - reference.values)) <= 1e-1
    assert 1 <= trace.picard_iterations <= 200


def test_rejects_coarse_grid():
    problem = IvpProblem(lambda x, u: 0.0 * x, 0.0, 0.0)
    with pytest.raises(ValueError):
        ifoi_solve_ivp(problem, make_alpha_partition("regular", 2), 4)


# ---------------------------------------------------------------------------
# anchoring and trace
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("scheme", ["gl", "rect", "abm"])
def test_left_value_is_anchored_exactly(scheme):
    problem = IvpProblem(gauss_forcing, u0=-3.0, s0=0.5)
    sol, _ = ifoi_solve_ivp(problem, make_alpha_partition("regular", 10),
                            64, scheme)
    assert sol.values[0] == -3.0


def test_initial_slope_anchors_first_order_scheme():
    errs = []
    for n in (100, 200):
        problem = IvpProblem(gauss_forcing, u0=-3.0, s0=0.5)
        sol, _ = ifoi_solve_ivp(problem, make_alpha_partition("regular", 10),
                                n, "gl")
        v = sol.values
        slope = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * sol.h)
        errs.append(abs(slope - 0.5))
    assert errs[0] <= 2e-3
    assert errs[1] <= errs[0] / 1.5


def test_initial_slope_anchors_second_order_scheme():
    problem = IvpProblem(gauss_forcing, u0=-3.0, s0=0.5)
    sol, _ = ifoi_solve_ivp(problem, make_alpha_partition("regular", 10),
                            100, "abm")
    v = sol.values
    slope = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * sol.h)
    assert abs(slope - 0.5) <= 1e-4


def test_trace_orders_and_final_snapshot():
    problem = IvpProblem(gauss_forcing, u0=-3.0, s0=0.0)
    partition = make_alpha_partition("regular", 10)
    sol, trace = ifoi_solve_ivp(problem, partition, 100, "gl")
    orders = [s for s, _ in trace.stages]
    assert orders == pytest.approx(list(partition.cumulative[1:]))
    assert np.array_equal(trace.stages[-1][1].values, sol.values)


def test_stage_snapshots_smooth_monotonically():
    """Integration smooths: total variation never grows along the stages."""
    problem = IvpProblem(gauss_forcing, u0=-3.0, s0=0.0)
    sol, trace = ifoi_solve_ivp(problem, make_alpha_partition("regular", 10),
                                100, "gl")
    forcing = GridFunction.sample(gauss_forcing, 100)
    tvs = [total_variation(g.values) for _, g in trace.stages]
    assert tvs[0] <= total_variation(forcing.values)
    assert all(b <= a * (1.0 + 1e-9) for a, b in zip(tvs, tvs[1:]))


@pytest.mark.parametrize("scheme", ["gl", "rect", "abm"])
def test_doubling_stage_count_does_not_blow_up(scheme):
    """Refining the order schedule stays within the scheme's own error scale."""
    from fracbvp import get_case, sup_error, make_ivp_solver, solve_bvp
    case = get_case(1)
    errs = {}
    for m in (10, 20):
        solver = make_ivp_solver(make_alpha_partition("regular", m), 100, scheme)
        solution, _ = solve_bvp(case, solver)
        errs[m] = sup_error(solution, case)
    assert errs[20] <= 3.0 * errs[10] + 1e-12


# ---------------------------------------------------------------------------
# composition diagnostic
# ---------------------------------------------------------------------------

def test_compose_check_quadratic_abm():
    f = GridFunction.sample(lambda x: x**2, 100)
    gap = compose_check(f, make_alpha_partition("regular", 2), "abm")
    assert gap <= 1e-3


def test_compose_check_zero_function():
    f = GridFunction(0.01, np.zeros(101))
    assert compose_check(f, make_alpha_partition("regular", 4), "rect") == 0.0


def test_compose_check_single_stage_is_identity():
    f = GridFunction.sample(lambda x: np.ones_like(x), 100)
    assert compose_check(f, make_alpha_partition("regular", 1), "gl") == 0.0


# ---------------------------------------------------------------------------
# failure modes
# ---------------------------------------------------------------------------

def test_divergence_guard_trips_on_explosive_feedback():
    problem = IvpProblem(lambda x, u: 1e7 * u, u0=1.0, s0=0.0,
                         depends_on_u=True)
    with pytest.raises(IfoiDivergenceError):
        ifoi_solve_ivp(problem, make_alpha_partition("regular", 10), 50, "abm")


@pytest.mark.filterwarnings("ignore:overflow encountered")
def test_overflowing_rhs_reports_divergence_not_a_type_error():
    problem = IvpProblem(lambda x, u: np.exp(u), u0=1000.0, s0=0.0,
                         depends_on_u=True)
    with pytest.raises(IfoiDivergenceError):
        ifoi_solve_ivp(problem, make_alpha_partition("regular", 10), 50, "abm")


def test_picard_cap_trips_on_non_settling_feedback():
    problem = IvpProblem(lambda x, u: 200.0 * np.cos(40.0 * u), u0=0.0,
                         s0=0.0, depends_on_u=True)
    with pytest.raises(IfoiDivergenceError) as err:
        ifoi_solve_ivp(problem, make_alpha_partition("regular", 10), 50, "abm")
    assert err.value.iterations == 200
    assert err.value.last_update > 1e-10
