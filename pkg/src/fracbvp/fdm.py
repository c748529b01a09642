"""Finite-difference reference solvers for the benchmark problems.

``fdm_linear`` discretizes ``u'' = f(x)`` with central second differences
and solves the resulting tridiagonal system directly; ``fdm_newton`` handles
right-hand sides that read ``u`` by Newton iteration on the same stencil.
Robin conditions at the right end use the second-order one-sided difference,
with the out-of-band node eliminated through the last interior equation so
the system stays tridiagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .grid import GridFunction

if TYPE_CHECKING:
    from .cases import CaseSpec

PIVOT_GUARD = 1e-14


class SingularSystemError(RuntimeError):
    """Forward elimination hit a vanishing pivot."""


class NewtonConvergenceError(RuntimeError):
    """Newton iteration ran out of budget before the update settled."""

    def __init__(self, message: str, residual_norm: float, iterations: int):
        super().__init__(message)
        self.residual_norm = residual_norm
        self.iterations = iterations


@dataclass(frozen=True)
class TridiagonalSystem:
    """``sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]``.

    ``sub[0]`` and ``sup[-1]`` are ignored.  Diagonal dominance is not
    assumed; the solver guards every pivot instead.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray


def solve_tridiagonal(system: TridiagonalSystem) -> np.ndarray:
    """Thomas sweep with a pivot-magnitude guard.

    :raises SingularSystemError: when any pivot falls below ``1e-14``.
    """
    n = system.diag.size
    c = np.zeros(n)
    d = np.zeros(n)
    piv = system.diag[0]
    if abs(piv) < PIVOT_GUARD:
        raise SingularSystemError("zero pivot in row 0")
    c[0] = system.sup[0] / piv
    d[0] = system.rhs[0] / piv
    for i in range(1, n):
        piv = system.diag[i] - system.sub[i] * c[i - 1]
        if abs(piv) < PIVOT_GUARD:
            raise SingularSystemError(f"zero pivot in row {i}")
        if i < n - 1:
            c[i] = system.sup[i] / piv
        d[i] = (system.rhs[i] - system.sub[i] * d[i - 1]) / piv
    x = np.empty(n)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


def _assemble(case: "CaseSpec", n: int, f_nodes: np.ndarray) -> TridiagonalSystem:
    """Rows for u'' = f with the case's boundary conditions."""
    h = 1.0 / n
    sub = np.zeros(n + 1)
    diag = np.zeros(n + 1)
    sup = np.zeros(n + 1)
    rhs = np.zeros(n + 1)

    diag[0] = 1.0
    rhs[0] = case.left_bc.value

    sub[1:n] = 1.0 / h**2
    diag[1:n] = -2.0 / h**2
    sup[1:n] = 1.0 / h**2
    rhs[1:n] = f_nodes[1:n]

    right = case.right_bc
    if right.kind == "dirichlet":
        diag[n] = 1.0
        rhs[n] = right.value
    else:
        # (3u_n - 4u_{n-1} + u_{n-2})/(2h) + B u_n = C, with u_{n-2}
        # eliminated via the last interior equation; this keeps the row
        # second-order and the matrix tridiagonal.
        B, C = right.robin_weight, right.value
        sub[n] = -1.0 / h
        diag[n] = 1.0 / h + B
        rhs[n] = C - 0.5 * h * f_nodes[n - 1]
    return TridiagonalSystem(sub, diag, sup, rhs)


def fdm_linear(case: "CaseSpec", n: int) -> GridFunction:
    """Direct solve of ``u'' = f(x)`` for forcing-only cases.

    Central second differences at the ``n - 1`` interior nodes, boundary
    rows per the case.  Exact for solutions that are polynomials of degree
    at most two, second-order otherwise.
    """
    if n < 4:
        raise ValueError("need at least 4 intervals")
    if case.depends_on_u:
        raise ValueError("right-hand side reads u; use fdm_newton")
    h = 1.0 / n
    x = np.arange(n + 1) * h
    f_nodes = np.broadcast_to(
        np.asarray(case.rhs(x, np.zeros(n + 1)), dtype=float), x.shape)
    system = _assemble(case, n, f_nodes)
    return GridFunction(h, solve_tridiagonal(system))


def _newton_iterate(case: "CaseSpec", n: int, tol: float,
                    max_iter: int) -> tuple[np.ndarray, list[float]]:
    h = 1.0 / n
    x = np.arange(n + 1) * h
    a = case.left_bc.value
    right = case.right_bc
    b_guess = right.value if right.kind == "dirichlet" else a
    U = a + (b_guess - a) * x

    def rhs_u(xv, uv):
        if case.rhs_u is not None:
            return np.broadcast_to(np.asarray(case.rhs_u(xv, uv), dtype=float),
                                   xv.shape)
        eps = 1e-6
        return (np.asarray(case.rhs(xv, uv + eps), dtype=float)
                - np.asarray(case.rhs(xv, uv - eps), dtype=float)) / (2 * eps)

    update_norms: list[float] = []
    residual = np.inf
    for _ in range(max_iter):
        f_nodes = np.broadcast_to(
            np.asarray(case.rhs(x, U), dtype=float), x.shape)
        F = np.zeros(n + 1)
        F[0] = U[0] - a
        F[1:n] = (U[0:n - 1] - 2 * U[1:n] + U[2:n + 1]) / h**2 - f_nodes[1:n]
        dfu = rhs_u(x, U)

        sub = np.zeros(n + 1)
        diag = np.zeros(n + 1)
        sup = np.zeros(n + 1)
        diag[0] = 1.0
        sub[1:n] = 1.0 / h**2
        diag[1:n] = -2.0 / h**2 - dfu[1:n]
        sup[1:n] = 1.0 / h**2
        if right.kind == "dirichlet":
            F[n] = U[n] - right.value
            diag[n] = 1.0
        else:
            B, C = right.robin_weight, right.value
            F[n] = (U[n] - U[n - 1]) / h + B * U[n] - C \
                + 0.5 * h * f_nodes[n - 1]
            sub[n] = -1.0 / h + 0.5 * h * dfu[n - 1]
            diag[n] = 1.0 / h + B

        delta = solve_tridiagonal(TridiagonalSystem(sub, diag, sup, -F))
        U = U + delta
        residual = float(np.max(np.abs(F)))
        update_norms.append(float(np.max(np.abs(delta))))
        if update_norms[-1] < tol:
            return U, update_norms
    raise NewtonConvergenceError(
        f"no convergence in {max_iter} Newton steps",
        residual_norm=residual, iterations=max_iter)


def fdm_newton(case: "CaseSpec", n: int, tol: float = 1e-10,
               max_iter: int = 50) -> GridFunction:
    """Newton iteration on the central-difference discretization.

    Starts from the straight line between the boundary values (or a flat
    profile under a Robin right condition) and stops once the sup-norm
    update drops below ``tol``.  Affine-in-``u`` right-hand sides converge
    in a single step because the discrete system is then linear.

    :raises NewtonConvergenceError: carrying the last residual norm when
        ``max_iter`` steps do not settle.
    """
    if n < 4:
        raise ValueError("need at least 4 intervals")
    U, _ = _newton_iterate(case, n, tol, max_iter)
    return GridFunction(1.0 / n, U)
