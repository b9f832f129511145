"""Quadrature rules, polynomial bases and small dense linear algebra.

Everything here is pure and immutable after construction, so tables can be
built once per polynomial degree and shared read-only between the
reconstruction, predictor and flux stages.

Convention used throughout the package: the modal basis consists of the
standard (non-normalized) Legendre polynomials rescaled to the unit
interval, psi_m(xi) = P_m(2 xi - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import ConfigurationError, SingularMatrixError

MAX_QUAD_POINTS = 16


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre points and weights on the unit interval [0, 1]."""

    points: np.ndarray
    weights: np.ndarray

    @property
    def n(self):
        return self.points.size

    def integrate(self, f):
        return float(np.dot(self.weights, f(self.points)))


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [0, 1]; exact for degree <= 2n-1."""
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_QUAD_POINTS:
        raise ConfigurationError(
            f"quadrature point count must be an integer in [1, {MAX_QUAD_POINTS}], got {n!r}"
        )
    x, w = np.polynomial.legendre.leggauss(int(n))
    pts = 0.5 * (x + 1.0)
    wts = 0.5 * w
    pts.setflags(write=False)
    wts.setflags(write=False)
    return QuadratureRule(points=pts, weights=wts)


def _legendre_rows(m_max, y):
    """Values of P_0 .. P_m_max at y via the three-term recurrence.

    Returns shape (m_max + 1,) + y.shape.
    """
    y = np.asarray(y, dtype=float)
    out = np.empty((m_max + 1,) + y.shape)
    out[0] = 1.0
    if m_max >= 1:
        out[1] = y
    for m in range(1, m_max):
        out[m + 1] = ((2 * m + 1) * y * out[m] - m * out[m - 1]) / (m + 1)
    return out


class ModalBasis:
    """Rescaled Legendre basis psi_m(xi) = P_m(2 xi - 1), m = 0..M.

    psi_0 == 1, the family is orthogonal on [0, 1], and the primitives
    Psi_m(xi) = int_0^xi psi_m vanish at xi = 0.  The primitive of psi_m for
    m >= 1 is (P_{m+1} - P_{m-1})(2 xi - 1) / (2 (2 m + 1)), exact in closed
    form; evaluation outside [0, 1] is permitted (needed for neighbour-cell
    edges in reconstruction stencils).
    """

    def __init__(self, degree):
        if degree < 0:
            raise ConfigurationError(f"polynomial degree must be >= 0, got {degree}")
        self.degree = int(degree)

    def values(self, xi):
        """psi_m(xi) for all m; shape (M + 1,) + xi.shape."""
        y = 2.0 * np.asarray(xi, dtype=float) - 1.0
        return _legendre_rows(self.degree, y)

    def primitives(self, xi):
        """Primitives Psi_m(xi) for all m; shape (M + 1,) + xi.shape."""
        xi = np.asarray(xi, dtype=float)
        y = 2.0 * xi - 1.0
        p = _legendre_rows(self.degree + 1, y)
        out = np.empty((self.degree + 1,) + xi.shape)
        out[0] = xi
        for m in range(1, self.degree + 1):
            out[m] = (p[m + 1] - p[m - 1]) / (2.0 * (2 * m + 1))
        return out


def eval_modal(basis: ModalBasis, m, xi):
    """Single basis value psi_m(xi)."""
    return basis.values(xi)[m]


def eval_modal_primitive(basis: ModalBasis, m, xi):
    """Single primitive value Psi_m(xi), exact (no quadrature)."""
    return basis.primitives(xi)[m]


@lru_cache(maxsize=None)
def oscillation_matrix(degree: int) -> np.ndarray:
    """Derivative-energy quadratic form S_lm = sum_a int (d^a psi_l)(d^a psi_m).

    The sum runs over derivative orders a = 1..M, so row/column 0 vanish and
    the matrix is symmetric positive semidefinite.
    """
    M = int(degree)
    if M < 0:
        raise ConfigurationError(f"polynomial degree must be >= 0, got {M}")
    sigma = np.zeros((M + 1, M + 1))
    if M == 0:
        sigma.setflags(write=False)
        return sigma
    rule = gauss_legendre(M + 1)
    # d^a psi_m sampled at the quadrature nodes, for every order a
    Leg = np.polynomial.legendre.Legendre
    for a in range(1, M + 1):
        vals = np.zeros((M + 1, rule.n))
        for m in range(a, M + 1):
            vals[m] = Leg.basis(m, domain=[0.0, 1.0]).deriv(a)(rule.points)
        sigma += (vals * rule.weights) @ vals.T
    sigma = 0.5 * (sigma + sigma.T)
    sigma.setflags(write=False)
    return sigma


class NodalBasis:
    """Lagrange polynomials through the (M + 1) Gauss-Legendre points on [0, 1].

    Provides barycentric evaluation, the differentiation matrix
    diff[j, i] = phi_i'(node_j), and cached endpoint values phi(0), phi(1).
    The same object serves both the spatial and the temporal direction of
    the tensor-product space-time basis.
    """

    def __init__(self, degree):
        if degree < 0:
            raise ConfigurationError(f"polynomial degree must be >= 0, got {degree}")
        self.degree = int(degree)
        rule = gauss_legendre(self.degree + 1)
        self.nodes = rule.points
        self.weights = rule.weights
        diff = np.asarray(self.nodes)[:, None] - np.asarray(self.nodes)[None, :]
        np.fill_diagonal(diff, 1.0)
        bary = 1.0 / np.prod(diff, axis=1)
        self.bary = bary
        D = np.zeros((self.degree + 1, self.degree + 1))
        for j in range(self.degree + 1):
            for i in range(self.degree + 1):
                if i != j:
                    D[j, i] = (bary[i] / bary[j]) / (self.nodes[j] - self.nodes[i])
        np.fill_diagonal(D, -D.sum(axis=1))
        D.setflags(write=False)
        self.diff = D
        self.at_zero = self.eval(0.0)
        self.at_one = self.eval(1.0)

    def eval(self, y):
        """phi_i(y) for all i; y scalar or array, shape (M + 1,) + y.shape."""
        y = np.asarray(y, dtype=float)
        scalar = y.ndim == 0
        y = np.atleast_1d(y)
        d = y[None, :] - self.nodes[:, None]
        out = np.empty((self.degree + 1, y.size))
        hit = np.abs(d) < 1e-300
        safe = np.where(hit, 1.0, d)
        terms = self.bary[:, None] / safe
        denom = terms.sum(axis=0)
        out = terms / denom
        # exact-node columns collapse to Kronecker deltas
        col_hit = hit.any(axis=0)
        if col_hit.any():
            out[:, col_hit] = hit[:, col_hit].astype(float)
        return out[:, 0] if scalar else out


def solve_dense(A, b, context=""):
    """Solve A x = b by LU with partial pivoting (LAPACK via numpy).

    Accepts a single system or a stacked batch (..., n, n).  A residual
    check rejects solutions from (near-)singular matrices so degenerate
    geometry cannot silently poison a reconstruction.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    vec_batch = A.ndim > 2 and b.ndim == A.ndim - 1
    rhs = b[..., None] if vec_batch else b
    try:
        x = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(f"singular matrix{': ' + context if context else ''}") from exc
    if vec_batch:
        x = x[..., 0]
    if not np.all(np.isfinite(x)):
        raise SingularMatrixError(
            f"non-finite solution from dense solve{': ' + context if context else ''}"
        )
    resid = (A @ x[..., None])[..., 0] if x.ndim == A.ndim - 1 else A @ x
    resid = np.abs(resid - b).max()
    scale = np.abs(b).max() + np.abs(A).max() * max(np.abs(x).max(), 1.0)
    if resid > 1e-8 * scale:
        raise SingularMatrixError(
            f"ill-conditioned dense solve (residual {resid:.3e}){': ' + context if context else ''}"
        )
    return x


def eigen_abs(A, decomposition):
    """Matrix absolute value |A| = R |Lambda| R^{-1} from a supplied eigendecomposition."""
    R, lam, Rinv = decomposition
    A = np.asarray(A, dtype=float)
    R = np.asarray(R, dtype=float)
    lam = np.asarray(lam, dtype=float)
    Rinv = np.asarray(Rinv, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or R.shape != (n, n) or Rinv.shape != (n, n) or lam.shape != (n,):
        raise ValueError("eigen_abs: decomposition dimensions do not match the matrix")
    return (R * np.abs(lam)) @ Rinv
