"""Componentwise polynomial WENO reconstruction on irregular meshes.

Each cell assembles one small linear system per candidate stencil by
requiring integral conservation of a degree-M polynomial over every stencil
cell, written in the cell's own reference coordinate via the primitives of
the modal basis.  Oscillation indicators then blend the candidate
polynomials with data-dependent weights.  Because the mesh moves, stencil
matrices are reassembled every time step; at (M+1)^2 work per stencil this
is negligible next to the predictor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ReconstructionError
from .numerics import ModalBasis, oscillation_matrix

WENO_EPS = 1e-14
WENO_POWER = 8
LAMBDA_CENTRAL = 1e5
LAMBDA_SIDED = 1.0


@dataclass(frozen=True)
class Stencil:
    left: int
    right: int
    weight: float  # linear weight lambda_s


@dataclass(frozen=True)
class StencilConfig:
    degree: int
    stencils: tuple

    @property
    def n_stencils(self):
        return len(self.stencils)

    @property
    def max_extent(self):
        return max(max(s.left, s.right) for s in self.stencils)


def build_stencils(degree: int) -> StencilConfig:
    """Candidate stencils for degree M.

    Odd orders (even M) get one central stencil l = r = M/2; even orders get
    two, (floor(M/2)+1, floor(M/2)) and its mirror.  All configurations
    carry the fully one-sided stencils (M, 0) and (0, M).
    """
    M = int(degree)
    if M == 0:
        return StencilConfig(0, (Stencil(0, 0, LAMBDA_CENTRAL),))
    stencils = []
    if M % 2 == 0:
        stencils.append(Stencil(M // 2, M // 2, LAMBDA_CENTRAL))
    else:
        stencils.append(Stencil(M // 2 + 1, M // 2, LAMBDA_CENTRAL))
        stencils.append(Stencil(M // 2, M // 2 + 1, LAMBDA_CENTRAL))
    stencils.append(Stencil(M, 0, LAMBDA_SIDED))
    stencils.append(Stencil(0, M, LAMBDA_SIDED))
    return StencilConfig(M, tuple(stencils))


def _stencil_matrix(basis, xi_left, xi_right):
    """Rows Psi_m(xi_right) - Psi_m(xi_left) for every stencil cell.

    xi_left/right may carry arbitrary leading batch dimensions; the modal
    index lands on the last axis.
    """
    pl = basis.primitives(xi_left)
    pr = basis.primitives(xi_right)
    return np.moveaxis(pr - pl, 0, -1)


def reconstruct_stencil(i, stencil, nodes, averages, basis=None):
    """Modal coefficients of one candidate stencil of cell i.

    nodes/averages must already include whatever boundary extension the
    stencil needs (driver responsibility).  Solves the (M+1)x(M+1)
    conservation system per component.
    """
    M = stencil.left + stencil.right
    if basis is None:
        basis = ModalBasis(M)
    nodes = np.asarray(nodes, dtype=float)
    averages = np.asarray(averages, dtype=float)
    dx_i = nodes[i + 1] - nodes[i]
    cells = np.arange(i - stencil.left, i + stencil.right + 1)
    xi_l = (nodes[cells] - nodes[i]) / dx_i
    xi_r = (nodes[cells + 1] - nodes[i]) / dx_i
    A = _stencil_matrix(basis, xi_l, xi_r)
    b = (xi_r - xi_l)[:, None] * averages[cells]
    try:
        coeff = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise ReconstructionError(
            f"singular stencil system in cell {i}, stencil ({stencil.left},{stencil.right})"
        ) from exc
    return coeff


def oscillation_indicator(coeffs, sigma_matrix):
    """sigma_s = Sigma_lm w_l w_m per component; coeffs shape (..., M+1, nvar)."""
    return np.einsum("lm,...lv,...mv->...v", sigma_matrix, coeffs, coeffs)


def nonlinear_weights(sigmas, lams):
    """Normalized nonlinear weights from indicators and linear weights.

    sigmas: (..., S, nvar), lams: (S,).  Returns the same shape as sigmas
    with the stencil axis summing to one.
    """
    sigmas = np.asarray(sigmas, dtype=float)
    lams = np.asarray(lams, dtype=float)
    raw = lams[..., :, None] / (sigmas + WENO_EPS) ** WENO_POWER
    return raw / raw.sum(axis=-2, keepdims=True)


class WenoReconstructor:
    """Batched WENO reconstruction of all cells of a moving mesh.

    Tables (modal basis, oscillation matrix, stencil layout) are built once
    per degree and reused; geometry-dependent systems are assembled fresh on
    every call since the mesh deforms.
    """

    def __init__(self, degree):
        self.degree = int(degree)
        self.config = build_stencils(self.degree)
        self.basis = ModalBasis(self.degree)
        self.sigma_matrix = oscillation_matrix(self.degree)
        self.lams = np.array([s.weight for s in self.config.stencils])
        # row offsets per stencil, shape (S, M+1)
        self.offsets = np.array(
            [np.arange(-s.left, s.right + 1) for s in self.config.stencils], dtype=int
        )

    @property
    def n_ghost(self):
        return self.degree

    def candidate_coefficients(self, nodes_ext, averages_ext, n_cells):
        """Stencil coefficients for every interior cell; shape (N, S, M+1, nvar)."""
        M = self.degree
        G = self.n_ghost
        nvar = averages_ext.shape[-1]
        cells = np.arange(n_cells) + G
        # ext cell indices per (cell, stencil, row)
        idx = cells[:, None, None] + self.offsets[None, :, :]
        x_left_cell = nodes_ext[cells][:, None, None]
        dx_cell = (nodes_ext[cells + 1] - nodes_ext[cells])[:, None, None]
        xi_l = (nodes_ext[idx] - x_left_cell) / dx_cell
        xi_r = (nodes_ext[idx + 1] - x_left_cell) / dx_cell
        A = _stencil_matrix(self.basis, xi_l, xi_r)
        b = (xi_r - xi_l)[..., None] * averages_ext[idx]
        try:
            coeff = np.linalg.solve(A, b)
        except np.linalg.LinAlgError as exc:
            raise ReconstructionError("singular stencil system (degenerate mesh geometry)") from exc
        if not np.all(np.isfinite(coeff)):
            bad = np.argwhere(~np.isfinite(coeff))[0]
            raise ReconstructionError(
                f"non-finite reconstruction in cell {bad[0]}, stencil {bad[1]}"
            )
        return coeff

    def reconstruct(self, nodes_ext, averages_ext, n_cells):
        """WENO modal coefficients of all interior cells; shape (N, M+1, nvar)."""
        cand = self.candidate_coefficients(nodes_ext, averages_ext, n_cells)
        if self.config.n_stencils == 1:
            return cand[:, 0]
        sig = oscillation_indicator(cand, self.sigma_matrix)
        om = nonlinear_weights(sig, self.lams)
        return np.einsum("nsv,nsmv->nmv", om, cand)


def weno_reconstruct(i, nodes, averages, reconstructor):
    """Single-cell convenience wrapper around the batched path."""
    G = reconstructor.n_ghost
    lo = i - G
    hi = i + G + 1
    if lo < 0 or hi > len(averages):
        raise ReconstructionError(f"cell {i} lacks the ghost extension for degree {reconstructor.degree}")
    return reconstructor.reconstruct(
        np.asarray(nodes, dtype=float)[lo : hi + 1],
        np.asarray(averages, dtype=float)[lo:hi],
        1,
    )[0]
