"""Moving mesh geometry and node trajectory updates.

Node positions x_{i+1/2}(t) move with interface velocities obtained by
arithmetically averaging the local mesh-velocity function of the two
interface traces (the Roe average reduces to the plain average in
Lagrangian gas dynamics, unlike the Eulerian density-weighted form).
Choosing zero velocity recovers a static Eulerian mesh.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ConfigurationError, MeshTanglingError


class MovingMesh:
    """Strictly increasing node positions; widths are derived on demand."""

    def __init__(self, nodes):
        nodes = np.asarray(nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ConfigurationError("a mesh needs at least two node positions")
        if not np.all(np.diff(nodes) > 0.0):
            bad = int(np.argmin(np.diff(nodes)))
            raise MeshTanglingError(bad, float(np.diff(nodes)[bad]), np.nan)
        self.nodes = nodes

    @property
    def n_cells(self):
        return self.nodes.size - 1

    @property
    def widths(self):
        return np.diff(self.nodes)

    @property
    def centers(self):
        return 0.5 * (self.nodes[:-1] + self.nodes[1:])

    @property
    def x_left(self):
        return float(self.nodes[0])

    @property
    def x_right(self):
        return float(self.nodes[-1])

    def copy(self):
        return MovingMesh(self.nodes.copy())


def init_uniform(x_left, x_right, n_cells) -> MovingMesh:
    """Equispaced mesh of n_cells control volumes on [x_left, x_right]."""
    if not x_left < x_right:
        raise ConfigurationError(f"invalid domain bounds [{x_left}, {x_right}]")
    if n_cells < 1:
        raise ConfigurationError(f"cell count must be >= 1, got {n_cells}")
    return MovingMesh(np.linspace(x_left, x_right, int(n_cells) + 1))


def interface_velocity(q_minus, q_plus, system, selector=None):
    """Arithmetic average of the local mesh velocity of the two traces."""
    vm = system.mesh_velocity(q_minus, selector)
    vp = system.mesh_velocity(q_plus, selector)
    return 0.5 * (vm + vp)


def advance_nodes(mesh: MovingMesh, velocity_traces, weights, dt) -> MovingMesh:
    """Move every node by dt * sum_k alpha_k V(tau_k).

    velocity_traces has shape (n_nodes, n_time_nodes) holding the interface
    velocity at the temporal quadrature nodes; weights are the matching
    quadrature weights, so constant and polynomial-in-time velocities are
    integrated exactly to the design order.  Raises MeshTanglingError if any
    cell width would become non-positive (the caller owns the retry policy).
    """
    velocity_traces = np.asarray(velocity_traces, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if velocity_traces.shape[0] != mesh.nodes.size:
        raise ConfigurationError("one velocity trace per node is required")
    displacement = dt * velocity_traces @ weights
    new_nodes = mesh.nodes + displacement
    dx = np.diff(new_nodes)
    if np.any(dx <= 0.0):
        bad = int(np.argmin(dx))
        raise MeshTanglingError(bad, float(dx[bad]), dt)
    return MovingMesh(new_nodes)


def extend_nodes(mesh: MovingMesh, n_ghost, bc):
    """Node positions including n_ghost ghost cells per side.

    Periodic ghosts wrap the real cell widths; every other boundary type
    mirrors them, which keeps ghost geometry consistent with the ghost
    values supplied by the driver.
    """
    if n_ghost == 0:
        return mesh.nodes.copy()
    w = mesh.widths
    if bc == "periodic":
        left_w = w[-n_ghost:]
        right_w = w[:n_ghost]
    else:
        left_w = w[:n_ghost][::-1]
        right_w = w[-n_ghost:][::-1]
    left = mesh.nodes[0] - np.cumsum(left_w[::-1])[::-1]
    right = mesh.nodes[-1] + np.cumsum(right_w)
    return np.concatenate([left, mesh.nodes, right])
