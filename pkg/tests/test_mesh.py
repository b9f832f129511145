import numpy as np
import pytest

from alefv.exceptions import ConfigurationError, MeshTanglingError
from alefv.mesh import MovingMesh, advance_nodes, extend_nodes, init_uniform, interface_velocity
from alefv.numerics import gauss_legendre


class _ConstVel:
    def __init__(self, value):
        self.value = value

    def mesh_velocity(self, q, selector=None):
        return self.value


class _EulerLikeVel:
    def mesh_velocity(self, q, selector=None):
        q = np.asarray(q)
        return q[..., 1] / q[..., 0]


class TestInitUniform:
    def test_small(self):
        mesh = init_uniform(-2.0, 2.0, 4)
        assert mesh.nodes == pytest.approx([-2, -1, 0, 1, 2])

    def test_fine_widths(self):
        mesh = init_uniform(0.0, 9.0, 2000)
        assert mesh.widths == pytest.approx(np.full(2000, 0.0045), abs=5e-15)

    def test_single_cell(self):
        mesh = init_uniform(0.0, 1.0, 1)
        assert mesh.n_cells == 1
        assert mesh.widths == pytest.approx([1.0])

    def test_bad_bounds(self):
        with pytest.raises(ConfigurationError):
            init_uniform(1.0, 1.0, 10)
        with pytest.raises(ConfigurationError):
            init_uniform(0.0, 1.0, 0)


class TestInterfaceVelocity:
    def test_symmetric(self):
        v = interface_velocity(np.array([1.0, 1.0, 2.5]), np.array([1.0, 1.0, 2.5]), _EulerLikeVel())
        assert v == pytest.approx(1.0)

    def test_arithmetic_mean(self):
        qm = np.array([1.0, 0.2, 1.0])
        qp = np.array([1.0, 0.4, 1.0])
        assert interface_velocity(qm, qp, _EulerLikeVel()) == pytest.approx(0.3)

    def test_eulerian_mode(self):
        qm = np.array([1.0, 5.0, 3.0])
        qp = np.array([2.0, -4.0, 9.0])
        assert interface_velocity(qm, qp, _ConstVel(0.0)) == 0.0


class TestAdvanceNodes:
    def test_zero_velocity(self):
        mesh = init_uniform(0.0, 1.0, 5)
        rule = gauss_legendre(3)
        traces = np.zeros((6, 3))
        out = advance_nodes(mesh, traces, rule.weights, 0.1)
        assert out.nodes == pytest.approx(mesh.nodes)

    def test_constant_translation(self):
        mesh = init_uniform(0.0, 1.0, 4)
        rule = gauss_legendre(2)
        traces = np.full((5, 2), 0.7)
        out = advance_nodes(mesh, traces, rule.weights, 0.25)
        assert out.nodes == pytest.approx(mesh.nodes + 0.7 * 0.25, abs=1e-15)

    def test_linear_velocity_exact(self):
        # V(t) = t over [0, 1] integrates to 1/2 exactly under Gauss quadrature
        mesh = init_uniform(0.0, 10.0, 2)
        rule = gauss_legendre(2)
        traces = np.tile(rule.points, (3, 1))
        out = advance_nodes(mesh, traces, rule.weights, 1.0)
        assert out.nodes == pytest.approx(mesh.nodes + 0.5, abs=1e-14)

    def test_tangling_rejected(self):
        mesh = init_uniform(0.0, 1.0, 2)
        rule = gauss_legendre(1)
        traces = np.array([[0.0], [-2.0], [0.0]])  # middle node crashes left
        with pytest.raises(MeshTanglingError) as err:
            advance_nodes(mesh, traces, rule.weights, 1.0)
        assert err.value.cell == 0
        assert "dt" in str(err.value)

    def test_total_length_periodic_consistency(self):
        # equal boundary displacement preserves total length
        mesh = init_uniform(-1.0, 1.0, 8)
        rng = np.random.default_rng(2)
        rule = gauss_legendre(3)
        traces = rng.uniform(-0.2, 0.2, (9, 3))
        traces[-1] = traces[0]
        out = advance_nodes(mesh, traces, rule.weights, 0.1)
        assert out.x_right - out.x_left == pytest.approx(2.0, abs=1e-14)


class TestExtendNodes:
    def test_periodic_wrap(self):
        mesh = MovingMesh(np.array([0.0, 0.1, 0.3, 0.6, 1.0]))
        ext = extend_nodes(mesh, 2, "periodic")
        # left ghosts take the last two cell widths (0.3, 0.4)
        assert ext[:3] == pytest.approx([0.0 - 0.3 - 0.4, 0.0 - 0.4, 0.0])
        # right ghosts take the first two cell widths (0.1, 0.2)
        assert ext[-3:] == pytest.approx([1.0, 1.1, 1.3])

    def test_mirror(self):
        mesh = MovingMesh(np.array([0.0, 0.1, 0.3, 0.6, 1.0]))
        ext = extend_nodes(mesh, 2, "transmissive")
        assert ext[:3] == pytest.approx([-0.3, -0.1, 0.0])
        assert ext[-3:] == pytest.approx([1.0, 1.4, 1.7])

    def test_zero_ghosts(self):
        mesh = init_uniform(0.0, 1.0, 3)
        assert extend_nodes(mesh, 0, "periodic") == pytest.approx(mesh.nodes)
