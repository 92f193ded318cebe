import numpy as np
import pytest

from ferroent.graphs import ChainParams, make_graph, random_graph, ring_chain, star_graph
from ferroent.hilbert import (
    apply_hamiltonian,
    build_sector_hamiltonian,
    dicke_vector,
    sector_basis,
    sector_dimension,
)
from oracles import kron_hamiltonian, permutation_hamiltonian, sector_block

EDGE = make_graph(2, [(0, 1, -1.0)])


class TestSectorBasis:
    def test_empty_sector(self):
        assert sector_basis(4, 0).states == (0,)

    def test_half_filled_four_spins(self):
        assert sector_basis(4, 2).states == (0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100)

    def test_full_sector(self):
        assert sector_basis(3, 3).states == (0b111,)

    def test_dimensions_sum_to_full_space(self):
        for n in range(1, 9):
            assert sum(sector_dimension(n, k) for k in range(n + 1)) == 2**n

    def test_states_ascending(self):
        basis = sector_basis(7, 3)
        assert list(basis.states) == sorted(basis.states)
        assert all(int(m).bit_count() == 3 for m in basis.states)

    def test_bad_n_up(self):
        with pytest.raises(ValueError):
            sector_basis(4, 5)


class TestBuildHamiltonian:
    def test_single_edge_midsector(self):
        h = build_sector_hamiltonian(EDGE, 1)
        assert np.array_equal(h, np.array([[0.25, -0.5], [-0.5, 0.25]]))
        values = np.linalg.eigvalsh(h)
        assert values == pytest.approx([-0.25, 0.75])

    def test_all_down_sector_is_quarter_coupling_sum(self):
        g = random_graph(6, 0.6, (-2.0, -0.2), seed=5)
        h = build_sector_hamiltonian(g, 0, b_field=0.3)
        expected = 0.25 * g.coupling_sum + 0.3 * (0 - 3.0)
        assert h.shape == (1, 1)
        assert h[0, 0] == pytest.approx(expected, rel=1e-14)

    def test_ring4_ground_energy(self):
        g = ring_chain(ChainParams(n_spins=4, g1=-1.0))
        h = build_sector_hamiltonian(g, 2)
        assert h.shape == (6, 6)
        assert np.linalg.eigvalsh(h)[0] == pytest.approx(-1.0, abs=1e-12)

    def test_exactly_symmetric(self):
        g = random_graph(7, 0.4, (-3.0, -0.1), seed=2)
        for n_up in range(8):
            h = build_sector_hamiltonian(g, n_up, b_field=0.7)
            assert np.array_equal(h, h.T)

    @pytest.mark.parametrize("b_field", [0.0, 0.8])
    def test_matches_operator_product_oracle(self, b_field):
        graphs = [
            ring_chain(ChainParams(n_spins=5, g1=-1.0, g2=-2.0)),
            star_graph(5, -1.5),
            random_graph(6, 0.5, (-2.0, -0.3), seed=3),
            make_graph(4, [(0, 1, 1.0), (2, 3, -0.5)]),  # mixed signs on purpose
        ]
        for g in graphs:
            full = kron_hamiltonian(g, b_field)
            for n_up in range(g.n_spins + 1):
                basis = sector_basis(g.n_spins, n_up)
                h = build_sector_hamiltonian(g, n_up, b_field)
                assert np.max(np.abs(h - sector_block(full, basis))) < 1e-13

    def test_matches_permutation_identity_oracle(self):
        g = random_graph(6, 0.5, (-2.0, -0.3), seed=8)
        full = permutation_hamiltonian(g, 0.4)
        for n_up in range(7):
            basis = sector_basis(6, n_up)
            h = build_sector_hamiltonian(g, n_up, 0.4)
            assert np.max(np.abs(h - sector_block(full, basis))) < 1e-13

    def test_flip_symmetry_at_zero_field(self):
        g = random_graph(6, 0.5, (-2.0, -0.3), seed=4)
        for n_up in range(7):
            low = np.linalg.eigvalsh(build_sector_hamiltonian(g, n_up))
            high = np.linalg.eigvalsh(build_sector_hamiltonian(g, 6 - n_up))
            assert low == pytest.approx(high, abs=1e-12)


class TestDickeVector:
    def test_boundary_sectors_are_single_states(self):
        assert np.array_equal(dicke_vector(5, 0), [1.0])
        assert np.array_equal(dicke_vector(5, 5), [1.0])

    def test_uniform_amplitudes(self):
        v = dicke_vector(4, 2)
        assert v == pytest.approx(np.full(6, 1 / np.sqrt(6)))

    def test_is_common_eigenvector_of_ferromagnets(self):
        graphs = [
            ring_chain(ChainParams(n_spins=6, g1=-1.0, g2=-0.5, g3=-2.0)),
            star_graph(6, -1.0),
            random_graph(6, 0.5, (-2.0, -0.3), seed=6),
        ]
        b_field = 0.9
        for g in graphs:
            for n_up in range(7):
                v = dicke_vector(6, n_up)
                hv = apply_hamiltonian(g, n_up, b_field, v)
                energy = 0.25 * g.coupling_sum + b_field * (n_up - 3.0)
                assert hv == pytest.approx(energy * v, abs=1e-12)


class TestApplyHamiltonian:
    def test_zero_vector(self):
        v = np.zeros(sector_dimension(4, 2))
        assert np.array_equal(apply_hamiltonian(ring_chain(ChainParams(n_spins=4, g1=-1.0)), 2, 0.0, v), v)

    def test_single_edge_explicit(self):
        out = apply_hamiltonian(EDGE, 1, 0.0, np.array([1.0, 0.0]))
        assert out == pytest.approx([0.25, -0.5])

    def test_matches_dense_matrix(self):
        g = random_graph(6, 0.5, (-2.0, -0.3), seed=1)
        rng = np.random.default_rng(0)
        for n_up in range(7):
            h = build_sector_hamiltonian(g, n_up, 0.6)
            v = rng.normal(size=h.shape[0])
            assert apply_hamiltonian(g, n_up, 0.6, v) == pytest.approx(h @ v, rel=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_hamiltonian(EDGE, 1, 0.0, np.zeros(3))
