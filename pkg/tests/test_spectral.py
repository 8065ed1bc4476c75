import numpy as np
import pytest

from chainkit import (
    build_chain,
    classify,
    decompose,
    errors,
    evolve,
    perron_report,
    spectral_evolve,
    stationary_basis,
    taxonomy,
)
from chainkit.numlin import eigen_from_schur, real_schur
from chainkit.spectral import SpectralDecomposition

from conftest import random_recurrent_chain


def decomp_of_matrix(m):
    """Taxonomy test helper: wrap an arbitrary square matrix."""
    pairs = eigen_from_schur(real_schur(m))
    values = pairs.values
    order = tuple(sorted(range(len(values)),
                         key=lambda j: (-abs(values[j]), -values[j].real,
                                        values[j].imag)))
    unit = int(np.sum(np.abs(values - 1.0) < 1e-8))
    return SpectralDecomposition(pairs=pairs, order=order, unit_multiplicity=unit,
                                 left_row_sums=pairs.left_complex().sum(axis=0))


class TestDecompose:
    def test_swap_chain(self, swap_chain):
        dec = decompose(swap_chain)
        assert np.allclose(np.sort_complex(dec.values), [-1, 1], atol=1e-12)

    def test_directed_cycle_roots_of_unity(self, cycle3_chain):
        dec = decompose(cycle3_chain)
        want = np.sort_complex(np.exp(2j * np.pi * np.arange(3) / 3))
        assert np.allclose(np.sort_complex(dec.values), want, atol=1e-10)

    def test_two_recurrent_classes_unit_multiplicity(self):
        p = np.zeros((4, 4))
        p[0, 1] = p[1, 0] = 1.0
        p[2, 3] = p[3, 2] = 1.0
        dec = decompose(build_chain("abcd", p))
        assert dec.unit_multiplicity == 2

    def test_sorted_view(self, phd_chain):
        vals = decompose(phd_chain).sorted_values()
        mods = np.abs(vals)
        assert np.all(np.diff(mods) <= 1e-12)
        assert np.isclose(vals[0], 1.0, atol=1e-10)

    def test_unit_multiplicity_matches_recurrent_classes(self):
        rng = np.random.default_rng(55)
        for _ in range(60):
            chain = random_recurrent_chain(rng)
            st = classify(chain)
            dec = decompose(chain)
            n_rec = sum(st.recurrent)
            assert dec.unit_multiplicity == n_rec
            rep = perron_report(dec, recurrent_classes=n_rec)
            assert rep["radius_ok"]
            assert rep["unit_multiplicity_matches_recurrent_classes"]

    def test_left_sums_vanish_for_irreducible_nonunit(self):
        rng = np.random.default_rng(56)
        for _ in range(40):
            n = int(rng.integers(2, 7))
            p = rng.random((n, n)) + 1e-3
            chain = build_chain([str(i) for i in range(n)],
                                p / p.sum(1, keepdims=True))
            dec = decompose(chain)
            for j, lam in enumerate(dec.values):
                if abs(lam - 1.0) > 1e-8:
                    l = dec.pairs.left_complex()[:, j]
                    assert abs(dec.left_row_sums[j]) <= 1e-8 * np.linalg.norm(l)


class TestTaxonomy:
    def test_six_reference_points(self):
        # eigenvalues 1, -1, 0.3, -0.4, 0.5 e^{i pi/3}, and a unit-circle pair
        blocks = np.zeros((7, 7))
        blocks[0, 0] = 1.0
        blocks[1, 1] = -1.0
        blocks[2, 2] = 0.3
        blocks[3, 3] = -0.4
        r, th = 0.5, np.pi / 3
        blocks[4:6, 4:6] = [[r * np.cos(th), r * np.sin(th)],
                            [-r * np.sin(th), r * np.cos(th)]]
        blocks[6, 6] = 0.0
        dec = decomp_of_matrix(blocks)
        labels = dict(zip(np.round(dec.values, 6), taxonomy(dec)))
        assert labels[1.0] == "persistent_structure"
        assert labels[-1.0] == "persistent_oscillation"
        assert labels[0.3] == "transient_structure"
        assert labels[-0.4] == "transient_oscillation"
        assert labels[0.0] == "transient_structure"
        cplx = [v for v in labels if abs(v.imag) > 1e-9]
        assert all(labels[v] == "transient_cycle" for v in cplx)

    def test_persistent_cycle_on_directed_cycle(self, cycle3_chain):
        dec = decompose(cycle3_chain)
        labels = taxonomy(dec)
        by_val = dict(zip(dec.values, labels))
        for lam, lab in by_val.items():
            if abs(lam - 1) < 1e-8:
                assert lab == "persistent_structure"
            else:
                assert lab == "persistent_cycle"

    def test_epsilon_band_pulls_to_persistent(self):
        m = np.diag([1.0 - 1e-10, 0.5])
        labels = taxonomy(decomp_of_matrix(m))
        assert "persistent_structure" in labels


class TestSpectralEvolve:
    def test_matches_direct_evolution(self, phd_chain):
        dec = decompose(phd_chain)
        mu = np.array([1.0, 0, 0, 0])
        for k in (0, 1, 7, 64):
            got = spectral_evolve(dec, mu, k).evolved
            assert np.allclose(got, evolve(phd_chain, mu, k), atol=1e-9)

    def test_long_run_reaches_stationary(self, phd_chain):
        dec = decompose(phd_chain)
        basis = stationary_basis(phd_chain, classify(phd_chain))
        out = spectral_evolve(dec, [0.1, 0.2, 0.3, 0.4], 256)
        assert np.allclose(out.evolved, basis.vectors[0], atol=1e-8)
        assert np.allclose(out.persistent_part, basis.vectors[0], atol=1e-8)
        assert np.allclose(out.transient_part, 0.0, atol=1e-8)

    def test_swap_chain_oscillates(self, swap_chain):
        dec = decompose(swap_chain)
        for k in range(6):
            out = spectral_evolve(dec, [1.0, 0.0], k).evolved
            want = [1.0, 0.0] if k % 2 == 0 else [0.0, 1.0]
            assert np.allclose(out, want, atol=1e-10)

    def test_stationary_is_fixed_point(self, rev_chain):
        basis = stationary_basis(rev_chain, classify(rev_chain))
        pi = basis.vectors[0]
        dec = decompose(rev_chain)
        for k in (1, 17):
            assert np.allclose(spectral_evolve(dec, pi, k).evolved, pi, atol=1e-10)

    def test_parts_reconstruct(self, nonrev_chain):
        dec = decompose(nonrev_chain)
        mu = np.full(4, 0.25)
        out = spectral_evolve(dec, mu, 9)
        assert np.allclose(out.persistent_part + out.transient_part, out.evolved,
                           atol=1e-12)
        assert np.allclose(out.evolved, evolve(nonrev_chain, mu, 9), atol=1e-8)

    def test_refuses_defective_spectrum(self):
        p = build_chain("abc", [[0.25, 0.625, 0.125],
                                [0.125, 0.25, 0.625],
                                [0.125, 0.125, 0.75]])
        dec = decompose(p)
        assert not dec.pairs.diagonalizable
        with pytest.raises(errors.NotDiagonalizable):
            spectral_evolve(dec, np.full(3, 1 / 3), 4)

    def test_random_chains_k64(self):
        rng = np.random.default_rng(57)
        done = 0
        while done < 100:
            chain = random_recurrent_chain(rng, n_max=6)
            dec = decompose(chain)
            if not dec.pairs.diagonalizable:
                continue
            mu = rng.random(chain.n)
            mu /= mu.sum()
            for k in (1, 5, 64):
                assert np.allclose(spectral_evolve(dec, mu, k).evolved,
                                   evolve(chain, mu, k), atol=1e-8)
            done += 1
