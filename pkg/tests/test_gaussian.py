import math

import numpy as np
import pytest

from fockchan.channels import ChannelKind, ChannelParams, amplifier, attenuator
from fockchan.gaussian import (
    OMEGA,
    VarianceMatrix,
    amplifier_gaussian_threshold,
    attenuator_gaussian_threshold,
    breaking_line,
    ebits_to_mu,
    evolve_variance,
    numeric_ppt_threshold,
    ppt_separable,
    tmsv_entanglement_entropy,
    tmsv_variance,
)
from helpers import random_physical_variance

MU_ONE = 0.5185005622263894  # ebits_to_mu(1.0), frozen


class TestVarianceMatrix:
    def test_constructor_checks(self):
        VarianceMatrix(np.eye(4))
        with pytest.raises(ValueError):
            VarianceMatrix(np.eye(3))
        with pytest.raises(ValueError):
            VarianceMatrix(np.eye(4) + np.triu(np.full((4, 4), 1e-6), 1))
        bad = np.eye(4)
        bad[0, 0] = np.inf
        with pytest.raises(ValueError):
            VarianceMatrix(bad)

    def test_vacuum_physical(self):
        v = VarianceMatrix(np.eye(4))
        assert v.is_physical()
        assert v.uncertainty_min_eigenvalue() == pytest.approx(0.0, abs=1e-12)

    def test_below_vacuum_unphysical(self):
        assert not VarianceMatrix(0.5 * np.eye(4)).is_physical()

    def test_random_states_physical(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            assert random_physical_variance(rng).is_physical()


class TestTmsv:
    def test_zero_squeezing_is_vacuum(self):
        assert np.array_equal(tmsv_variance(0.0).entries, np.eye(4))

    def test_structure(self):
        mu = 0.66
        v = tmsv_variance(mu).entries
        c, s = math.cosh(2 * mu), math.sinh(2 * mu)
        assert np.allclose(np.diag(v), [c, c, c, c], rtol=1e-15)
        assert v[0, 2] == pytest.approx(s, rel=1e-15)
        assert v[1, 3] == pytest.approx(-s, rel=1e-15)
        assert v[0, 1] == 0.0 and v[0, 3] == 0.0

    def test_purity(self):
        # pure Gaussian state: det V = 1 and the uncertainty bound is saturated
        v = tmsv_variance(0.9)
        assert np.linalg.det(v.entries) == pytest.approx(1.0, rel=1e-10)
        assert v.uncertainty_min_eigenvalue() == pytest.approx(0.0, abs=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            tmsv_variance(-0.1)


class TestEvolveVariance:
    def test_vacuum_through_attenuator(self):
        out = evolve_variance(VarianceMatrix(np.eye(4)), attenuator(0.8, 0.5))
        assert np.allclose(out.entries, 1.5 * np.eye(4), rtol=1e-15)

    def test_affine_formula(self):
        v = tmsv_variance(0.7)
        for params in (attenuator(0.6, 1.1), amplifier(1.3, 0.4)):
            out = evolve_variance(v, params)
            k2 = params.kappa ** 2
            want = k2 * v.entries + (abs(1.0 - k2) + params.noise) * np.eye(4)
            assert np.abs(out.entries - want).max() == 0.0

    def test_order_preserving(self):
        # V >= W stays ordered under the affine action
        rng = np.random.default_rng(32)
        for _ in range(20):
            w = random_physical_variance(rng)
            bump = rng.normal(size=(4, 4))
            v = VarianceMatrix(w.entries + bump @ bump.T)
            params = attenuator(rng.uniform(0.1, 1.0), rng.exponential(0.5))
            dv = evolve_variance(v, params).entries - evolve_variance(w, params).entries
            assert np.linalg.eigvalsh(dv)[0] >= -1e-10

    def test_rejects_unphysical(self):
        with pytest.raises(ValueError):
            evolve_variance(VarianceMatrix(0.5 * np.eye(4)), attenuator(0.9))


class TestPptSeparable:
    def test_vacuum_separable(self):
        assert ppt_separable(VarianceMatrix(np.eye(4)))

    def test_squeezed_entangled(self):
        assert not ppt_separable(tmsv_variance(0.5))

    def test_flip_matches_closed_form(self):
        for mu, kind, kappa in [
            (0.5185005622263894, ChannelKind.ATTENUATOR, 0.8),
            (1.1, ChannelKind.ATTENUATOR, 0.5),
            (0.7, ChannelKind.AMPLIFIER, 1.15),
        ]:
            if kind is ChannelKind.ATTENUATOR:
                want = attenuator_gaussian_threshold(mu, kappa)
            else:
                want = amplifier_gaussian_threshold(mu, kappa)
            got = numeric_ppt_threshold(mu, kind, kappa)
            assert got == pytest.approx(want, abs=1e-6)
            v0 = tmsv_variance(mu)
            assert not ppt_separable(evolve_variance(v0, ChannelParams(kind, kappa, want - 1e-4)))
            assert ppt_separable(evolve_variance(v0, ChannelParams(kind, kappa, want + 1e-4)))

    def test_rejects_unphysical(self):
        with pytest.raises(ValueError):
            ppt_separable(VarianceMatrix(0.1 * np.eye(4)))


class TestThresholdFormulas:
    def test_attenuator_values(self):
        assert attenuator_gaussian_threshold(0.0, 0.8) == 0.0
        got = attenuator_gaussian_threshold(MU_ONE, 0.8)
        assert got == pytest.approx(0.64 * (1.0 - math.exp(-2.0 * MU_ONE)), rel=1e-12)
        # saturation toward the breaking line
        assert attenuator_gaussian_threshold(30.0, 0.7) == pytest.approx(0.49, abs=1e-12)

    def test_amplifier_values(self):
        assert amplifier_gaussian_threshold(0.0, 1.0) == 0.0
        got = amplifier_gaussian_threshold(1.0, 1.1)
        assert got == pytest.approx(2.0 - 1.21 * (1.0 + math.exp(-2.0)), rel=1e-12)
        # clamped once the bracket goes negative
        assert amplifier_gaussian_threshold(1.0, 1.5) == 0.0

    def test_monotone_in_squeezing(self):
        grid = np.linspace(0.0, 4.0, 30)
        att = [attenuator_gaussian_threshold(m, 0.9) for m in grid]
        assert all(b >= a for a, b in zip(att, att[1:]))

    def test_domains(self):
        with pytest.raises(ValueError):
            attenuator_gaussian_threshold(-0.1, 0.5)
        with pytest.raises(ValueError):
            attenuator_gaussian_threshold(1.0, 1.2)
        with pytest.raises(ValueError):
            amplifier_gaussian_threshold(1.0, 0.9)


class TestBreakingLine:
    def test_values(self):
        assert breaking_line(ChannelKind.ATTENUATOR, 0.8) == pytest.approx(0.64, rel=1e-15)
        assert breaking_line(ChannelKind.AMPLIFIER, 1.2) == pytest.approx(0.56, rel=1e-13)
        # raw line value: negative beyond sqrt(2)
        assert breaking_line(ChannelKind.AMPLIFIER, 1.5) == pytest.approx(-0.25, rel=1e-13)

    def test_infinite_squeezing_limit(self):
        for kappa in np.linspace(0.1, 1.0, 7):
            assert attenuator_gaussian_threshold(30.0, kappa) == pytest.approx(
                breaking_line(ChannelKind.ATTENUATOR, kappa), abs=1e-12
            )
        for kappa in np.linspace(1.0, 1.4, 7):
            assert amplifier_gaussian_threshold(30.0, kappa) == pytest.approx(
                breaking_line(ChannelKind.AMPLIFIER, kappa), abs=1e-12
            )

    def test_domains(self):
        with pytest.raises(ValueError):
            breaking_line(ChannelKind.ATTENUATOR, 1.1)
        with pytest.raises(ValueError):
            breaking_line(ChannelKind.AMPLIFIER, 0.9)


class TestEntropyInverse:
    def test_endpoints(self):
        assert tmsv_entanglement_entropy(0.0) == 0.0
        assert ebits_to_mu(0.0) == 0.0

    def test_one_ebit(self):
        mu1 = ebits_to_mu(1.0)
        assert mu1 == pytest.approx(MU_ONE, abs=1e-9)
        assert tmsv_entanglement_entropy(mu1) == pytest.approx(1.0, abs=1e-9)

    def test_round_trip(self):
        for ebits in (0.25, 0.5, 1.0, 2.0, 4.0):
            mu = ebits_to_mu(ebits)
            assert tmsv_entanglement_entropy(mu) == pytest.approx(ebits, abs=1e-8)

    def test_large_mu_stable(self):
        # the naive cosh/sinh difference cancels catastrophically up here
        e = tmsv_entanglement_entropy(20.0)
        assert 55.0 < e < 60.0
        grid = [tmsv_entanglement_entropy(m) for m in np.linspace(0.1, 20.0, 40)]
        assert all(b > a for a, b in zip(grid, grid[1:]))

    def test_domains(self):
        with pytest.raises(ValueError):
            ebits_to_mu(-0.5)
        with pytest.raises(ValueError):
            ebits_to_mu(1e6)
        with pytest.raises(ValueError):
            tmsv_entanglement_entropy(-1.0)


class TestSeparabilitySign:
    def test_matches_analytic_threshold(self):
        rng = np.random.default_rng(33)
        checked = 0
        for _ in range(200):
            mu = float(rng.uniform(0.0, 3.0))
            if rng.random() < 0.5:
                kind = ChannelKind.ATTENUATOR
                kappa = float(rng.uniform(0.05, 1.0))
                thr = attenuator_gaussian_threshold(mu, kappa)
            else:
                kind = ChannelKind.AMPLIFIER
                kappa = float(rng.uniform(1.0, 1.5))
                thr = amplifier_gaussian_threshold(mu, kappa)
            a = float(rng.uniform(0.0, 2.0))
            if abs(a - thr) < 1e-7:
                continue  # undecided at the boundary
            got = ppt_separable(evolve_variance(tmsv_variance(mu), ChannelParams(kind, kappa, a)))
            assert got == (a > thr)
            checked += 1
        assert checked > 150
