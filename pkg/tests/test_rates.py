"""Scalar-form and matrix-form rate agreement, plus objective properties."""

import math
from dataclasses import replace

import numpy as np
import pytest

from conftest import pipeline, pipeline_gains, random_config, random_gains
from risdm.channels import EffectiveChannels
from risdm.geometry import default_config
from risdm.rates import ScalarGains, rate_objective, rates_matrix_form, scalar_gains, ssr


class TestScalarGains:
    def test_power_linearity(self, default_cfg):
        _, _, _, eff, bf = pipeline(default_cfg)
        g1 = scalar_gains(eff, bf, default_cfg)
        doubled = default_cfg.replace(Pa_dbm=default_cfg.Pa_dbm + 10 * math.log10(2))
        g2 = scalar_gains(eff, bf, doubled)  # same frozen beamformers
        for name in ("s3", "s4", "s5", "s7"):
            assert getattr(g2, name) == pytest.approx(2 * getattr(g1, name), rel=1e-12)
        for name in ("s1", "s2", "s6", "s8"):
            assert getattr(g2, name) == pytest.approx(getattr(g1, name), rel=1e-12)

    def test_max_sv_nulls_an_at_legit_receivers(self, default_cfg):
        # the noise beam lies in the message null space, so s4 << s3
        g = pipeline_gains(default_cfg, method="max-sv")
        assert g.s4 < 1e-20 * g.s3
        assert g.s2 < 1e-20 * g.s1

    def test_zero_channels_zero_gains(self, default_cfg):
        _, _, _, _, bf = pipeline(default_cfg)
        zero = EffectiveChannels(
            h_a=np.zeros((default_cfg.Na, default_cfg.Nb)),
            h_b=np.zeros((default_cfg.Nb, default_cfg.Na)),
            h_e1=np.zeros((default_cfg.Ne, default_cfg.Na)),
            h_e2=np.zeros((default_cfg.Ne, default_cfg.Nb)),
        )
        g = scalar_gains(zero, bf, default_cfg)
        assert g.as_tuple() == (0.0,) * 8

    def test_validation(self):
        with pytest.raises(ValueError):
            ScalarGains(-1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1)
        with pytest.raises(ValueError):
            ScalarGains(1, 1, 1, 1, 1, 1, 1, 1, 0.0, 1, 1)


class TestObjective:
    def test_no_message_power_gives_zero(self, rng):
        g = random_gains(rng)
        assert ssr(0.0, 0.0, g) == 0.0

    def test_eavesdropper_free_reduction(self):
        g = ScalarGains(4.0, 1.0, 9.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0)
        want = math.log2(1 + 4.0) + math.log2(1 + 9.0)
        assert ssr(1.0, 1.0, g) == pytest.approx(want, abs=1e-12)

    def test_hand_evaluated_point(self):
        g = ScalarGains(4, 1, 4, 1, 1, 1, 1, 1, 1, 1, 1)
        # R_a = R_b = log2(1 + 2/1.5); R_e = 2 log2(1 + 0.5/2)
        want = 2 * math.log2(1 + 0.5 * 4 / (0.5 * 1 + 1)) - 2 * math.log2(1 + 0.5 / 2)
        assert ssr(0.5, 0.5, g) == pytest.approx(want, abs=1e-12)

    def test_out_of_range_rejected(self, rng):
        g = random_gains(rng)
        with pytest.raises(ValueError):
            ssr(1.2, 0.5, g)

    def test_clamped_nonnegative(self, rng):
        for _ in range(200):
            g = random_gains(rng)
            b1, b2 = rng.uniform(0, 1, size=2)
            assert ssr(b1, b2, g) >= 0.0

    def test_monotone_in_eavesdropper_gain(self, rng):
        for _ in range(50):
            g = random_gains(rng)
            b1, b2 = rng.uniform(0.1, 0.9, size=2)
            values = []
            for s5 in np.linspace(g.s5, g.s5 + 10, 30):
                values.append(ssr(b1, b2, replace(g, s5=float(s5))))
            assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))

    def test_vectorized_matches_scalar(self, rng):
        g = random_gains(rng)
        betas = rng.uniform(0, 1, size=64)
        vec = rate_objective(betas, betas, g)
        for b, v in zip(betas, vec):
            assert v == pytest.approx(rate_objective(float(b), float(b), g), abs=1e-14)

    def test_swap_symmetry_under_symmetric_gains(self, rng):
        # with s1=s3, s2=s4, s5=s6, s7=s8, sigma_a=sigma_b the objective is
        # invariant under (beta1, beta2) swap
        s1, s2, s5, s7 = 3.0, 0.7, 0.4, 1.1
        g = ScalarGains(s1, s2, s1, s2, s5, s5, s7, s7, 0.3, 0.3, 0.2)
        for _ in range(100):
            b1, b2 = rng.uniform(0, 1, size=2)
            assert rate_objective(b1, b2, g) == pytest.approx(
                rate_objective(b2, b1, g), abs=1e-12)


class TestMatrixFormOracle:
    @pytest.mark.parametrize("method", ["max-sv", "leakage"])
    def test_agreement_on_default(self, default_cfg, method):
        _, _, _, eff, bf = pipeline(default_cfg, method=method)
        g = scalar_gains(eff, bf, default_cfg)
        ra, rb, re = rates_matrix_form(eff, bf, default_cfg)
        s_form = rate_objective(default_cfg.beta1, default_cfg.beta2, g)
        assert s_form == pytest.approx(ra + rb - re, abs=1e-10)

    def test_agreement_random_scenarios(self, rng):
        for i in range(20):
            cfg = random_config(rng, m=int(rng.integers(8, 65)))
            method = "max-sv" if i % 2 == 0 else "leakage"
            _, _, _, eff, bf = pipeline(cfg, method=method)
            g = scalar_gains(eff, bf, cfg)
            ra, rb, re = rates_matrix_form(eff, bf, cfg)
            s_form = rate_objective(cfg.beta1, cfg.beta2, g)
            assert abs(s_form - (ra + rb - re)) < 1e-10

    def test_all_zero_channels(self, default_cfg):
        _, _, _, _, bf = pipeline(default_cfg)
        zero = EffectiveChannels(
            h_a=np.zeros((default_cfg.Na, default_cfg.Nb)),
            h_b=np.zeros((default_cfg.Nb, default_cfg.Na)),
            h_e1=np.zeros((default_cfg.Ne, default_cfg.Na)),
            h_e2=np.zeros((default_cfg.Ne, default_cfg.Nb)),
        )
        assert rates_matrix_form(zero, bf, default_cfg) == (0.0, 0.0, 0.0)

    def test_beta2_zero_kills_alice_rate(self, default_cfg):
        cfg = default_config(beta2=0.0)
        _, _, _, eff, bf = pipeline(cfg)
        ra, _, _ = rates_matrix_form(eff, bf, cfg)
        assert ra == 0.0


class TestUnimodality:
    def test_single_local_maximum_default_scenario(self, default_cfg):
        # scenario-level check, not a theorem: the diagonal objective has
        # one interior peak on the default setup
        g = pipeline_gains(default_cfg, method="max-sv")
        beta = np.linspace(0.0, 1.0, 1001)
        values = rate_objective(beta, beta, g)
        diffs = np.diff(values)
        rising = diffs > 1e-12
        switches = int(np.sum(rising[:-1] & ~rising[1:]))
        assert switches == 1
