"""Transmit, noise, and receive beamformer contracts."""

import math

import numpy as np
import pytest

from conftest import pipeline, random_config
from risdm.beamforming import (
    InsufficientAntennasError,
    an_nullspace_design,
    design_beamformers,
    eve_combiner_parts,
    lansr_an,
    max_sv_design,
    slnr_transmit,
    three_way_combiner_parts,
    zf_mrc_eve,
    zf_mrc_three_way,
)
from risdm.channels import EffectiveChannels, build_channels, effective_channels
from risdm.geometry import Placement, build_geometry, default_config, default_placement
from risdm.ris import reflections_for


def random_unit(rng, n, count=1):
    v = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


class TestMaxSv:
    def make_eff(self, rng, na=6, nb=5, ne=4):
        def mat(rows, cols):
            return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
        return EffectiveChannels(h_a=mat(na, nb), h_b=mat(nb, na),
                                 h_e1=mat(ne, na), h_e2=mat(ne, nb))

    def test_rank_one_channel_recovers_factors(self, rng):
        u = random_unit(rng, 5)[0]
        v = random_unit(rng, 6)[0]
        h_b = 0.37 * np.outer(u, v.conj())
        eff = EffectiveChannels(h_a=h_b.conj().T, h_b=h_b, h_e1=np.eye(4, 6), h_e2=np.eye(4, 5))
        v_at, v_br, _, _ = max_sv_design(eff)
        assert abs(abs(v.conj() @ v_at) - 1.0) < 1e-10
        assert abs(abs(u.conj() @ v_br) - 1.0) < 1e-10

    def test_achieves_largest_singular_value(self, rng):
        eff = self.make_eff(rng)
        v_at, v_br, v_bt, v_ar = max_sv_design(eff)
        s_b = np.linalg.svd(eff.h_b, compute_uv=False)
        s_a = np.linalg.svd(eff.h_a, compute_uv=False)
        assert abs(v_br.conj() @ eff.h_b @ v_at) == pytest.approx(s_b[0], abs=1e-10)
        assert abs(v_ar.conj() @ eff.h_a @ v_bt) == pytest.approx(s_a[0], abs=1e-10)

    def test_beats_random_probe_pairs(self, rng):
        eff = self.make_eff(rng)
        v_at, v_br, _, _ = max_sv_design(eff)
        achieved = abs(v_br.conj() @ eff.h_b @ v_at) ** 2
        tx = random_unit(rng, eff.h_b.shape[1], 10_000)
        rx = random_unit(rng, eff.h_b.shape[0], 10_000)
        probe = np.abs(np.einsum("ij,ij->i", rx.conj(), tx @ eff.h_b.T)) ** 2
        assert achieved >= probe.max() - 1e-12

    def test_zero_channel_rejected(self):
        eff = EffectiveChannels(h_a=np.zeros((4, 4)), h_b=np.zeros((4, 4)),
                                h_e1=np.zeros((4, 4)), h_e2=np.zeros((4, 4)))
        with pytest.raises(Exception):
            max_sv_design(eff)


class TestAnNullspace:
    def test_already_orthogonal(self):
        w, fallback = an_nullspace_design(np.eye(4)[0], np.eye(4)[1].astype(complex))
        assert not fallback
        assert np.allclose(w, np.eye(4)[1])

    def test_parallel_falls_back(self, rng):
        v = random_unit(rng, 5)[0]
        w, fallback = an_nullspace_design(v, v)
        assert fallback
        assert abs(v.conj() @ w) < 1e-10
        assert abs(np.linalg.norm(w) - 1.0) < 1e-12

    def test_orthogonality_and_leakage_optimality(self, rng):
        for _ in range(10):
            v = random_unit(rng, 8)[0]
            h = random_unit(rng, 8)[0]
            w, fallback = an_nullspace_design(v, h)
            assert not fallback
            assert abs(v.conj() @ w) < 1e-12
            assert abs(np.linalg.norm(w) - 1.0) < 1e-12
            # best unit vector orthogonal to v: compare against projected probes
            probes = random_unit(rng, 8, 10_000)
            probes = probes - np.outer(probes @ v.conj(), v)
            probes /= np.linalg.norm(probes, axis=1, keepdims=True)
            leak = np.abs(probes @ h.conj())
            assert abs(h.conj() @ w) >= leak.max() - 1e-12


class TestEveCombiner:
    def test_orthogonal_arrivals_reduce_to_steering(self, rng):
        # arrival angles with cos theta on a 2/Ne lattice: steering vectors
        # are exactly orthogonal at d/lambda = 1/2
        cos_values = [0.75, 0.25, -0.25, -0.75]
        angles = [math.acos(c) for c in cos_values]
        placement = default_placement()
        pinned = {
            "i1->e": {"theta_r": angles[0]},
            "i2->e": {"theta_r": angles[1]},
            "a->e": {"theta_r": angles[2]},
            "b->e": {"theta_r": angles[3]},
        }
        cfg = default_config(Ne=4, placement=Placement(
            positions=placement.positions, orientations=placement.orientations, pinned=pinned))
        geom = build_geometry(cfg)
        channels = build_channels(geom, cfg)
        refls = reflections_for("gpg", geom, cfg)
        eff = effective_channels(channels, *refls)
        v_at, _, v_bt, _ = max_sv_design(eff)
        vecs, weights, dropped = eve_combiner_parts(channels, refls, v_at, v_bt, cfg)
        steer = [channels.arrival_steering(tx, "e") for tx in ("i1", "i2", "a", "b")]
        for v, h in zip(vecs, steer):
            corr = abs(h.conj() @ v) / np.linalg.norm(v)
            assert corr == pytest.approx(1.0, abs=1e-9)

    def test_zf_nulls_and_unit_weights(self, default_cfg):
        geom = build_geometry(default_cfg)
        channels = build_channels(geom, default_cfg)
        refls = reflections_for("gpg", geom, default_cfg)
        eff = effective_channels(channels, *refls)
        v_at, _, v_bt, _ = max_sv_design(eff)
        vecs, weights, dropped = eve_combiner_parts(channels, refls, v_at, v_bt, default_cfg)
        steer = [channels.arrival_steering(tx, "e") for tx in ("i1", "i2", "a", "b")]
        for i, v in enumerate(vecs):
            if dropped[i]:
                continue
            for j, h in enumerate(steer):
                if j != i:
                    assert abs(h.conj() @ v) < 1e-9
        for w, drop in zip(weights, dropped):
            if not drop and w != 0.0:
                assert abs(abs(w) - 1.0) < 1e-12

    def test_insufficient_antennas(self, default_cfg):
        cfg = default_config(Ne=3)
        geom = build_geometry(cfg)
        channels = build_channels(geom, cfg)
        refls = reflections_for("gpg", geom, cfg)
        eff = effective_channels(channels, *refls)
        v_at, _, v_bt, _ = max_sv_design(eff)
        with pytest.raises(InsufficientAntennasError):
            zf_mrc_eve(channels, refls, v_at, v_bt, cfg)


class TestLeakageDesigns:
    def slnr_value(self, channels, cfg, v):
        # independent evaluation of the quotient the design maximizes
        g = channels.gain
        m = channels.mat
        num = (g("a", "i1") * np.abs(m("a", "i1") @ v) ** 2).sum() \
            + (g("a", "i2") * np.abs(m("a", "i2") @ v) ** 2).sum() \
            + (g("a", "b") * np.abs(m("a", "b") @ v) ** 2).sum()
        den = (g("a", "e") * np.abs(m("a", "e") @ v) ** 2).sum() \
            + cfg.sigma2_e_mw / (cfg.beta1 * cfg.pa_mw)
        return num / den

    def test_dominant_link_alignment(self):
        placement = default_placement()
        pinned = {  # push every Alice-side link except a->i1 far away
            "a->i2": {"distance": 1e5},
            "a->b": {"distance": 1e5},
            "a->e": {"distance": 1e5},
        }
        cfg = default_config(placement=Placement(
            positions=placement.positions, orientations=placement.orientations, pinned=pinned))
        geom = build_geometry(cfg)
        channels = build_channels(geom, cfg)
        v = slnr_transmit(channels, cfg, "a")
        h = channels.departure_steering("a", "i1")
        assert abs(h.conj() @ v) > 0.999

    def test_beats_random_probes(self, rng, default_cfg):
        geom = build_geometry(default_cfg)
        channels = build_channels(geom, default_cfg)
        v = slnr_transmit(channels, default_cfg, "a")
        best = self.slnr_value(channels, default_cfg, v)
        probes = random_unit(rng, default_cfg.Na, 10_000)
        values = [self.slnr_value(channels, default_cfg, p) for p in probes[:2000]]
        assert best >= max(values) - 1e-10 * abs(best)

    def test_scale_invariance(self, default_cfg):
        # scaling all gains and sigma^2 together must not move the argmax
        geom = build_geometry(default_cfg)
        channels = build_channels(geom, default_cfg)
        v1 = slnr_transmit(channels, default_cfg, "a")
        scaled = default_config(
            pathloss_alpha=default_cfg.pathloss_alpha * 10.0,
            sigma2_e_dbm=default_cfg.sigma2_e_dbm + 10.0,
        )
        channels2 = build_channels(build_geometry(scaled), scaled)
        v2 = slnr_transmit(channels2, scaled, "a")
        assert abs(abs(v1.conj() @ v2) - 1.0) < 1e-9

    def test_lansr_unit_norm_and_probes(self, rng, default_cfg):
        geom = build_geometry(default_cfg)
        channels = build_channels(geom, default_cfg)
        for side in ("a", "b"):
            w = lansr_an(channels, default_cfg, side)
            assert abs(np.linalg.norm(w) - 1.0) < 1e-12

    def test_lansr_quotient_beats_message_beam(self, default_cfg):
        # the noise design maximizes its own ratio, so in particular it
        # beats the message beamformer evaluated on that ratio
        from risdm.beamforming import _leakage_matrices

        geom = build_geometry(default_cfg)
        channels = build_channels(geom, default_cfg)
        desired, eve = _leakage_matrices(channels, default_cfg, "a")
        noise = default_cfg.sigma2_b_mw / ((1 - default_cfg.beta1) * default_cfg.pa_mw)
        denom = desired + noise * np.eye(default_cfg.Na)

        def quotient(x):
            return float((x.conj() @ eve @ x).real / (x.conj() @ denom @ x).real)

        w = lansr_an(channels, default_cfg, "a")
        v = slnr_transmit(channels, default_cfg, "a")
        assert quotient(w) >= quotient(v) - 1e-12 * abs(quotient(w))

    def test_beta_bounds(self, default_cfg):
        geom = build_geometry(default_cfg)
        channels = build_channels(geom, default_cfg)
        with pytest.raises(ValueError):
            slnr_transmit(channels, default_config(beta1=0.0), "a")
        with pytest.raises(ValueError):
            lansr_an(channels, default_config(beta1=1.0), "a")


class TestThreeWayCombiner:
    def test_zf_nulls(self, default_cfg):
        geom = build_geometry(default_cfg)
        channels = build_channels(geom, default_cfg)
        refls = reflections_for("gpg", geom, default_cfg)
        v_at = slnr_transmit(channels, default_cfg, "a")
        vecs, weights, dropped = three_way_combiner_parts(
            channels, refls, v_at, default_cfg, "b")
        steer = [channels.arrival_steering(tx, "b") for tx in ("i1", "i2", "a")]
        for i, v in enumerate(vecs):
            if dropped[i]:
                continue
            for j, h in enumerate(steer):
                if j != i:
                    assert abs(h.conj() @ v) < 1e-9

    def test_insufficient_antennas(self):
        cfg = default_config(Nb=2)
        geom = build_geometry(cfg)
        channels = build_channels(geom, cfg)
        refls = reflections_for("gpg", geom, cfg)
        v_at = slnr_transmit(channels, cfg, "a")
        with pytest.raises(InsufficientAntennasError):
            zf_mrc_three_way(channels, refls, v_at, cfg, "b")

    def test_coherent_recombination_oracle(self, default_cfg):
        # achieved message magnitude vs. an independently recomputed
        # phase-aligned branch sum
        geom = build_geometry(default_cfg)
        channels = build_channels(geom, default_cfg)
        refls = reflections_for("gpg", geom, default_cfg)
        eff = effective_channels(channels, *refls)
        v_at = slnr_transmit(channels, default_cfg, "a")
        v_br = zf_mrc_three_way(channels, refls, v_at, default_cfg, "b")
        achieved = abs(v_br.conj() @ eff.h_b @ v_at)

        t1, t2 = refls[0].matrix(), refls[1].matrix()
        branch_mats = [
            math.sqrt(channels.cascade_gain("a", "i1", "b")) * channels.mat("i1", "b") @ t1 @ channels.mat("a", "i1"),
            math.sqrt(channels.cascade_gain("a", "i2", "b")) * channels.mat("i2", "b") @ t2 @ channels.mat("a", "i2"),
            math.sqrt(channels.gain("a", "b")) * channels.mat("a", "b"),
        ]
        vecs, weights, dropped = three_way_combiner_parts(
            channels, refls, v_at, default_cfg, "b")
        signals = [abs(v.conj() @ bm @ v_at) for v, bm in zip(vecs, branch_mats)]
        norm = np.linalg.norm(sum(np.conj(w) * v for w, v in zip(weights, vecs)))
        oracle = sum(signals) / norm
        assert achieved >= 0.999 * oracle


class TestFullSets:
    @pytest.mark.parametrize("method", ["max-sv", "leakage"])
    def test_unit_norms_random_geometries(self, rng, method):
        for _ in range(10):
            cfg = random_config(rng, m=32)
            _, _, _, _, bf = pipeline(cfg, method=method)
            for v in (bf.v_at, bf.v_bt, bf.w_a, bf.w_b, bf.v_ar, bf.v_br, bf.v_er):
                assert abs(np.linalg.norm(v) - 1.0) < 1e-12

    def test_max_sv_an_orthogonality(self, rng):
        for _ in range(10):
            cfg = random_config(rng, m=32)
            _, _, _, _, bf = pipeline(cfg, method="max-sv")
            assert abs(bf.v_at.conj() @ bf.w_a) < 1e-10
            assert abs(bf.v_bt.conj() @ bf.w_b) < 1e-10

    def test_unknown_method(self, default_cfg):
        geom = build_geometry(default_cfg)
        channels = build_channels(geom, default_cfg)
        refls = reflections_for("gpg", geom, default_cfg)
        with pytest.raises(ValueError):
            design_beamformers(channels, refls, default_cfg, "mystery")
