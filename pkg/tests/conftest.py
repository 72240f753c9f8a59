"""Shared generators: random planar scenarios and random link-budget gains."""

import math

import numpy as np
import pytest

from risdm.beamforming import design_beamformers
from risdm.channels import build_channels, effective_channels
from risdm.geometry import (
    NODES,
    InvalidGeometryError,
    Placement,
    build_geometry,
    default_config,
)
from risdm.rates import ScalarGains, scalar_gains
from risdm.ris import reflections_for


def random_placement(rng, box=120.0, min_dist=5.0):
    """Random node positions in a box with a minimum pairwise separation."""
    while True:
        positions = {}
        ok = True
        for node in NODES:
            for _ in range(200):
                p = tuple(rng.uniform(-box / 2, box / 2, size=2))
                if all(math.hypot(p[0] - q[0], p[1] - q[1]) >= min_dist
                       for q in positions.values()):
                    positions[node] = p
                    break
            else:
                ok = False
                break
        if ok:
            return Placement(
                positions=positions,
                orientations={n: float(rng.uniform(0, 2 * math.pi)) for n in NODES},
            )


def random_config(rng, na=None, nb=None, ne=None, m=None, **overrides):
    """A full random scenario with a valid geometry (retries end-fire layouts)."""
    for _ in range(100):
        cfg = default_config(
            Na=int(na if na is not None else rng.integers(4, 17)),
            Nb=int(nb if nb is not None else rng.integers(4, 17)),
            Ne=int(ne if ne is not None else rng.integers(4, 17)),
            M=int(m if m is not None else rng.integers(8, 257)),
            beta1=float(rng.uniform(0.05, 0.95)),
            beta2=float(rng.uniform(0.05, 0.95)),
            placement=random_placement(rng),
            **overrides,
        )
        try:
            build_geometry(cfg)
        except InvalidGeometryError:
            continue
        return cfg
    raise RuntimeError("could not draw a valid random scenario")


def random_gains(rng):
    """Generic positive link-budget scalars (healthy, non-degenerate sextic)."""
    s = 10.0 ** rng.uniform(-2.0, 0.7, size=8)
    sigma = 10.0 ** rng.uniform(-2.0, 0.0, size=3)
    return ScalarGains(*map(float, s), *map(float, sigma))


def pipeline(cfg, ris_mode="gpg", method="max-sv", seed=0):
    """Run geometry -> channels -> reflections -> beamformers for one scenario."""
    geom = build_geometry(cfg)
    channels = build_channels(geom, cfg)
    refls = reflections_for(ris_mode, geom, cfg, seed=seed)
    eff = effective_channels(channels, *refls)
    bf = design_beamformers(channels, refls, cfg, method, eff=eff)
    return geom, channels, refls, eff, bf


def pipeline_gains(cfg, ris_mode="gpg", method="max-sv", seed=0):
    _, _, _, eff, bf = pipeline(cfg, ris_mode=ris_mode, method=method, seed=seed)
    return scalar_gains(eff, bf, cfg)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def default_cfg():
    return default_config()
