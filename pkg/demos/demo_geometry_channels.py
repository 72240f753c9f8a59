"""Walk through the default scenario: placement, link geometry, channels.

Five nodes on a plane: Alice exchanging messages with Bob through two
reflecting surfaces while Eve listens.  Every directed link becomes a
rank-1 line-of-sight matrix; the effective end-to-end channels sum the two
reflected cascades and the direct path.
"""

import numpy as np

from risdm import build_channels, build_geometry, default_config, effective_channels
from risdm.geometry import link_class
from risdm.ris import reflections_for, zero_reflection

cfg = default_config()
print("Scenario:", f"Na=Nb=Ne={cfg.Na}, M={cfg.M}, Pa=Pb={cfg.Pa_dbm} dBm, "
      f"beta={cfg.beta1}, d/lambda={cfg.d_over_lambda}")
print(f"Noise: sigma2_a = sigma2_b = {cfg.sigma2_a_mw:.3e} mW "
      f"= {cfg.noise_ratio:g} x sigma2_e\n")

geom = build_geometry(cfg)
print(f"{'link':>8} {'class':>7} {'dist [m]':>9} {'theta_t':>8} {'theta_r':>8} {'gain':>10}")
for (tx, rx), link in sorted(geom.items()):
    print(f"{tx + '->' + rx:>8} {link_class(tx, rx):>7} {link.distance:9.2f} "
          f"{np.degrees(link.theta_t):7.1f}d {np.degrees(link.theta_r):7.1f}d {link.gain:10.3e}")

channels = build_channels(geom, cfg)
print("\nEvery link matrix is rank 1 with unit spectral norm:")
for key in (("a", "i1"), ("a", "b"), ("i1", "e")):
    s = np.linalg.svd(channels.mat(*key), compute_uv=False)
    print(f"  {key[0]}->{key[1]}: shape {channels.mat(*key).shape}, "
          f"sigma_1 = {s[0]:.6f}, sigma_2 = {s[1]:.2e}")

off = zero_reflection(cfg.M)
eff_off = effective_channels(channels, off, off)
refls = reflections_for("gpg", geom, cfg)
eff_on = effective_channels(channels, *refls)

print("\nEffective Alice->Bob channel (spectral norm):")
print(f"  surfaces off : {np.linalg.svd(eff_off.h_b, compute_uv=False)[0]:.3e} "
      "(direct path only)")
print(f"  surfaces on  : {np.linalg.svd(eff_on.h_b, compute_uv=False)[0]:.3e} "
      "(two aligned cascades + direct)")
print(f"  rank bound: 4th singular value = "
      f"{np.linalg.svd(eff_on.h_b, compute_uv=False)[3]:.2e} (sum of three rank-1 terms)")
