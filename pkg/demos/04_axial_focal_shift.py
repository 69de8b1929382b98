"""Where the focal spot actually lands along the axis.

A finite array focused at z0 peaks short of z0: the focal lobe shifts
toward the array. This script tracks the on-axis response for a dense
and an optimally spread array over two depth ranges.

Over a wide range that reaches close to the array, the global maximum of
|E(0, z)| sits on the near-range envelope (the field grows like 1/r as z
shrinks) for both arrays, so the global peak says little about the lobe.
Restricting the range to the focal region shows the real story: the
dense array's lobe peaks far short of the focus, while the spread
array's lobe lands within a few wavelengths of it.
"""

import numpy as np

from nearfocus import (
    ArraySpec,
    FocusScenario,
    axial_profile,
    optimal_spacing,
    wave_from_frequency,
)

wave = wave_from_frequency(6e9)
lam = wave.wavelength
z0 = 200 * lam
N = 40
d_opt = optimal_spacing(N, z0, wave)

scenarios = {
    "dense  d = 0.50 wl": FocusScenario(
        tx=ArraySpec(wave=wave, num_elements=N, spacing=0.5 * lam), focal_distance=z0
    ),
    "spread d = 2.24 wl": FocusScenario(
        tx=ArraySpec(wave=wave, num_elements=N, spacing=d_opt), focal_distance=z0
    ),
}

for label, z_lo, z_hi in (
    ("wide range 20..400 wl (global maximum)", 20 * lam, 400 * lam),
    ("focal region 100..400 wl (focal lobe)", 100 * lam, 400 * lam),
):
    print(label)
    for name, scen in scenarios.items():
        profile = axial_profile(scen, (z_lo, z_hi), samples=8001)
        print(
            f"  {name}: peak at {profile.z_peak / lam:7.2f} wl,"
            f" shift {profile.focal_shift / lam:+8.2f} wl"
        )
    print()

print("on-axis magnitude of the dense array, normalized (focal region):")
scen = scenarios["dense  d = 0.50 wl"]
profile = axial_profile(scen, (100 * lam, 400 * lam), samples=1201)
mags = profile.magnitude / profile.magnitude.max()
for z, m in zip(profile.z_samples[::100], mags[::100]):
    print(f"  z = {z / lam:6.1f} wl  |{'=' * int(round(60 * m))}")
