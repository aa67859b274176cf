"""Probability density |Psi(x, t)|^2 on x in [-1, 2] over one period.

Prints the peak position and height at a few times for the (z, gamma) = (1, 0)
states; the energy-like packet keeps its shape better.

Run: python3 demos/05_density.py
"""
import numpy as np

from morsesqueeze.morse import LadderVariant
from morsesqueeze.presets import get_preset
from morsesqueeze.states import build_state, wavefunction

hcl = get_preset("hcl").params()
x = np.linspace(-1.0, 2.0, 301)
for v in (LadderVariant.ENERGY, LadderVariant.OSCILLATOR):
    st = build_state(hcl, v, 1.0, 0.0)
    print(f"\n{v.value}-like, z = 1, gamma = 0")
    print("     t   peak x   peak height")
    for t in np.linspace(0.0, 1.0, 6):
        d = np.abs(wavefunction(st, x, t)) ** 2
        print(f"  {t:4.1f} {x[d.argmax()]:8.3f} {d.max():12.4f}")
