"""Uncertainty product at t = 0 as the coherent amplitude grows.

The energy-like family stays near hbar^2/4 over a wide range of z, while the
oscillator-like family departs early.  Past z ~ 19 even the energy-like
product drifts more than 25% above its minimum.

Run: python3 demos/03_uncertainty_scan.py
"""
import numpy as np

from morsesqueeze.morse import LadderVariant
from morsesqueeze.observables import build_tables, dispersions
from morsesqueeze.presets import get_preset
from morsesqueeze.states import build_state

hcl = get_preset("hcl").params()
tables = build_tables(hcl)
print("    z   energy-like  oscillator-like   (Delta / (hbar^2/4))")
for z in np.arange(1, 26, 2, dtype=float):
    r = [dispersions(build_state(hcl, v, z, 0.0), tables).uncertainty / 0.25
         for v in (LadderVariant.ENERGY, LadderVariant.OSCILLATOR)]
    print(f"  {z:4.0f} {r[0]:12.4f} {r[1]:15.4f}")
