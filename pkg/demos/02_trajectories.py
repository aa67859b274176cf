"""Mean position and dispersion along a period, for both ladder variants.

A coherent state (z, gamma) = (2, 0) built on the energy-like ladder stays
close to minimum uncertainty; the oscillator-like one spreads.  Squeezed
vacua (z = 0) oscillate in their dispersions while <x> barely moves.

Run: python3 demos/02_trajectories.py
"""
import numpy as np

from morsesqueeze.morse import LadderVariant
from morsesqueeze.observables import build_tables, trajectory
from morsesqueeze.presets import get_preset
from morsesqueeze.states import build_state

hcl = get_preset("hcl").params()
tables = build_tables(hcl)
times = np.linspace(0.0, 1.0, 11)


def show(variant, z, gamma):
    pts = trajectory(build_state(hcl, variant, z, gamma), tables, times)
    print(f"\n{variant.value}-like, z = {z}, gamma = {gamma}")
    print("     t     <x>      <p>     Delta")
    for p in pts:
        print(f"  {p.t:4.1f} {p.x_mean:8.4f} {p.p_mean:8.4f} {p.uncertainty:8.4f}")


show(LadderVariant.ENERGY, 2.0, 0.0)
show(LadderVariant.OSCILLATOR, 2.0, 0.0)
for g in (0.2, 0.5, 0.7):
    show(LadderVariant.ENERGY, 0.0, g)
