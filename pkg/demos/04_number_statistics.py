"""Mandel Q along gamma = tanh r.

Squeezed vacua are super-Poissonian (bunched) for every r > 0.  Displacing
to z = 2 on the oscillator-like ladder makes Q dip below zero first, then
rise again once squeezing dominates.

Run: python3 demos/04_number_statistics.py
"""
import math

import numpy as np

from morsesqueeze.errors import UndefinedStatisticError
from morsesqueeze.morse import LadderVariant
from morsesqueeze.presets import get_preset
from morsesqueeze.states import build_state, mandel_q

hcl = get_preset("hcl").params()
V = LadderVariant
print("    r   gamma   Q vac energy   Q vac osc   Q osc z=2")
for r in np.linspace(0.0, 2.0, 11):
    g = math.tanh(r)
    qs = []
    for v, z in ((V.ENERGY, 0.0), (V.OSCILLATOR, 0.0), (V.OSCILLATOR, 2.0)):
        try:
            qs.append(f"{mandel_q(build_state(hcl, v, z, g)):11.4f}")
        except UndefinedStatisticError:
            qs.append(f"{'undefined':>11}")
    print(f"  {r:4.1f} {g:6.3f} " + "  ".join(qs))

rs = np.linspace(0.0, 2.0, 201)
q = [mandel_q(build_state(hcl, V.OSCILLATOR, 2.0, math.tanh(r))) for r in rs]
i = int(np.argmin(q))
print(f"\nminimum Q = {q[i]:.3f} at r = {rs[i]:.2f} (gamma = {math.tanh(rs[i]):.3f})")
