"""How far the truncated states are from exact eigenstates.

Applying (A- + gamma A+ - z) to a built state leaves amplitudes only on the
top two bound levels.  Their size grows with squeezing and, for the
oscillator-like ladder, with |z|.

Run: python3 demos/06_almost_eigenstate.py
"""
from morsesqueeze.morse import LadderVariant
from morsesqueeze.presets import get_preset
from morsesqueeze.states import build_state, residual

hcl = get_preset("hcl").params()
print("variant          z  gamma   residual_norm")
for v in (LadderVariant.ENERGY, LadderVariant.OSCILLATOR):
    for z in (1.0, 3.0, 5.0):
        for g in (0.0, 0.3, 0.5):
            r = residual(build_state(hcl, v, z, g)).residual_norm
            print(f"{v.value:<12} {z:5.1f} {g:6.2f} {r:15.3e}")
