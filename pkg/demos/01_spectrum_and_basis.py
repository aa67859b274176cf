"""Bound spectrum, eigenbasis quality and the harmonic limit.

Run: python3 demos/01_spectrum_and_basis.py
"""
import math

import numpy as np

from morsesqueeze.morse import energies, ho_limit_energy, overlap_matrix
from morsesqueeze.presets import get_preset

hcl = get_preset("hcl").params()
cs2 = get_preset("cs2").params()
print(f"HCl: nu = {hcl.nu:.4f}, highest bound level [p] = {hcl.n_max}")
print(f"Cs2: nu = {cs2.nu:.4f}, highest bound level [p] = {cs2.n_max}")

e = energies(hcl)
print("\nHCl levels (hbar = 1, m_r = 1/2, beta = 1):")
for n in (0, 1, 2, 10, 20, hcl.n_max):
    print(f"  E_{n:<2d} = {e[n]:12.6f}")
gaps = np.diff(e)
print(f"spacing shrinks from {gaps[0]:.4f} to {gaps[-1]:.4f}: the anharmonic ladder")

g = overlap_matrix(hcl)
print(f"\nmax |<m|n> - delta| over {len(g)} normalizable levels: "
      f"{np.max(np.abs(g - np.eye(len(g)))):.1e}")

print("\nharmonic limit, force constant k' = 1:")
omega = math.sqrt(1 / 0.5)
for nu in (1e2, 1e3, 1e4):
    beta = math.sqrt(2 * math.sqrt(0.5) / nu)
    err = ho_limit_energy(0, 1.0, beta, 1.0, 0.5) / (omega / 2) - 1
    print(f"  nu = {nu:>7.0f}: relative error of the ground level {err:+.3e}")
