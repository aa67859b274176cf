"""Molecule presets.

A preset is either an explicit ``nu`` or a pair of spectroscopic constants
(cm^-1) whose ratio gives ``nu``.  Extra presets can be read from an INI-style
file with one section per molecule::

    [hcl]
    omega_e = 2989.74
    omega_e_x_e = 52.05

    [toy]
    nu = 12.3
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigurationError
from .morse import ModelParams, params_from_spectroscopic


@dataclass(frozen=True)
class MoleculePreset:
    name: str
    nu: float | None = None
    omega_e: float | None = None
    omega_e_x_e: float | None = None

    def params(self, beta: float = 1.0, hbar: float = 1.0, m_r: float = 0.5) -> ModelParams:
        if self.nu is not None:
            return ModelParams(nu=self.nu, beta=beta, hbar=hbar, m_r=m_r)
        return params_from_spectroscopic(self.omega_e, self.omega_e_x_e, beta=beta,
                                         hbar=hbar, m_r=m_r)


# ratios reproduce nu ~ 57.44 (H35Cl, X 1Sigma+) and nu ~ 524.55 (133Cs2)
BUILTIN_PRESETS: dict[str, MoleculePreset] = {
    "hcl": MoleculePreset("hcl", omega_e=2989.74, omega_e_x_e=52.05),
    "cs2": MoleculePreset("cs2", omega_e=42.02, omega_e_x_e=0.080107),
}


def _preset_from_section(name: str, section) -> MoleculePreset:
    try:
        if "nu" in section:
            return MoleculePreset(name, nu=float(section["nu"]))
        return MoleculePreset(name, omega_e=float(section["omega_e"]),
                              omega_e_x_e=float(section["omega_e_x_e"]))
    except (KeyError, ValueError) as exc:
        raise ConfigurationError(f"preset [{name}] needs nu or omega_e/omega_e_x_e: {exc}") from exc


# section names used by other consumers of the same file (the CLI's run options)
RESERVED_SECTIONS = frozenset({"run"})


def load_presets(path: str | Path) -> dict[str, MoleculePreset]:
    """Read presets from ``path``; returned dict includes the built-ins."""
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise ConfigurationError(f"cannot read preset file {path}")
    presets = dict(BUILTIN_PRESETS)
    for name in parser.sections():
        if name.lower() in RESERVED_SECTIONS:
            continue
        presets[name.lower()] = _preset_from_section(name.lower(), parser[name])
    return presets


def get_preset(name: str, presets: dict[str, MoleculePreset] | None = None) -> MoleculePreset:
    table = BUILTIN_PRESETS if presets is None else presets
    try:
        return table[name.lower()]
    except KeyError:
        raise ConfigurationError(f"unknown molecule {name!r}; known: {sorted(table)}") from None
