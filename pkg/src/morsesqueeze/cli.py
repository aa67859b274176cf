"""Command-line front end emitting figure data as CSV or JSON.

Every output starts with the fully resolved run configuration (``#`` lines
in CSV, a ``config`` object in JSON) so a file can be regenerated from its
own header.  Exit status: 0 success, 2 usage/configuration, 3 numerics.
"""
from __future__ import annotations

import argparse
import configparser
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import __version__
from .errors import AccuracyError, MorseError, UndefinedStatisticError
from .morse import LadderVariant, ModelParams, energies, shifted_energy
from .observables import build_tables, dispersions, trajectory
from .presets import BUILTIN_PRESETS, MoleculePreset, get_preset, load_presets
from .states import build_state, mandel_q, residual, wavefunction

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """``"2"``, ``"1.5-0.3i"``, ``"0.2i"`` (``j`` also accepted)."""
    s = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}; use a+bi") from None


def _fmt_complex(v: complex) -> str:
    v = complex(v)
    if v.imag == 0:
        return repr(v.real)
    return f"{v.real!r}{'+' if v.imag >= 0 else '-'}{abs(v.imag)!r}i"


@dataclass
class RunConfig:
    command: str = "spectrum"
    molecule: str | None = None
    nu: float | None = None
    omega_e: float | None = None
    omega_e_xe: float | None = None
    variant: str = "energy"
    z: str = "0"
    gamma: str | None = None
    r: float | None = None
    t_min: float = 0.0
    t_max: float = 1.0
    t_steps: int = 200
    x_min: float = -1.0
    x_max: float = 2.0
    x_steps: int = 301
    scan: str = "z"
    range_lo: float | None = None
    range_hi: float | None = None
    steps: int = 26
    gamma_scan: bool = False
    format: str = "csv"
    out: str | None = None
    quad_order: int | None = None
    jobs: int = 1
    config: str | None = None

    # -- resolution ---------------------------------------------------------

    def gamma_value(self) -> complex:
        if self.r is not None:
            if self.gamma is not None:
                raise UsageError("give --gamma or --r, not both")
            return complex(math.tanh(self.r))
        g = parse_complex(self.gamma) if self.gamma is not None else 0j
        if not abs(g) < 1:
            raise UsageError(f"|gamma| must be < 1, got {g}")
        return g

    def z_value(self) -> complex:
        return parse_complex(self.z)

    def ladder(self) -> LadderVariant:
        try:
            return LadderVariant.parse(self.variant)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def preset(self) -> MoleculePreset:
        explicit = self.nu is not None or self.omega_e is not None
        name = (self.molecule or ("custom" if explicit else "hcl")).lower()
        if name == "custom":
            if self.nu is not None:
                return MoleculePreset("custom", nu=self.nu)
            if self.omega_e is None or self.omega_e_xe is None:
                raise UsageError("custom molecule needs --nu or --omega-e with --omega-e-xe")
            return MoleculePreset("custom", omega_e=self.omega_e, omega_e_x_e=self.omega_e_xe)
        if explicit:
            raise UsageError(f"--nu/--omega-e conflict with --molecule {name}; use custom")
        return get_preset(name, self._file_presets())

    def _file_presets(self):
        return load_presets(self.config) if self.config else BUILTIN_PRESETS

    def params(self) -> ModelParams:
        return self.preset().params()

    def time_grid(self) -> np.ndarray:
        return _grid("t", self.t_min, self.t_max, self.t_steps)

    def x_grid(self) -> np.ndarray:
        return _grid("x", self.x_min, self.x_max, self.x_steps)

    def validate(self) -> None:
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if self.quad_order is not None and self.quad_order < 2:
            raise UsageError("--quad-order must be >= 2")
        self.ladder()
        self.z_value()
        self.gamma_value()
        self.time_grid()
        self.x_grid()
        self.params()


def _grid(name: str, lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise UsageError(f"--{name}-steps must be >= 2")
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
        raise UsageError(f"need finite {name}_max > {name}_min, got [{lo}, {hi}]")
    return np.linspace(lo, hi, steps)


# -- config file + flags ---------------------------------------------------

_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, value: str):
    kind = _FIELD_TYPES[name]
    if "bool" in kind:
        return value.strip().lower() in ("1", "true", "yes", "on")
    if "int" in kind:
        return int(value)
    if "float" in kind:
        return float(value)
    return value


def _read_config_file(path: str) -> dict:
    """Values from the ``[run]`` section; other sections are molecule presets."""
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise UsageError(f"cannot read config file {path}")
    if not parser.has_section("run"):
        return {}
    out = {}
    for key, value in parser["run"].items():
        name = key.replace("-", "_")
        if name not in _FIELD_TYPES or name in ("command", "config"):
            raise UsageError(f"unknown key {key!r} in [run] of {path}")
        try:
            out[name] = _coerce(name, value)
        except ValueError:
            raise UsageError(f"bad value {value!r} for {key} in {path}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    m = common.add_argument_group("model")
    m.add_argument("--config", help="INI file: [run] defaults plus molecule sections")
    m.add_argument("--molecule", help="hcl, cs2, custom or a name from --config")
    m.add_argument("--nu", type=float)
    m.add_argument("--omega-e", dest="omega_e", type=float)
    m.add_argument("--omega-e-xe", dest="omega_e_xe", type=float)
    s = common.add_argument_group("state")
    s.add_argument("--variant", choices=["osc", "energy", "term"])
    s.add_argument("--z", help="eigenvalue z, e.g. 2 or 1.5+0.5i")
    s.add_argument("--gamma", help="squeezing gamma (|gamma| < 1), complex allowed")
    s.add_argument("--r", type=float, help="squeezing via gamma = tanh(r)")
    g = common.add_argument_group("grids")
    for axis, unit in (("t", "time"), ("x", "position")):
        g.add_argument(f"--{axis}-min", dest=f"{axis}_min", type=float)
        g.add_argument(f"--{axis}-max", dest=f"{axis}_max", type=float)
        g.add_argument(f"--{axis}-steps", dest=f"{axis}_steps", type=int,
                       help=f"number of {unit} samples")
    o = common.add_argument_group("output")
    o.add_argument("--format", choices=["csv", "json"])
    o.add_argument("--out", help="output path (default stdout)")
    o.add_argument("--quad-order", dest="quad_order", type=int,
                   help="trapezoid intervals for <x^2> (default: automatic)")
    o.add_argument("--jobs", type=int, help="worker threads for scans")

    parser = argparse.ArgumentParser(prog="morsesqueeze", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="levels n, E_n, e(n), eps_n")
    sub.add_parser("trajectory", parents=[common], help="means and variances over time")
    unc = sub.add_parser("uncertainty", parents=[common], help="Delta at t=0 over a z or gamma scan")
    unc.add_argument("--scan", choices=["z", "gamma"], default=argparse.SUPPRESS)
    dens = sub.add_parser("density", parents=[common], help="|Psi(x,t)|^2 on the x-t grid")
    dens.add_argument("--gamma-scan", dest="gamma_scan", action="store_true",
                      default=argparse.SUPPRESS,
                      help="scan gamma at t=t_min instead of time")
    mand = sub.add_parser("mandel", parents=[common], help="Mandel Q over r, gamma = tanh r")
    sub.add_parser("residual", parents=[common], help="truncation residual Lambda1, Lambda0")
    for p in (unc, dens, mand):
        p.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"),
                       default=argparse.SUPPRESS)
        p.add_argument("--steps", type=int, default=argparse.SUPPRESS)
    return parser


_SCAN_DEFAULTS = {"uncertainty": {"z": (0.0, 25.0), "gamma": (0.0, 0.9)},
                  "density": (0.0, 0.95), "mandel": (0.0, 2.0)}


def resolve_config(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    cfg = {}
    if "config" in ns:
        cfg.update(_read_config_file(ns["config"]))
    if "range" in ns:
        ns["range_lo"], ns["range_hi"] = ns.pop("range")
    cfg.update(ns)
    rc = RunConfig(**cfg)
    if rc.range_lo is None or rc.range_hi is None:
        d = _SCAN_DEFAULTS.get(rc.command)
        if isinstance(d, dict):
            d = d[rc.scan]
        if d is not None:
            rc.range_lo, rc.range_hi = d
    rc.validate()
    return rc


# -- commands --------------------------------------------------------------

class Table:
    def __init__(self, columns, rows, notes=()):
        self.columns = list(columns)
        self.rows = rows
        self.notes = list(notes)


def _scan_values(rc: RunConfig) -> np.ndarray:
    if rc.steps < 2:
        raise UsageError("--steps must be >= 2")
    if not rc.range_hi > rc.range_lo:
        raise UsageError(f"empty range [{rc.range_lo}, {rc.range_hi}]")
    return np.linspace(rc.range_lo, rc.range_hi, rc.steps)


def _map(rc: RunConfig, fn, items):
    if rc.jobs == 1:
        return [fn(v) for v in items]
    with ThreadPoolExecutor(max_workers=rc.jobs) as pool:
        return list(pool.map(fn, items))


def cmd_spectrum(rc: RunConfig) -> Table:
    pr = rc.params()
    e = energies(pr)
    rows = [[n, float(e[n]), shifted_energy(pr, n), pr.p - n] for n in range(pr.n_max + 1)]
    return Table(["n", "E_n", "e_n", "epsilon_n"], rows)


def _tables(rc: RunConfig, pr: ModelParams):
    return build_tables(pr, rc.quad_order)


def cmd_trajectory(rc: RunConfig) -> Table:
    pr = rc.params()
    state = build_state(pr, rc.ladder(), rc.z_value(), rc.gamma_value())
    pts = trajectory(state, _tables(rc, pr), rc.time_grid())
    rows = [[p.t, p.x_mean, p.p_mean, p.x_var, p.p_var, p.uncertainty] for p in pts]
    n_clamped = sum(p.clamped for p in pts)
    notes = [f"clamped_variances = {n_clamped}"] if n_clamped else []
    return Table(["t", "x_mean", "p_mean", "x_var", "p_var", "uncertainty"], rows, notes)


def cmd_uncertainty(rc: RunConfig) -> Table:
    pr = rc.params()
    tables = _tables(rc, pr)
    variant, z, g = rc.ladder(), rc.z_value(), rc.gamma_value()
    values = _scan_values(rc)
    if rc.scan == "gamma" and not np.all(np.abs(values) < 1):
        raise UsageError("gamma scan range must lie inside (-1, 1)")

    def point(v):
        st = build_state(pr, variant, v, g) if rc.scan == "z" else build_state(pr, variant, z, v)
        d = dispersions(st, tables, 0.0)
        return [float(v), d.uncertainty, d.x_var, d.p_var]

    return Table(["param", "delta", "x_var", "p_var"], _map(rc, point, values))


def cmd_density(rc: RunConfig) -> Table:
    pr = rc.params()
    variant, z = rc.ladder(), rc.z_value()
    x = rc.x_grid()
    rows = []
    if rc.gamma_scan:
        gammas = _scan_values(rc)
        if not np.all(np.abs(gammas) < 1):
            raise UsageError("gamma scan range must lie inside (-1, 1)")
        dens = _map(rc, lambda g: np.abs(wavefunction(build_state(pr, variant, z, g), x,
                                                        rc.t_min)) ** 2, gammas)
        for g, d in zip(gammas, dens):
            rows.extend([float(xi), float(g), float(di)] for xi, di in zip(x, d))
        return Table(["x", "gamma", "density"], rows, [f"t = {rc.t_min!r}"])
    state = build_state(pr, variant, z, rc.gamma_value())
    times = rc.time_grid()
    dens = _map(rc, lambda t: np.abs(wavefunction(state, x, t)) ** 2, times)
    for t, d in zip(times, dens):
        rows.extend([float(xi), float(t), float(di)] for xi, di in zip(x, d))
    return Table(["x", "t", "density"], rows)


def cmd_mandel(rc: RunConfig) -> Table:
    pr = rc.params()
    z = rc.z_value()

    def q(variant, g):
        try:
            return mandel_q(build_state(pr, variant, z, g)), ""
        except UndefinedStatisticError:
            return None, "mean_N_zero"

    def point(r):
        g = math.tanh(r)
        qe, fe = q(LadderVariant.ENERGY, g)
        qo, fo = q(LadderVariant.OSCILLATOR, g)
        return [float(r), g, qe, qo, fe or fo]

    return Table(["r", "gamma", "Q_energy", "Q_oscillator", "flag"], _map(rc, point, _scan_values(rc)))


def cmd_residual(rc: RunConfig) -> Table:
    pr = rc.params()
    z, g = rc.z_value(), rc.gamma_value()
    rep = residual(build_state(pr, rc.ladder(), z, g))
    return Table(["z", "gamma", "lambda1_abs", "lambda0_abs", "residual_norm"],
                 [[_fmt_complex(z), _fmt_complex(g), abs(rep.lambda1), abs(rep.lambda0),
                   rep.residual_norm]])


COMMANDS = {"spectrum": cmd_spectrum, "trajectory": cmd_trajectory,
            "uncertainty": cmd_uncertainty, "density": cmd_density,
            "mandel": cmd_mandel, "residual": cmd_residual}


# -- emission --------------------------------------------------------------

def provenance(rc: RunConfig) -> dict:
    cfg = asdict(rc)
    pr = rc.params()
    cfg["gamma_resolved"] = _fmt_complex(rc.gamma_value())
    cfg["nu_resolved"] = pr.nu
    cfg["p"] = pr.p
    cfg["n_max"] = pr.n_max
    return {"program": "morsesqueeze", "version": __version__, "config": cfg}


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(rc: RunConfig, table: Table) -> str:
    meta = provenance(rc)
    if rc.format == "json":
        doc = dict(meta, notes=table.notes, columns=table.columns, rows=table.rows)
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(f"# {meta['program']} {meta['version']}\n")
    for key, value in meta["config"].items():
        buf.write(f"# {key} = {'' if value is None else value}\n")
    for note in table.notes:
        buf.write(f"# {note}\n")
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        rc = resolve_config(argv)
    except SystemExit as exc:            # argparse usage errors and --help
        return int(exc.code or 0)
    except (UsageError, MorseError, ValueError) as exc:
        print(f"morsesqueeze: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = render(rc, COMMANDS[rc.command](rc))
    except (AccuracyError, OverflowError, FloatingPointError, ArithmeticError) as exc:
        print(f"morsesqueeze: numerical failure in {rc.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, MorseError, ValueError) as exc:
        print(f"morsesqueeze: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if rc.out:
        with open(rc.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
