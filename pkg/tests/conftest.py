import math

import numpy as np
import pytest
from scipy import integrate, special

from morsesqueeze.morse import ModelParams
from morsesqueeze.observables import build_tables
from morsesqueeze.presets import BUILTIN_PRESETS

NU_HCL = 2989.74 / 52.05


@pytest.fixture(scope="session")
def hcl():
    return BUILTIN_PRESETS["hcl"].params()


@pytest.fixture(scope="session")
def cs2():
    return BUILTIN_PRESETS["cs2"].params()


@pytest.fixture(scope="session")
def hcl_tables(hcl):
    return build_tables(hcl)


# -- independent eigenfunction oracle (scipy special functions, plain floats) --

def psi_ref(pr: ModelParams, n: int, x):
    """Eigenfunction straight from scipy; no shared code with the package."""
    x = np.asarray(x, dtype=float)
    y = pr.nu * np.exp(-pr.beta * x)
    eps = pr.p - n
    log_norm = 0.5 * (math.log(2 * pr.beta * eps) + special.gammaln(n + 1)
                      - special.gammaln(2 * pr.p - n + 1))
    lag = special.eval_genlaguerre(n, 2 * eps, y)
    with np.errstate(divide="ignore", under="ignore"):
        return np.exp(log_norm - y / 2 + eps * np.log(y)) * lag


def dpsi_ref(pr: ModelParams, n: int, x):
    """``d psi_n / dx`` from the analytic y-derivative, ``dy/dx = -beta y``."""
    x = np.asarray(x, dtype=float)
    y = pr.nu * np.exp(-pr.beta * x)
    eps = pr.p - n
    log_norm = 0.5 * (math.log(2 * pr.beta * eps) + special.gammaln(n + 1)
                      - special.gammaln(2 * pr.p - n + 1))
    lag = special.eval_genlaguerre(n, 2 * eps, y)
    dlag = -special.eval_genlaguerre(n - 1, 2 * eps + 1, y) if n > 0 else 0.0
    with np.errstate(divide="ignore", under="ignore"):
        pref = np.exp(log_norm - y / 2 + eps * np.log(y))
    dpsi_dy = pref * ((-0.5 + eps / y) * lag + dlag)
    return dpsi_dy * (-pr.beta * y)


def support(pr: ModelParams):
    lo = -math.log((4 * pr.p + 80) / pr.nu) / pr.beta
    hi = (math.log(pr.nu) + 60.0 / (pr.p - 10)) / pr.beta
    return lo, hi


def quad_x(f, pr):
    lo, hi = support(pr)
    pts = np.linspace(lo, hi, 40)
    return sum(integrate.quad(f, a, b, epsabs=1e-15, epsrel=1e-12, limit=200)[0]
               for a, b in zip(pts[:-1], pts[1:]))


# -- acceptance reporting --------------------------------------------------

ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, label: str, ok: bool, detail: str) -> None:
    """Store one clause result, print it, and fail the calling test if needed."""
    ACCEPTANCE.setdefault(criterion, []).append((label, bool(ok), detail))
    print(f"criterion {label}: {'PASS' if ok else 'FAIL'} | {detail}")
    assert ok, f"criterion {label}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[c]
        ok = all(p[1] for p in parts)
        tr.write_line(f"criterion {c:>2}: {'PASS' if ok else 'FAIL'}")
        for label, good, detail in parts:
            tr.write_line(f"    {label:<4} {'pass' if good else 'FAIL'}  {detail}")
