import numpy as np
import pytest
from scipy.integrate import solve_ivp

from eitprop import bloch
from eitprop.config import load_config
from eitprop.params import TWO_PI, AtomParams, DriveParams, Populations
from eitprop.response import MediumResponse

GAMMA3 = TWO_PI * 5.75e6

_ACCEPTANCE_LINES: list[str] = []


def record_criterion(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def cfg():
    return load_config()


@pytest.fixture(scope="session")
def gamma3():
    return GAMMA3


@pytest.fixture(scope="session")
def rb_atom():
    return AtomParams(GAMMA3, GAMMA3, gamma_1out=TWO_PI * 1e3, scaled_density=1e-7)


@pytest.fixture(scope="session")
def eit(cfg):
    return cfg.eit_response()


@pytest.fixture(scope="session")
def awi(cfg):
    return cfg.awi_response()


def vacuum_response(atom=None):
    atom = atom or AtomParams(GAMMA3, GAMMA3, scaled_density=0.0)
    return MediumResponse.from_drive(atom, DriveParams(omega_P=0.8 * GAMMA3), Populations(1.0, 0.0))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def _real_form(gen):
    a, b = gen.real, gen.imag
    return np.block([[a, -b], [b, a]])


def integrate(gen, rho0, t_end, method="DOP853"):
    """Brute-force time evolution of vec(rho); the steady-state oracle."""
    jac = _real_form(gen)
    v0 = bloch.vec(rho0)
    y0 = np.concatenate([v0.real, v0.imag])
    extra = {"jac": jac} if method in ("Radau", "BDF") else {}
    sol = solve_ivp(lambda t, y: jac @ y, (0.0, t_end), y0, method=method, rtol=1e-12, atol=1e-14, **extra)
    assert sol.success
    y = sol.y[:, -1]
    return bloch.unvec(y[:16] + 1j * y[16:])


def thermal_state():
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho[2, 2] = 0.5
    return rho
