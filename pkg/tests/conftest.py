import numpy as np
import pytest


def rand_density(rng, d, rank=None):
    """Test-side random state; independent of the package's generator."""
    rank = d if rank is None else rank
    x = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = x @ x.conj().T
    return m / np.trace(m).real


def rand_unit(rng, n=None):
    v = rng.standard_normal((3,) if n is None else (n, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def rand_projector(rng, d, rank):
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, _ = np.linalg.qr(x)
    v = q[:, :rank]
    return v @ v.conj().T


def ptrace_loops(m, da, db, keep):
    """Brute-force partial trace by explicit index contraction."""
    if keep == "A":
        out = np.zeros((da, da), dtype=complex)
        for i in range(da):
            for j in range(da):
                out[i, j] = sum(m[i * db + k, j * db + k] for k in range(db))
    else:
        out = np.zeros((db, db), dtype=complex)
        for k in range(db):
            for l in range(db):
                out[k, l] = sum(m[i * db + k, i * db + l] for i in range(da))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


_ACCEPTANCE = []


def pytest_collection_modifyitems(items):
    for item in items:
        if item.get_closest_marker("acceptance"):
            item.user_properties.append(("acceptance", True))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and (rep.when == "call" or (rep.when == "setup" and rep.failed)):
        _ACCEPTANCE.append((marker.args[0], marker.args[1], rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, passed, dur in sorted(_ACCEPTANCE):
        terminalreporter.write_line(
            f"AC{num} {'PASS' if passed else 'FAIL'}  {title}  ({dur:.2f}s)"
        )
