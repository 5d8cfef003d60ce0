import pytest

from stefanss import InitialData, SelfSimilarProfile, SimilarityState, SolverConfig, build_upper, choose_lambda, run

# (x/2) exp(x^2/4) at x = 1, so omega(H_REF) = 1.
H_REF = 0.6420127083438707


@pytest.fixture(scope="session")
def h_ref():
    return H_REF


@pytest.fixture(scope="session")
def profile():
    return SelfSimilarProfile.from_h(H_REF)


@pytest.fixture(scope="session")
def ramp():
    return InitialData.ramp(0.5, 1.0)


@pytest.fixture(scope="session")
def lower_pair(ramp):
    return choose_lambda(ramp, H_REF)


@pytest.fixture(scope="session")
def upper_line(ramp):
    return build_upper(ramp, H_REF)


@pytest.fixture(scope="session")
def default_cfg():
    return SolverConfig(H_REF)


@pytest.fixture(scope="session")
def ramp_run(ramp, default_cfg):
    return run(ramp, default_cfg, 10.0, stride=100)


@pytest.fixture(scope="session")
def lower_run(lower_pair, default_cfg):
    s0 = SimilarityState.from_function(lower_pair, lower_pair.b_lambda, default_cfg.N)
    return run(s0, default_cfg, 10.0, stride=100)


@pytest.fixture(scope="session")
def upper_run(upper_line, default_cfg):
    s0 = SimilarityState.from_function(upper_line, upper_line.b_bar, default_cfg.N)
    return run(s0, default_cfg, 10.0, stride=100)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
