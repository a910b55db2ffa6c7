import pytest

from stefan_chain.similarity import BcKind, PointState, SimilarityParams, build_solution

CANONICAL = SimilarityParams(L0=1.0, v0=1.0, w_m0=0.5)
# x(., t) is strictly increasing for this instance, so the reciprocal maps invert
MONOTONE = SimilarityParams(L0=5.0, v0=1.0, w_m0=0.5)


@pytest.fixture(scope="session")
def canonical():
    return build_solution(CANONICAL)


@pytest.fixture(scope="session")
def monotone():
    return build_solution(MONOTONE)


@pytest.fixture(scope="session")
def robin():
    return build_solution(CANONICAL.replace(bc_kind=BcKind.ROBIN, h0=2.0))


@pytest.fixture(scope="session")
def neumann():
    return build_solution(CANONICAL.replace(bc_kind=BcKind.NEUMANN, h0=1.0))


def make_state(w, w_z=0.0, w_zz=0.0, z=0.0, t=1.0):
    """A bare point state for testing the pointwise maps on hand-made profiles."""
    return PointState(z=z, t=t, w=w, w_z=w_z, w_zz=w_zz, w_t=w_zz, s=1.0, s_prime=0.0, w_zzz=0.0, w_zt=0.0)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        name, ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}")
