import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> list of (ok, text, expected_failure); filled by test_acceptance
ACCEPTANCE = {}
# outcomes of hypothesis-driven tests, for criterion 11
PROPERTIES = {"passed": 0, "failed": 0}


def record(num, ok, text, expected_failure=False):
    ACCEPTANCE.setdefault(num, []).append((bool(ok), text, expected_failure))


def pytest_addoption(parser):
    parser.addoption("--tier", choices=("fast", "slow"), default=None,
                     help="slow also runs the long recomputations")


def _slow_enabled(config):
    tier = config.getoption("--tier")
    if tier is None:
        tier = "slow" if os.environ.get("MAPGERMS_SLOW") == "1" else "fast"
    return tier == "slow"


def pytest_collection_modifyitems(config, items):
    if _slow_enabled(config):
        return
    skip = pytest.mark.skip(reason="slow tier (use --tier slow or MAPGERMS_SLOW=1)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and getattr(getattr(item, "obj", None), "is_hypothesis_test", False):
        PROPERTIES["passed" if rep.passed else "failed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in range(1, 12):
        parts = ACCEPTANCE.get(num)
        if num == 11:
            ran = PROPERTIES["passed"] + PROPERTIES["failed"]
            if ran:
                ok = PROPERTIES["failed"] == 0
                tr.write_line(f"{'PASS' if ok else 'FAIL'} criterion 11: {PROPERTIES['passed']}/{ran} "
                              f"property tests green at 200 examples each")
            else:
                tr.write_line("---- criterion 11: no property tests ran in this session")
            continue
        if not parts:
            tr.write_line(f"---- criterion {num}: not run in this session")
            continue
        ok = all(p[0] for p in parts)
        notes = "; ".join(f"{t}{'' if o else (' [expected failure, see ledger]' if x else ' [FAILED]')}"
                          for o, t, x in parts)
        tr.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num}: {notes}")
