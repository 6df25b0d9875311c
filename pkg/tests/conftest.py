import re

_TITLES = {
    1: "constants self-consistency",
    2: "hemisphere quadrature vs Beta closed form",
    3: "Gaussian eigen-relation",
    4: "exact identities",
    5: "duality pairing",
    6: "sharp-norm reproduction",
    7: "upper bound universality",
    8: "scaling audit",
    9: "divergence demos",
    10: "reproducibility",
}


def pytest_terminal_summary(terminalreporter):
    outcome = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = re.search(r"test_acceptance\.py::test_c(\d+)_", getattr(rep, "nodeid", ""))
            if not m or rep.when not in ("call", "setup"):
                continue
            num = int(m.group(1))
            ok = status == "passed"
            outcome[num] = outcome.get(num, True) and ok
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(outcome):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if outcome[num] else 'FAIL'}  {_TITLES[num]}")
