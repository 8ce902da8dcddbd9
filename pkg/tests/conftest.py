import re

CRITERIA = {
    1: "example22-torus pipeline at resolution 16",
    2: "pair polynomial coefficients with top term r",
    3: "component bounds on every NoExternalExplosions flow",
    4: "Euler characteristic test, both directions, surface catalog",
    5: "first cohomology ranks and chi(M) <= 0",
    6: "cup product obstruction r_max values",
    7: "shape obstruction verdicts and pinned polynomials",
    8: "Conley-Euler identity on surface blocks",
    9: "duality suites: block duality, suspension, invariance",
    10: "exhaustive J-duality over the catalog",
    11: "bundle fingerprints in dimensions 2 and 3",
    12: "byte-identical verify runs",
}

_PAT = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    seen = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _PAT.search(getattr(rep, "nodeid", ""))
            if m:
                n = int(m.group(1))
                ok = status == "passed" and seen.get(n, True)
                seen[n] = ok
    if not seen:
        return
    tw = terminalreporter
    tw.write_sep("-", "acceptance criteria")
    for n in sorted(CRITERIA):
        if n in seen:
            word = "pass" if seen[n] else "FAIL"
        else:
            word = "not run"
        tw.write_line("criterion %2d %-7s %s" % (n, word, CRITERIA[n]))
