"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Budgets are wall-clock upper bounds measured inside the suite runner;
all comparisons inside a suite are exact integer equality.
"""

from groupcensus.verify import run_suite

BUDGETS = {
    "paper-values": 1.0,
    "gl-grid": 300.0,
    "cayley": 600.0,
    "identity": 1.0,
    "integrality": 30.0,
    "squarefree": None,
}


def _run(name):
    report = run_suite(name)
    within = (
        BUDGETS[name] is None or report.duration < BUDGETS[name]
    )
    ok = report.passed and within
    budget = "" if BUDGETS[name] is None else f" / budget {BUDGETS[name]:.0f}s"
    print(
        f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} "
        f"({report.total - report.failures}/{report.total} cases, "
        f"{report.duration:.2f}s{budget})"
    )
    for case in report.cases:
        if not case.passed:
            print(f"  failed: {case.description}: expected "
                  f"{case.expected!r}, got {case.actual!r}")
    assert report.passed, f"{report.failures} case(s) failed in {name}"
    assert within, f"{name} took {report.duration:.2f}s, over budget"


def test_acceptance_paper_values():
    _run("paper-values")


def test_acceptance_gl_grid():
    _run("gl-grid")


def test_acceptance_cayley():
    _run("cayley")


def test_acceptance_identity():
    _run("identity")


def test_acceptance_integrality():
    _run("integrality")


def test_acceptance_squarefree():
    _run("squarefree")
