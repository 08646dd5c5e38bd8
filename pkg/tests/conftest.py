import json
import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from lbstar.syntax import read_corpus

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
sys.path.insert(0, str(HERE))

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", max_examples=30, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DERIVABLE = read_corpus(FIXTURES / "derivable.txt")
NOT_DERIVABLE = read_corpus(FIXTURES / "not_derivable.txt")
FIGURE_NETS = json.loads((FIXTURES / "figure_nets.json").read_text())


@pytest.fixture
def corpus():
    return [(s, True) for s in DERIVABLE] + [(s, False) for s in NOT_DERIVABLE]


ACCEPTANCE = {}


@pytest.fixture
def report(request):
    """Record and print one pass/fail line for an acceptance criterion."""
    tr = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(key, title, ok, detail=""):
        line = f"criterion {key} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE[key] = line
        if tr is not None:
            tr.write_line("")
            tr.write_line(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE, key=str):
            terminalreporter.write_line(ACCEPTANCE[key])
