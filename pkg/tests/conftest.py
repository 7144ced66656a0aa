"""Collects acceptance outcomes and prints one line per criterion."""

import sys
from collections import defaultdict
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_outcomes = defaultdict(list)


def _criterion(item):
    marker = item.get_closest_marker("acceptance")
    return marker.args[0] if marker and marker.args else None


def pytest_runtest_makereport(item, call):
    n = _criterion(item)
    if n is None:
        return
    if call.when == "call" or call.excinfo is not None:
        _outcomes[n].append((item.name, call.excinfo is None))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        results = _outcomes[n]
        ok = all(passed for _, passed in results)
        failed = [name for name, passed in results if not passed]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({len(results)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
