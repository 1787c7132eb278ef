import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# Checks enumerate small structures exhaustively; timing varies too much for
# per-example deadlines.
settings.register_profile("laxenv", deadline=None, max_examples=60)
settings.load_profile("laxenv")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
