import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance and acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance.LINES, key=lambda s: s.split(":")[0][-1]):
            terminalreporter.write_line(line)
