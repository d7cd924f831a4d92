from functools import lru_cache

from typsep.groups import parse_group
from typsep.lattice import enumerate_subgroups


@lru_cache(maxsize=None)
def group(spec):
    return parse_group(spec)


@lru_cache(maxsize=None)
def lat(spec):
    return enumerate_subgroups(group(spec))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
