import sys
from functools import lru_cache
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from oracles import MatrixGroup  # noqa: E402

from klext import CoxeterSystem, HeckeAlgebra  # noqa: E402

ACCEPTANCE_LINES: list[str] = []

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@lru_cache(maxsize=None)
def system(name: str) -> CoxeterSystem:
    return CoxeterSystem.preset(name)


@lru_cache(maxsize=None)
def hecke(name: str) -> HeckeAlgebra:
    return HeckeAlgebra(system(name))


@lru_cache(maxsize=None)
def matrix_group(name: str, max_length: int) -> MatrixGroup:
    return MatrixGroup(system(name).matrix, max_length)


def subsets(W):
    n = W.rank
    return [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


def lp(d):
    """Oracle dict -> LaurentPoly."""
    from klext import LaurentPoly

    return LaurentPoly(d)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
