"""Triangular polynomial tables, unitriangular inversion and check reports."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field

from .coxeter import Element
from .errors import AmbientNotClosed
from .laurent import ONE, ZERO, LaurentPoly

Column = Callable[[Element], Mapping[Element, LaurentPoly]]


@dataclass
class KLTable:
    """A square table of polynomials over a finite index set.

    ``entries[(row, col)]`` holds the nonzero values; for the ``h`` family the
    row is the lower index, so ``entries[(y, x)] = h_{y,x}``.
    """

    kind: str
    index: list[Element]
    entries: dict[tuple[Element, Element], LaurentPoly]
    meta: dict = field(default_factory=dict)

    def __getitem__(self, key: tuple[Element, Element]) -> LaurentPoly:
        return self.entries.get(key, ZERO)

    def matrix(self) -> list[list[LaurentPoly]]:
        return [[self[(r, c)] for c in self.index] for r in self.index]

    def restrict(self, index: Iterable[Element]) -> "KLTable":
        index = list(index)
        keep = set(index)
        entries = {k: p for k, p in self.entries.items() if k[0] in keep and k[1] in keep}
        return KLTable(self.kind, index, entries, dict(self.meta))


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int
    counterexample: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        msg = f"{status} {self.name} ({self.checked} pairs checked)"
        if self.counterexample:
            msg += f": {self.counterexample}"
        return msg


def sign(a: int) -> int:
    return -1 if a % 2 else 1


def check_downward_closed(elements: Iterable[Element], within: Callable[[Element], bool] | None = None) -> None:
    """Raise :class:`AmbientNotClosed` unless ``elements`` is a Bruhat order ideal.

    With ``within`` given, closure is taken inside the subset of elements
    satisfying it (for parabolic quotients, whose Bruhat order is graded by
    length, covers inside the subset are covers in ``W``).
    """
    members = set(elements)
    for x in members:
        for y in x.system.lower_covers(x):
            if within is not None and not within(y):
                continue
            if y not in members:
                raise AmbientNotClosed(f"ambient set contains {x} but not {y} < {x}")


def unitriangular_inverse(index: Iterable[Element], column: Column) -> dict[tuple[Element, Element], LaurentPoly]:
    """Invert a unitriangular table of KL-type polynomials.

    ``column(y)`` returns the expansion ``{z: P_{z,y}}`` of the canonical
    basis element indexed by ``y``; it must contain ``y`` with value 1 and
    otherwise only elements of the (downward-closed) index set of smaller
    length.  Returns ``inv`` with ``inv[(y, x)] = P^{y,x}``, defined by

        std_y = sum_x (-1)^(l(y) + l(x)) * P^{y,x} * canonical_x.
    """
    index = sorted(index, key=Element.sort_key)
    members = set(index)
    expansions: dict[Element, dict[Element, LaurentPoly]] = {}
    for y in index:
        col = column(y)
        if col.get(y) != ONE:
            raise ValueError(f"table is not unitriangular at {y}")
        row: dict[Element, LaurentPoly] = {y: ONE}
        for z, c in col.items():
            if z == y:
                continue
            if z not in members:
                raise AmbientNotClosed(f"ambient set contains {y} but not {z}, which appears below it")
            for x, d in expansions[z].items():
                row[x] = row.get(x, ZERO) - c * d
        expansions[y] = {x: p for x, p in row.items() if p}
    out = {}
    for y, row in expansions.items():
        for x, p in row.items():
            out[(y, x)] = p if sign(y.length + x.length) > 0 else -p
    return out


def check_inversion(
    name: str,
    index: Iterable[Element],
    poly: Callable[[Element, Element], LaurentPoly],
    inv: Callable[[Element, Element], LaurentPoly],
) -> CheckReport:
    """Verify ``sum_z (-1)^(l(z)+l(x)) inv(z, x) poly(z, y) = delta_{x,y}``."""
    index = sorted(index, key=Element.sort_key)
    checked = 0
    for x in index:
        inv_col = {z: inv(z, x) for z in index}
        inv_col = {z: p for z, p in inv_col.items() if p}
        for y in index:
            total = ZERO
            for z, a in inv_col.items():
                b = poly(z, y)
                if b:
                    total = total + (a * b if sign(z.length + x.length) > 0 else -(a * b))
            checked += 1
            expected = ONE if x == y else ZERO
            if total != expected:
                return CheckReport(name, False, checked, f"x={x}, y={y}: sum = {total}")
    return CheckReport(name, True, checked)
