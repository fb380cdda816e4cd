"""The submodule ``N_J * 1_I`` of the anti-spherical module and its
double parabolic KL polynomials.

For ``W_I`` finite, ``N_J * 1_I`` has two bases indexed by the regular double
coset representatives ``^J W^I_reg``: the vectors ``N_x * 1_I`` and the KL
basis elements ``N_{x w_I}``.  The polynomials ``p_{y,x}`` and ``p^{y,x}``
express one basis in the other.  They are computed here by elimination in
``N_J`` ("direct") and, independently, from the closed forms
``p_{y,x} = n^J_{y w_I, x w_I}`` and ``p^{y,x} = m_I^{y^-1, x^-1}`` ("closed").
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .coxeter import RIGHT, Element
from .errors import AmbientNotClosed, NotMinimalRep, NotRegularRep
from .hecke import HeckeAlgebra, _add_into
from .laurent import ONE, ZERO, LaurentPoly
from .modules import ANTISPHERICAL, SPHERICAL, ModuleElt, parabolic_module, quotient_ball
from .parabolic import (
    is_double_min_rep,
    is_regular,
    longest_element,
    min_rep,
    parabolic_elements,
    regular_double_reps,
)
from .tables import CheckReport, KLTable, sign

DIRECT = "direct"
CLOSED = "closed"


class DoubleModuleElt:
    """A combination of the vectors ``N_y * 1_I`` (``y`` regular)."""

    __slots__ = ("double", "terms")

    def __init__(self, double: "DoubleModule", terms: Mapping[Element, LaurentPoly]):
        for y in terms:
            double.check_regular(y)
        self.double = double
        self.terms = {y: c for y, c in terms.items() if c}

    def coeff(self, y: Element) -> LaurentPoly:
        return self.terms.get(y, ZERO)

    def expand(self) -> ModuleElt:
        """The element written in the ``N_z`` basis of ``N_J``."""
        out = self.double.anti.zero()
        for y, c in self.terms.items():
            out = out + self.double.embed(y).scale(c)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, DoubleModuleElt):
            return NotImplemented
        return self.double is other.double and self.terms == other.terms


class DoubleModule:
    """``N_J * 1_I`` inside the anti-spherical module ``N_J``."""

    def __init__(self, hecke: HeckeAlgebra, left: Iterable[int], right: Iterable[int]):
        self.hecke = hecke
        self.system = hecke.system
        self.left = frozenset(left)
        self.right = frozenset(right)
        self.w_right = longest_element(self.system, self.right)  # raises InfiniteParabolic
        self.anti = parabolic_module(hecke, self.left, ANTISPHERICAL)
        self.sph = parabolic_module(hecke, self.right, SPHERICAL)
        self._embed: dict[Element, ModuleElt] = {}
        self._p: dict[Element, dict[Element, LaurentPoly]] = {}
        self._p_inv: dict[Element, dict[Element, LaurentPoly]] = {}
        self._sph_inverse: dict[int, KLTable] = {}

    def __repr__(self) -> str:
        J = ",".join(self.system.subset_labels(self.left))
        I = ",".join(self.system.subset_labels(self.right))
        return f"DoubleModule({self.system.name}, J={{{J}}}, I={{{I}}})"

    def check_regular(self, x: Element) -> None:
        if not is_double_min_rep(x, self.left, self.right):
            raise NotRegularRep(f"{x} is not in ^J W^I")
        if not is_regular(x, self.left, self.right):
            raise NotRegularRep(f"the double coset of {x} is not regular")

    def regular_reps(self, max_length: int) -> list[Element]:
        return regular_double_reps(self.system, self.left, self.right, max_length)

    # -- the vectors N_x * 1_I ---------------------------------------------

    def embed(self, x: Element) -> ModuleElt:
        """``N_x * 1_I`` in the ``N``-basis of ``N_J``, computed by acting with ``1_I``.

        Vanishes exactly when the double coset of ``x`` is not regular.
        """
        hit = self._embed.get(x)
        if hit is not None:
            return hit
        if not is_double_min_rep(x, self.left, self.right):
            raise NotMinimalRep(f"{x} is not in ^J W^I")
        one = self.hecke.one_idempotent(self.right)
        res = self.anti.act(self.anti.basis(x), one)
        self._embed[x] = res
        return res

    def embed_closed_form(self, x: Element) -> ModuleElt:
        """``sum_{w in W_I} v^(l(w_I) - l(w)) N_{xw}`` for regular ``x``, else 0."""
        if not is_double_min_rep(x, self.left, self.right):
            raise NotMinimalRep(f"{x} is not in ^J W^I")
        if not is_regular(x, self.left, self.right):
            return self.anti.zero()
        top = self.w_right.length
        terms = {x * w: LaurentPoly.monomial(top - w.length) for w in parabolic_elements(self.system, self.right)}
        return self.anti.element(terms)

    def kl_element(self, x: Element) -> ModuleElt:
        """The KL basis element ``N_{x w_I}`` of ``N_J * 1_I``."""
        self.check_regular(x)
        return self.anti.kl_basis(x * self.w_right)

    def _top_rep(self, z: Element) -> Element:
        x = min_rep(z, self.right, RIGHT)
        if x * self.w_right != z or not is_double_min_rep(x, self.left, self.right) or not is_regular(
            x, self.left, self.right
        ):
            raise ValueError(f"leading term N[{z}] is not of the form N[x w_I] with x regular")
        return x

    # -- p and p^ by elimination -------------------------------------------

    def p_column(self, x: Element) -> dict[Element, LaurentPoly]:
        """``{y: p_{y,x}}``: expand ``N_{x w_I}`` in the basis ``N_y * 1_I``."""
        hit = self._p.get(x)
        if hit is not None:
            return hit
        residual = dict(self.kl_element(x).terms)
        coeffs = {}
        while residual:
            z = max(residual, key=Element.sort_key)
            y = self._top_rep(z)
            c = residual[z]
            coeffs[y] = c
            for u, d in self.embed(y).terms.items():
                _add_into(residual, u, -(c * d))
        self._p[x] = coeffs
        return coeffs

    def p_inverse_row(self, y: Element) -> dict[Element, LaurentPoly]:
        """``{x: p^{y,x}}``: expand ``N_y * 1_I`` in the KL basis ``N_{x w_I}``."""
        hit = self._p_inv.get(y)
        if hit is not None:
            return hit
        self.check_regular(y)
        residual = dict(self.embed(y).terms)
        coeffs = {}
        while residual:
            z = max(residual, key=Element.sort_key)
            x = self._top_rep(z)
            c = residual[z]
            coeffs[x] = c if sign(y.length + x.length) > 0 else -c
            for u, d in self.kl_element(x).terms.items():
                _add_into(residual, u, -(c * d))
        self._p_inv[y] = coeffs
        return coeffs

    def as_double_element(self, x: Element) -> DoubleModuleElt:
        """``N_{x w_I}`` as a combination of the vectors ``N_y * 1_I``."""
        return DoubleModuleElt(self, self.p_column(x))

    # -- p and p^ via the closed forms -------------------------------------

    def p_closed(self, y: Element, x: Element) -> LaurentPoly:
        """``n^J_{y w_I, x w_I}``."""
        w = self.w_right
        return self.anti.poly(y * w, x * w)

    def p_inverse_closed(self, y: Element, x: Element) -> LaurentPoly:
        """``m_I^{y^-1, x^-1}``, the inverse spherical polynomial for ``I``."""
        yi, xi = y.inverse(), x.inverse()
        top = max(yi.length, xi.length)
        table = self._sph_inverse.get(top)
        if table is None:
            table = self.sph.inverse_table(quotient_ball(self.system, self.right, top))
            self._sph_inverse[top] = table
        for z in (yi, xi):
            self.sph.check_index(z)
        return table[(yi, xi)]

    # -- public accessors --------------------------------------------------

    def p_poly(self, y: Element, x: Element, route: str = DIRECT) -> LaurentPoly:
        self.check_regular(y)
        self.check_regular(x)
        if route == DIRECT:
            return self.p_column(x).get(y, ZERO)
        if route == CLOSED:
            return self.p_closed(y, x)
        raise ValueError(f"unknown route {route!r}")

    def p_inverse(self, y: Element, x: Element, route: str = DIRECT) -> LaurentPoly:
        self.check_regular(y)
        self.check_regular(x)
        if route == DIRECT:
            return self.p_inverse_row(y).get(x, ZERO)
        if route == CLOSED:
            return self.p_inverse_closed(y, x)
        raise ValueError(f"unknown route {route!r}")

    def p_table(self, index: Iterable[Element], route: str = DIRECT) -> KLTable:
        index = sorted(set(index), key=Element.sort_key)
        entries = {}
        for y in index:
            for x in index:
                p = self.p_poly(y, x, route)
                if p:
                    entries[(y, x)] = p
        return KLTable("p", index, entries, self._meta(route))

    def p_inverse_table(self, index: Iterable[Element], route: str = DIRECT) -> KLTable:
        index = sorted(set(index), key=Element.sort_key)
        entries = {}
        for y in index:
            for x in index:
                p = self.p_inverse(y, x, route)
                if p:
                    entries[(y, x)] = p
        return KLTable("p_inv", index, entries, self._meta(route))

    def _meta(self, route: str) -> dict:
        return {
            "system": self.system.name,
            "J": self.system.subset_labels(self.left),
            "I": self.system.subset_labels(self.right),
            "route": route,
        }

    def check_ambient(self, ambient: Iterable[Element]) -> list[Element]:
        """Validate that ``ambient`` is a Bruhat order ideal of ``^J W^I_reg``."""
        ambient = sorted(set(ambient), key=Element.sort_key)
        for x in ambient:
            self.check_regular(x)
        if not ambient:
            return ambient
        members = set(ambient)
        universe = self.regular_reps(max(x.length for x in ambient))
        for x in ambient:
            for y in universe:
                if y.length < x.length and y not in members and self.system.bruhat_leq(y, x):
                    raise AmbientNotClosed(f"ambient set contains {x} but not the regular rep {y} < {x}")
        return ambient


def check_double_inversion(hecke: HeckeAlgebra, left: Iterable[int], right: Iterable[int], ambient: Iterable[Element]) -> CheckReport:
    """``sum_z (-1)^(l(y)+l(z)) n^J_{z w_I, x w_I} m_I^{z^-1, y^-1} = delta_{x,y}``."""
    dm = DoubleModule(hecke, left, right)
    index = dm.check_ambient(ambient)
    checked = 0
    for x in index:
        col = {z: dm.p_closed(z, x) for z in index}
        col = {z: p for z, p in col.items() if p}
        for y in index:
            total = ZERO
            for z, a in col.items():
                b = dm.p_inverse_closed(z, y)
                if b:
                    total = total + (a * b if sign(y.length + z.length) > 0 else -(a * b))
            checked += 1
            if total != (ONE if x == y else ZERO):
                return CheckReport("double parabolic inversion", False, checked, f"x={x}, y={y}: sum = {total}")
    return CheckReport("double parabolic inversion", True, checked)


def check_p_identities(hecke: HeckeAlgebra, left: Iterable[int], right: Iterable[int], index: Iterable[Element]) -> CheckReport:
    """Direct elimination against the closed forms for ``p`` and ``p^``."""
    dm = DoubleModule(hecke, left, right)
    index = sorted(set(index), key=Element.sort_key)
    checked = 0
    for y in index:
        for x in index:
            checked += 1
            a, b = dm.p_poly(y, x, DIRECT), dm.p_poly(y, x, CLOSED)
            if a != b:
                return CheckReport("p = n^J", False, checked, f"y={y}, x={x}: {a} != {b}")
            a, b = dm.p_inverse(y, x, DIRECT), dm.p_inverse(y, x, CLOSED)
            if a != b:
                return CheckReport("p^ = m_I^", False, checked, f"y={y}, x={x}: {a} != {b}")
    return CheckReport("double parabolic identities", True, checked)
