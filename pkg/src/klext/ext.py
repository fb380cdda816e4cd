"""Ext-dimension tables for singular blocks of parabolic category O.

A block is described by a Coxeter system, the stabilizer subset ``I``, the
parabolic subset ``J`` and a case:

* ``finite``: index set ``w_J ^J W^I_reg``; the entry for simple ``x`` and
  dual generalized Verma ``z`` is ``n^I_{z^-1, x^-1}``.
* ``affine_negative``: index set ``w_J ^J W^I_reg`` (length-truncated);
  entry ``n^I_{x^-1, y^-1}`` for simple ``y`` and costandard ``x``.
* ``affine_positive``: index set ``^J W^I_reg w_I`` (length-truncated);
  entry ``m_I^{w_I x^-1, w_I y^-1}`` for simple ``y`` and costandard ``x``.

Tables are always indexed ``[simple][costandard]``.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .coxeter import LEFT, CoxeterSystem, Element
from .errors import IndexNotInQuotient, KLError
from .hecke import HeckeAlgebra
from .laurent import ONE, ZERO, LaurentPoly
from .modules import ANTISPHERICAL, SPHERICAL, parabolic_module, quotient_ball
from .parabolic import in_quotient, is_finite_parabolic, longest_element, regular_double_reps
from .tables import CheckReport, KLTable

FINITE = "finite"
AFFINE_NEGATIVE = "affine_negative"
AFFINE_POSITIVE = "affine_positive"

_CASE_ALIASES = {
    "finite": FINITE,
    "affine_negative": AFFINE_NEGATIVE,
    "affine-neg": AFFINE_NEGATIVE,
    "negative": AFFINE_NEGATIVE,
    "affine_positive": AFFINE_POSITIVE,
    "affine-pos": AFFINE_POSITIVE,
    "positive": AFFINE_POSITIVE,
}


class InvalidBlock(KLError, ValueError):
    pass


@dataclass(frozen=True)
class BlockSpec:
    system: CoxeterSystem
    I: frozenset[int]
    J: frozenset[int]
    case: str = FINITE
    max_length: int | None = None

    def __post_init__(self):
        case = _CASE_ALIASES.get(self.case)
        if case is None:
            raise InvalidBlock(f"unknown case {self.case!r}")
        object.__setattr__(self, "case", case)
        object.__setattr__(self, "I", frozenset(self.I))
        object.__setattr__(self, "J", frozenset(self.J))
        full = frozenset(range(self.system.rank))
        finite = is_finite_parabolic(self.system, full)
        if case == FINITE:
            if not finite:
                raise InvalidBlock("the finite case needs a finite Coxeter system")
        else:
            if finite:
                raise InvalidBlock("the affine cases need an infinite (affine) Coxeter system")
            if self.I == full or self.J == full:
                raise InvalidBlock("I and J must be proper subsets of the affine generators")
            if self.max_length is None or self.max_length < 0:
                raise InvalidBlock("affine blocks need a non-negative max_length")


def index_set(spec: BlockSpec) -> list[Element]:
    """Parameters of the simple modules in the block, in (length, ShortLex) order.

    For affine cases the length bound applies to the final parameter
    (including the ``w_J`` or ``w_I`` factor), not to the minimal representative.
    """
    W = spec.system
    if spec.case == FINITE:
        w_J = longest_element(W, spec.J)
        top = longest_element(W, range(W.rank)).length
        out = [w_J * z for z in regular_double_reps(W, spec.J, spec.I, top)]
    elif spec.case == AFFINE_NEGATIVE:
        w_J = longest_element(W, spec.J)
        reps = regular_double_reps(W, spec.J, spec.I, spec.max_length)
        out = [w_J * z for z in reps]
    else:
        w_I = longest_element(W, spec.I)
        reps = regular_double_reps(W, spec.J, spec.I, spec.max_length)
        out = [z * w_I for z in reps]
    if spec.max_length is not None and spec.case != FINITE:
        out = [x for x in out if x.length <= spec.max_length]
    return sorted(out, key=Element.sort_key)


def _require_in_quotient(x: Element, subset: frozenset[int], what: str) -> None:
    if not in_quotient(x, subset, LEFT):
        raise IndexNotInQuotient(f"{what} = {x} is not a minimal representative in ^I W")


class ExtEvaluator:
    """Evaluates the Ext polynomials of one block, sharing memo tables."""

    def __init__(self, hecke: HeckeAlgebra, spec: BlockSpec):
        if hecke.system is not spec.system:
            raise ValueError("Hecke algebra and block use different Coxeter systems")
        self.hecke = hecke
        self.spec = spec
        self.index = index_set(spec)
        self._members = set(self.index)
        if spec.case == AFFINE_POSITIVE:
            self.w_I = longest_element(spec.system, spec.I)
            self.module = parabolic_module(hecke, spec.I, SPHERICAL)
            top = max((x.length for x in self.index), default=0)
            self.ambient = quotient_ball(spec.system, spec.I, top)
            self._inverse = None
        else:
            self.module = parabolic_module(hecke, spec.I, ANTISPHERICAL)

    def poly(self, simple: Element, costandard: Element) -> LaurentPoly:
        for x in (simple, costandard):
            if x not in self._members:
                raise IndexNotInQuotient(f"{x} is not in the index set of the block")
        I = self.spec.I
        if self.spec.case == AFFINE_POSITIVE:
            a = self.w_I * costandard.inverse()
            b = self.w_I * simple.inverse()
            _require_in_quotient(a, I, "w_I x^-1")
            _require_in_quotient(b, I, "w_I y^-1")
            if self._inverse is None:
                self._inverse = self.module.inverse_table(self.ambient)
            return self._inverse[(a, b)]
        a, b = costandard.inverse(), simple.inverse()
        _require_in_quotient(a, I, "costandard^-1")
        _require_in_quotient(b, I, "simple^-1")
        return self.module.poly(a, b)

    def table(self) -> KLTable:
        entries = {}
        for r in self.index:
            for c in self.index:
                p = self.poly(r, c)
                if p:
                    entries[(r, c)] = p
        W = self.spec.system
        meta = {
            "system": W.name,
            "case": self.spec.case,
            "I": W.subset_labels(self.spec.I),
            "J": W.subset_labels(self.spec.J),
            "max_length": self.spec.max_length,
            "orientation": "rows = simple module parameter, columns = dual generalized Verma parameter",
        }
        return KLTable("ext", list(self.index), entries, meta)


def ext_poly(hecke: HeckeAlgebra, spec: BlockSpec, simple: Element, costandard: Element) -> LaurentPoly:
    return ExtEvaluator(hecke, spec).poly(simple, costandard)


def ext_table(hecke: HeckeAlgebra, spec: BlockSpec) -> KLTable:
    return ExtEvaluator(hecke, spec).table()


def check_koszul_inversion_finite(hecke: HeckeAlgebra, I: Iterable[int], J: Iterable[int]) -> CheckReport:
    """``sum_z n^I_{z^-1,x^-1}(-v) * n^J_{z w_0, y w_0} = delta_{x,y}`` over ``w_J ^J W^I_reg``."""
    W = hecke.system
    I, J = frozenset(I), frozenset(J)
    spec = BlockSpec(W, I, J, FINITE)
    index = index_set(spec)
    w0 = longest_element(W, range(W.rank))
    n_I = parabolic_module(hecke, I, ANTISPHERICAL)
    n_J = parabolic_module(hecke, J, ANTISPHERICAL)
    for z in index:
        _require_in_quotient(z.inverse(), I, "z^-1")
        if not in_quotient(z * w0, J, LEFT):
            raise IndexNotInQuotient(f"z w_0 = {z * w0} is not in ^J W")
    checked = 0
    for x in index:
        for y in index:
            total = ZERO
            for z in index:
                a = n_I.poly(z.inverse(), x.inverse())
                if not a:
                    continue
                b = n_J.poly(z * w0, y * w0)
                if b:
                    total = total + a.at_neg_v() * b
            checked += 1
            if total != (ONE if x == y else ZERO):
                return CheckReport("Koszul inversion", False, checked, f"x={x}, y={y}: sum = {total}")
    return CheckReport("Koszul inversion", True, checked)
