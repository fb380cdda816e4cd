"""The Hecke algebra in the standard basis and its Kazhdan-Lusztig basis.

Normalization: ``(H_s + v)(H_s - v^-1) = 0``, so that

    H_w H_s = H_ws                          if ws > w
    H_w H_s = H_ws + (v^-1 - v) H_w         if ws < w

and the KL basis element of ``x`` lies in ``H_x + sum_{y<x} vZ[v] H_y``.
"""

from __future__ import annotations

import threading
from collections.abc import Iterable, Mapping

from .coxeter import LEFT, CoxeterSystem, Element
from .errors import AmbientNotClosed, SystemMismatch, TableCapExceeded
from .laurent import ONE, V, V_INV, ZERO, LaurentPoly, Scalar
from .parabolic import longest_element, parabolic_elements
from .tables import KLTable, check_downward_closed, unitriangular_inverse

QUAD = V_INV - V  # v^-1 - v
QUAD_INV = V - V_INV  # H_s^-1 = H_s + (v - v^-1)

DEFAULT_MAX_TERMS = 10**7


def _add_into(d: dict, key, p: LaurentPoly) -> None:
    q = d.get(key)
    if q is None:
        d[key] = p
    else:
        q = q + p
        if q:
            d[key] = q
        else:
            del d[key]


class HeckeElt:
    """A finite ``Z[v, v^-1]``-combination of standard basis elements ``H_w``."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Mapping[Element, Scalar] | None = None):
        self.algebra = algebra
        clean = {}
        for w, c in (terms or {}).items():
            c = LaurentPoly.coerce(c)
            if c:
                clean[w] = c
        self.terms: dict[Element, LaurentPoly] = clean

    @classmethod
    def _raw(cls, algebra, terms):
        e = cls.__new__(cls)
        e.algebra = algebra
        e.terms = terms
        return e

    def coeff(self, w: Element) -> LaurentPoly:
        return self.terms.get(w, ZERO)

    def support(self) -> list[Element]:
        return sorted(self.terms, key=Element.sort_key)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "HeckeElt") -> None:
        if other.algebra.system is not self.algebra.system:
            raise SystemMismatch("Hecke elements over different Coxeter systems")

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        d = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(d, w, c)
        return HeckeElt._raw(self.algebra, d)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt._raw(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def scale(self, c: Scalar) -> "HeckeElt":
        c = LaurentPoly.coerce(c)
        if not c:
            return self.algebra.zero()
        return HeckeElt._raw(self.algebra, {w: a * c for w, a in self.terms.items() if a * c})

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return self.algebra.mul(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.algebra.system is other.algebra.system and self.terms == other.terms

    def bar(self) -> "HeckeElt":
        return self.algebra.bar(self)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[w]})*H[{w}]" for w in self.support())

    __repr__ = __str__


class HeckeAlgebra:
    """Hecke algebra of a Coxeter system, with memoized KL basis.

    Memo tables only grow; writes are serialized by a lock so the algebra can
    be shared between threads.  ``max_terms`` caps the total number of stored
    polynomial entries.
    """

    def __init__(self, system: CoxeterSystem, max_terms: int = DEFAULT_MAX_TERMS):
        self.system = system
        self.max_terms = max_terms
        self._kl: dict[Element, HeckeElt] = {}
        self._bar_std: dict[Element, HeckeElt] = {}
        self._inverse_tables: dict[frozenset, dict] = {}
        self._stored_terms = 0
        self._lock = threading.RLock()

    # -- basic elements ----------------------------------------------------

    def zero(self) -> HeckeElt:
        return HeckeElt._raw(self, {})

    def std(self, w: Element) -> HeckeElt:
        if w.system is not self.system:
            raise SystemMismatch("element from a different Coxeter system")
        return HeckeElt._raw(self, {w: ONE})

    def one(self) -> HeckeElt:
        return self.std(self.system.identity)

    def element(self, terms: Mapping[Element, Scalar]) -> HeckeElt:
        return HeckeElt(self, terms)

    # -- products ----------------------------------------------------------

    def mul_gen_right(self, a: HeckeElt, s: int) -> HeckeElt:
        """``a * H_s``."""
        return HeckeElt._raw(self, self._mul_gen(a.terms, s, right=True))

    def mul_gen_left(self, a: HeckeElt, s: int) -> HeckeElt:
        """``H_s * a``."""
        return HeckeElt._raw(self, self._mul_gen(a.terms, s, right=False))

    def _mul_gen(self, terms: Mapping[Element, LaurentPoly], s: int, right: bool) -> dict:
        out: dict[Element, LaurentPoly] = {}
        for w, c in terms.items():
            ws = w.rmul(s) if right else w.lmul(s)
            _add_into(out, ws, c)
            if len(ws.word) < len(w.word):
                _add_into(out, w, c * QUAD)
        return out

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        a._check(b)
        out: dict[Element, LaurentPoly] = {}
        for y, c in b.terms.items():
            t = a.terms
            for s in y.word:
                t = self._mul_gen(t, s, right=True)
            for w, d in t.items():
                _add_into(out, w, d * c)
        return HeckeElt._raw(self, out)

    # -- bar involution ----------------------------------------------------

    def bar_std(self, x: Element) -> HeckeElt:
        """``bar(H_x) = (H_{x^-1})^-1``, a product of ``H_s^-1`` along ``x``."""
        hit = self._bar_std.get(x)
        if hit is not None:
            return hit
        if not x.word:
            res = self.one()
        else:
            s = x.word[-1]
            prev = self.bar_std(x.rmul(s))
            t = self._mul_gen(prev.terms, s, right=True)
            for w, c in prev.terms.items():
                _add_into(t, w, c * QUAD_INV)
            res = HeckeElt._raw(self, t)
        with self._lock:
            self._bar_std[x] = res
        return res

    def bar(self, a: HeckeElt) -> HeckeElt:
        out: dict[Element, LaurentPoly] = {}
        for x, c in a.terms.items():
            cb = c.bar()
            for w, d in self.bar_std(x).terms.items():
                _add_into(out, w, d * cb)
        return HeckeElt._raw(self, out)

    # -- Kazhdan-Lusztig basis ---------------------------------------------

    def kl_basis(self, x: Element) -> HeckeElt:
        """The self-dual KL basis element of ``x``.

        For a left descent ``s`` of ``x``:
        ``C_s C_sx = C_x + sum_{y < sx, sy < y} mu(y, sx) C_y``.
        """
        hit = self._kl.get(x)
        if hit is not None:
            return hit
        if x.system is not self.system:
            raise SystemMismatch("element from a different Coxeter system")
        if not x.word:
            res = self.one()
        else:
            s = x.word[0]
            sx = x.lmul(s)
            prev = self.kl_basis(sx)
            terms = self._mul_gen(prev.terms, s, right=False)
            for w, c in prev.terms.items():
                _add_into(terms, w, c * V)
            for y, p in prev.terms.items():
                if y == sx:
                    continue
                mu = p.coeff(1)
                if mu and y.has_descent(s, LEFT):
                    for w, c in self.kl_basis(y).terms.items():
                        _add_into(terms, w, c * (-mu))
            res = HeckeElt._raw(self, terms)
        self._store(x, res)
        return res

    def _store(self, x: Element, res: HeckeElt) -> None:
        with self._lock:
            if x in self._kl:
                return
            if self._stored_terms + len(res.terms) > self.max_terms:
                raise TableCapExceeded(
                    f"KL memo table would exceed {self.max_terms} stored polynomials"
                )
            self._kl[x] = res
            self._stored_terms += len(res.terms)

    def h(self, y: Element, x: Element) -> LaurentPoly:
        """The KL polynomial ``h_{y,x}``: coefficient of ``H_y`` in ``C_x``."""
        return self.kl_basis(x).coeff(y)

    def mu(self, y: Element, x: Element) -> int:
        return self.h(y, x).coeff(1)

    def one_idempotent(self, subset: Iterable[int]) -> HeckeElt:
        """``1_I``, the KL basis element of the longest element of ``W_I``."""
        return self.kl_basis(longest_element(self.system, subset))

    def one_closed_form(self, subset: Iterable[int]) -> HeckeElt:
        """``sum_{w in W_I} v^(l(w_I) - l(w)) H_w`` computed directly."""
        subset = frozenset(subset)
        top = longest_element(self.system, subset).length
        return HeckeElt._raw(
            self, {w: LaurentPoly.monomial(top - w.length) for w in parabolic_elements(self.system, subset)}
        )

    # -- tables ------------------------------------------------------------

    def kl_table(self, index: Iterable[Element]) -> KLTable:
        index = sorted(set(index), key=Element.sort_key)
        members = set(index)
        entries = {}
        for x in index:
            for y, p in self.kl_basis(x).terms.items():
                if y in members:
                    entries[(y, x)] = p
        return KLTable("h", index, entries, {"system": self.system.name})

    def inverse_table(self, ambient: Iterable[Element]) -> KLTable:
        """Inverse KL polynomials ``h^{y,x}`` over a Bruhat-downward-closed set."""
        ambient = frozenset(ambient)
        entries = self._inverse_tables.get(ambient)
        if entries is None:
            check_downward_closed(ambient)
            entries = unitriangular_inverse(ambient, lambda y: self.kl_basis(y).terms)
            with self._lock:
                self._inverse_tables[ambient] = entries
        index = sorted(ambient, key=Element.sort_key)
        return KLTable("h_inv", index, entries, {"system": self.system.name})

    def h_inverse(self, y: Element, x: Element, ambient: Iterable[Element]) -> LaurentPoly:
        """The inverse KL polynomial ``h^{y,x}``, defined by
        ``H_y = sum_x (-1)^(l(y)+l(x)) h^{y,x} C_x``."""
        table = self.inverse_table(ambient)
        members = set(table.index)
        for z in (x, y):
            if z not in members:
                raise AmbientNotClosed(f"{z} is not in the ambient set")
        return table[(y, x)]

    # -- cache support -----------------------------------------------------

    def kl_memo(self) -> dict[Element, HeckeElt]:
        return dict(self._kl)

    def load_memo(self, memo: Mapping[Element, HeckeElt]) -> None:
        for x, elt in memo.items():
            self._store(x, elt)
