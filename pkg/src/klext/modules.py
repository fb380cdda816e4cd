"""Spherical and anti-spherical parabolic modules of the Hecke algebra.

For ``I`` a subset of the generators, the module induced from the rank one
module of the parabolic Hecke subalgebra on which each ``H_s`` (``s`` in
``I``) acts by ``v^-1`` (spherical, basis ``M_x``) or by ``-v``
(anti-spherical, basis ``N_x``) has a basis indexed by the minimal
representatives ``^I W`` of the right cosets ``W_I x``.
"""

from __future__ import annotations

import threading
from collections.abc import Iterable, Mapping

from .coxeter import LEFT, Element
from .errors import AmbientNotClosed, NotMinimalRep, SystemMismatch
from .hecke import QUAD, HeckeAlgebra, HeckeElt, _add_into
from .laurent import ONE, V, V_INV, ZERO, LaurentPoly, Scalar
from .parabolic import in_quotient, is_finite_parabolic, longest_element, min_rep
from .tables import CheckReport, KLTable, check_downward_closed, check_inversion, unitriangular_inverse

SPHERICAL = "spherical"
ANTISPHERICAL = "antispherical"

PROJECTION = "projection"
RECURSION = "recursion"


class ModuleElt:
    """A finite combination of basis vectors of a parabolic module."""

    __slots__ = ("module", "terms")

    def __init__(self, module: "ParabolicModule", terms: Mapping[Element, Scalar] | None = None):
        clean = {}
        for x, c in (terms or {}).items():
            module.check_index(x)
            c = LaurentPoly.coerce(c)
            if c:
                clean[x] = c
        self.module = module
        self.terms: dict[Element, LaurentPoly] = clean

    @classmethod
    def _raw(cls, module, terms):
        e = cls.__new__(cls)
        e.module = module
        e.terms = terms
        return e

    @property
    def flavor(self) -> str:
        return self.module.flavor

    @property
    def subset(self) -> frozenset[int]:
        return self.module.subset

    def coeff(self, x: Element) -> LaurentPoly:
        return self.terms.get(x, ZERO)

    def support(self) -> list[Element]:
        return sorted(self.terms, key=Element.sort_key)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "ModuleElt") -> None:
        if other.module.key != self.module.key:
            raise SystemMismatch("elements of different parabolic modules")

    def __add__(self, other: "ModuleElt") -> "ModuleElt":
        self._check(other)
        d = dict(self.terms)
        for x, c in other.terms.items():
            _add_into(d, x, c)
        return ModuleElt._raw(self.module, d)

    def __neg__(self) -> "ModuleElt":
        return ModuleElt._raw(self.module, {x: -c for x, c in self.terms.items()})

    def __sub__(self, other: "ModuleElt") -> "ModuleElt":
        return self + (-other)

    def scale(self, c: Scalar) -> "ModuleElt":
        c = LaurentPoly.coerce(c)
        return ModuleElt._raw(self.module, {x: a * c for x, a in self.terms.items() if a * c})

    def __rmul__(self, c):
        if isinstance(c, (int, LaurentPoly)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return self.module.act(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleElt):
            return NotImplemented
        return self.module.key == other.module.key and self.terms == other.terms

    def bar(self) -> "ModuleElt":
        return self.module.bar(self)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        letter = "M" if self.flavor == SPHERICAL else "N"
        return " + ".join(f"({self.terms[x]})*{letter}[{x}]" for x in self.support())

    __repr__ = __str__


class ParabolicModule:
    """The spherical or anti-spherical right module for a subset ``I``."""

    def __init__(self, hecke: HeckeAlgebra, subset: Iterable[int], flavor: str):
        if flavor not in (SPHERICAL, ANTISPHERICAL):
            raise ValueError(f"flavor must be {SPHERICAL!r} or {ANTISPHERICAL!r}")
        self.hecke = hecke
        self.system = hecke.system
        self.subset = frozenset(subset)
        self.flavor = flavor
        self.key = (id(self.system), self.subset, flavor)
        # eigenvalue of H_s, s in I, on the generating vector
        self.scalar = V_INV if flavor == SPHERICAL else -V
        self._kl: dict[str, dict[Element, ModuleElt]] = {PROJECTION: {}, RECURSION: {}}
        self._inverse_tables: dict[frozenset, dict] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        labels = ",".join(self.system.subset_labels(self.subset))
        return f"ParabolicModule({self.system.name}, I={{{labels}}}, {self.flavor})"

    # -- basis -------------------------------------------------------------

    def contains(self, x: Element) -> bool:
        return in_quotient(x, self.subset, LEFT)

    def check_index(self, x: Element) -> None:
        if x.system is not self.system:
            raise SystemMismatch("element from a different Coxeter system")
        if not self.contains(x):
            raise NotMinimalRep(
                f"{x} is not a minimal representative of W_I x for "
                f"I = {{{','.join(self.system.subset_labels(self.subset))}}}"
            )

    def basis(self, x: Element) -> ModuleElt:
        self.check_index(x)
        return ModuleElt._raw(self, {x: ONE})

    def zero(self) -> ModuleElt:
        return ModuleElt._raw(self, {})

    def element(self, terms: Mapping[Element, Scalar]) -> ModuleElt:
        return ModuleElt(self, terms)

    # -- right action ------------------------------------------------------

    def _act_gen(self, terms: Mapping[Element, LaurentPoly], s: int) -> dict:
        out: dict[Element, LaurentPoly] = {}
        for x, c in terms.items():
            xs = x.rmul(s)
            if len(xs.word) < len(x.word):
                _add_into(out, xs, c)
                _add_into(out, x, c * QUAD)
            elif self.contains(xs):
                _add_into(out, xs, c)
            else:
                # xs = t x with t in I
                _add_into(out, x, c * self.scalar)
        return out

    def act_gen(self, a: ModuleElt, s: int) -> ModuleElt:
        """``a * H_s``."""
        return ModuleElt._raw(self, self._act_gen(a.terms, s))

    def act(self, a: ModuleElt, h: HeckeElt) -> ModuleElt:
        """``a * h`` for a Hecke algebra element ``h``."""
        if h.algebra.system is not self.system:
            raise SystemMismatch("Hecke element over a different Coxeter system")
        out: dict[Element, LaurentPoly] = {}
        for w, c in h.terms.items():
            t = a.terms
            for s in w.word:
                t = self._act_gen(t, s)
            for x, d in t.items():
                _add_into(out, x, d * c)
        return ModuleElt._raw(self, out)

    # -- psi / phi ---------------------------------------------------------

    def project(self, h: HeckeElt) -> ModuleElt:
        """The right module map ``H -> 1 (x) H``, i.e. ``psi`` for the
        anti-spherical flavor and its analogue for the spherical one."""
        out: dict[Element, LaurentPoly] = {}
        for w, c in h.terms.items():
            x = min_rep(w, self.subset, LEFT)
            k = len(w.word) - len(x.word)
            f = ONE
            for _ in range(k):
                f = f * self.scalar
            _add_into(out, x, c * f)
        return ModuleElt._raw(self, out)

    def phi(self, a: ModuleElt) -> HeckeElt:
        """Spherical only: ``M_x -> 1_I H_x``."""
        self._require_spherical()
        one = self.hecke.one_idempotent(self.subset)
        out = self.hecke.zero()
        for x, c in a.terms.items():
            out = out + (one * self.hecke.std(x)).scale(c)
        return out

    def phi_inverse(self, h: HeckeElt, verify: bool = True) -> ModuleElt:
        """Spherical only: the preimage of ``h`` in ``1_I H`` under ``phi``.

        The coefficient of ``M_y`` is read off at ``H_{w_I y}``; with
        ``verify`` the result is mapped back and compared against ``h``.
        """
        self._require_spherical()
        w_top = longest_element(self.system, self.subset)
        w_len = len(w_top.word)
        terms = {}
        for w, c in h.terms.items():
            y = min_rep(w, self.subset, LEFT)
            if len(w.word) - len(y.word) == w_len:
                terms[y] = c
        res = ModuleElt._raw(self, terms)
        if verify and self.phi(res) != h:
            raise ValueError("Hecke element does not lie in 1_I * H")
        return res

    def _require_spherical(self) -> None:
        if self.flavor != SPHERICAL:
            raise ValueError("phi is defined on the spherical module only")

    # -- bar involution ----------------------------------------------------

    def bar(self, a: ModuleElt) -> ModuleElt:
        out: dict[Element, LaurentPoly] = {}
        for x, c in a.terms.items():
            cb = c.bar()
            for y, d in self.project(self.hecke.bar_std(x)).terms.items():
                _add_into(out, y, d * cb)
        return ModuleElt._raw(self, out)

    # -- KL basis ----------------------------------------------------------

    def default_route(self) -> str:
        if self.flavor == ANTISPHERICAL or is_finite_parabolic(self.system, self.subset):
            return PROJECTION
        return RECURSION

    def kl_basis(self, x: Element, route: str | None = None) -> ModuleElt:
        """The self-dual KL basis element of ``x`` in ``^I W``.

        ``projection`` maps the Hecke KL basis across (``psi`` for the
        anti-spherical module, ``phi^-1`` of ``C_{w_I x}`` for the spherical
        one); ``recursion`` builds it inside the module from ``C_s`` and
        lower corrections.
        """
        route = route or self.default_route()
        if route not in self._kl:
            raise ValueError(f"unknown route {route!r}")
        memo = self._kl[route]
        hit = memo.get(x)
        if hit is not None:
            return hit
        self.check_index(x)
        if route == PROJECTION:
            if self.flavor == ANTISPHERICAL:
                res = self.project(self.hecke.kl_basis(x))
            else:
                w_top = longest_element(self.system, self.subset)
                res = self.phi_inverse(self.hecke.kl_basis(w_top * x), verify=False)
        else:
            res = self._kl_recursive(x)
        with self._lock:
            memo.setdefault(x, res)
        return res

    def _kl_recursive(self, x: Element) -> ModuleElt:
        if not x.word:
            return self.basis(x)
        s = x.word[-1]
        prev = self.kl_basis(x.rmul(s), RECURSION)
        terms = self._act_gen(prev.terms, s)
        for y, c in prev.terms.items():
            _add_into(terms, y, c * V)
        while True:
            bad = [y for y, c in terms.items() if y != x and c.min_degree() <= 0]
            if not bad:
                break
            y = max(bad, key=Element.sort_key)
            r = terms[y]
            corr = LaurentPoly({k: a for k, a in r.items() if k <= 0})
            corr = corr + LaurentPoly({-k: a for k, a in r.items() if k < 0})
            for z, c in self.kl_basis(y, RECURSION).terms.items():
                _add_into(terms, z, -(c * corr))
        return ModuleElt._raw(self, terms)

    def poly(self, y: Element, x: Element, route: str | None = None) -> LaurentPoly:
        """``m_{y,x}`` or ``n_{y,x}``: coefficient of the basis vector of ``y``
        in the KL basis element of ``x``."""
        self.check_index(y)
        return self.kl_basis(x, route).coeff(y)

    def table(self, index: Iterable[Element], route: str | None = None) -> KLTable:
        index = sorted(set(index), key=Element.sort_key)
        members = set(index)
        entries = {}
        for x in index:
            for y, p in self.kl_basis(x, route).terms.items():
                if y in members:
                    entries[(y, x)] = p
        kind = "m" if self.flavor == SPHERICAL else "n"
        return KLTable(kind, index, entries, self._meta())

    def _meta(self) -> dict:
        return {
            "system": self.system.name,
            "I": self.system.subset_labels(self.subset),
            "flavor": self.flavor,
        }

    # -- inverse polynomials -----------------------------------------------

    def check_ambient(self, ambient: Iterable[Element]) -> frozenset[Element]:
        ambient = frozenset(ambient)
        for x in ambient:
            self.check_index(x)
        check_downward_closed(ambient, within=self.contains)
        return ambient

    def inverse_table(self, ambient: Iterable[Element], route: str | None = None) -> KLTable:
        """``m^{y,x}`` / ``n^{y,x}`` over a downward-closed subset of ``^I W``."""
        ambient = frozenset(ambient)
        key = (ambient, route or self.default_route())
        entries = self._inverse_tables.get(key)
        if entries is None:
            self.check_ambient(ambient)
            entries = unitriangular_inverse(ambient, lambda y: self.kl_basis(y, route).terms)
            with self._lock:
                self._inverse_tables[key] = entries
        kind = "m_inv" if self.flavor == SPHERICAL else "n_inv"
        return KLTable(kind, sorted(ambient, key=Element.sort_key), entries, self._meta())

    def inverse_poly(self, y: Element, x: Element, ambient: Iterable[Element], route: str | None = None) -> LaurentPoly:
        table = self.inverse_table(ambient, route)
        members = set(table.index)
        for z in (x, y):
            if z not in members:
                raise AmbientNotClosed(f"{z} is not in the ambient set")
        return table[(y, x)]

    def check_inversion(self, ambient: Iterable[Element]) -> CheckReport:
        ambient = self.check_ambient(ambient)
        inv = self.inverse_table(ambient)
        name = f"{'m' if self.flavor == SPHERICAL else 'n'}-inversion"
        return check_inversion(name, ambient, lambda z, y: self.poly(z, y), lambda z, x: inv[(z, x)])


def parabolic_module(hecke: HeckeAlgebra, subset: Iterable[int], flavor: str) -> ParabolicModule:
    """Shared module instance per (algebra, subset, flavor), so memo tables are reused."""
    cache = hecke.__dict__.setdefault("_modules", {})
    key = (frozenset(subset), flavor)
    mod = cache.get(key)
    if mod is None:
        mod = cache.setdefault(key, ParabolicModule(hecke, subset, flavor))
    return mod


def quotient_ball(system, subset: Iterable[int], max_length: int) -> list[Element]:
    """``^I W`` truncated at ``max_length`` (always downward closed)."""
    subset = frozenset(subset)
    return [x for x in system.enumerate_up_to_length(max_length) if in_quotient(x, subset, LEFT)]


def check_parabolic_inversion(hecke: HeckeAlgebra, subset: Iterable[int], ambient: Iterable[Element]) -> CheckReport:
    """Both inversion formulas (spherical and anti-spherical) over ``ambient``."""
    ambient = list(ambient)
    checked = 0
    for flavor in (SPHERICAL, ANTISPHERICAL):
        rep = parabolic_module(hecke, subset, flavor).check_inversion(ambient)
        checked += rep.checked
        if not rep.passed:
            return CheckReport("parabolic inversion", False, checked, f"{rep.name}: {rep.counterexample}")
    return CheckReport("parabolic inversion", True, checked)
