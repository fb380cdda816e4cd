"""Exact Laurent polynomials in ``v`` with integer coefficients."""

from __future__ import annotations

from typing import Iterator, Mapping, Union

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """An element of ``Z[v, v^-1]``, stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their coefficient maps are equal.  Instances are treated as
    immutable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for k, a in coeffs.items():
                if a:
                    c[int(k)] = int(a)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "LaurentPoly":
        return cls._raw({k: a} if a else {})

    @classmethod
    def const(cls, a: int) -> "LaurentPoly":
        return cls.monomial(0, a)

    @classmethod
    def coerce(cls, a: Scalar) -> "LaurentPoly":
        if isinstance(a, LaurentPoly):
            return a
        if isinstance(a, int):
            return cls.const(a)
        raise TypeError(f"cannot coerce {type(a).__name__} to LaurentPoly")

    # -- inspection --------------------------------------------------------

    def coeff(self, k: int) -> int:
        return self._c.get(k, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_degree(self) -> int | None:
        return min(self._c) if self._c else None

    def max_degree(self) -> int | None:
        return max(self._c) if self._c else None

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for k, a in other._c.items():
            b = c.get(k, 0) + a
            if b:
                c[k] = b
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -a for k, a in self._c.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({k: a * other for k, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        c: dict[int, int] = {}
        for k1, a1 in self._c.items():
            for k2, a2 in other._c.items():
                k = k1 + k2
                c[k] = c.get(k, 0) + a1 * a2
        return LaurentPoly._raw({k: a for k, a in c.items() if a})

    __rmul__ = __mul__

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by ``v^n``."""
        return LaurentPoly._raw({k + n: a for k, a in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The substitution ``v -> v^-1``."""
        return LaurentPoly._raw({-k: a for k, a in self._c.items()})

    def at_neg_v(self) -> "LaurentPoly":
        """The substitution ``v -> -v``."""
        return LaurentPoly._raw({k: (-a if k % 2 else a) for k, a in self._c.items()})

    def __call__(self, value):
        return sum(a * value**k for k, a in self._c.items())

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- text / json -------------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for k, a in sorted(self._c.items()):
            if k == 0:
                term = str(abs(a))
            else:
                mono = "v" if k == 1 else f"v^{k}"
                term = mono if abs(a) == 1 else f"{abs(a)}*{mono}"
            if not out:
                out.append(term if a > 0 else "-" + term)
            else:
                out.append(("+ " if a > 0 else "- ") + term)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> dict[str, int]:
        return {str(k): a for k, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        if not isinstance(data, Mapping):
            raise ValueError("polynomial JSON must be an object")
        c = {}
        for k, a in data.items():
            if not isinstance(a, int) or isinstance(a, bool):
                raise ValueError(f"bad coefficient {a!r}")
            c[int(k)] = a
        return cls(c)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
V = LaurentPoly.monomial(1)
V_INV = LaurentPoly.monomial(-1)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def bar(a: LaurentPoly) -> LaurentPoly:
    return a.bar()


def coeff(a: LaurentPoly, k: int) -> int:
    return a.coeff(k)
