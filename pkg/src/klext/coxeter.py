"""Crystallographic Coxeter systems and their elements.

Elements are stored by their ShortLex-minimal reduced word with respect to
the declared generator order.  The normal form is computed by tracking the
action of the inverse element on the simple roots of an integral root
representation: a generator ``s`` is a left descent of ``w`` exactly when
``w^-1(alpha_s)`` is a negative root, and the ShortLex word is obtained by
repeatedly peeling off the smallest left descent.
"""

from __future__ import annotations

import hashlib
import json
import math
import threading
from collections.abc import Iterable, Sequence
from itertools import combinations
from pathlib import Path

from .errors import InvalidCoxeterMatrix, SystemMismatch, UnknownGenerator

INF = 0  # encoding of m_st = infinity in matrices and files

LEFT = "left"
RIGHT = "right"

# m_st -> (a_st, a_ts) for s < t; the product a_st * a_ts = 4 cos^2(pi/m)
# (or 4 for m = infinity) makes s*t act with order exactly m.
_CARTAN_PAIR = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), INF: (-2, -2)}


class Element:
    """An element of a Coxeter group, in ShortLex normal form."""

    __slots__ = ("system", "word", "_hash", "_right", "_left", "_inverse", "__weakref__")

    def __init__(self, system: "CoxeterSystem", word: tuple[int, ...]):
        self.system = system
        self.word = word
        self._hash = hash(word)
        self._right: dict[int, Element] = {}
        self._left: dict[int, Element] = {}
        self._inverse: Element | None = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.word == other.word and self.system is other.system

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.word), self.word)

    def labels(self) -> list[str]:
        return [self.system.generators[i] for i in self.word]

    def __str__(self) -> str:
        return ",".join(self.labels()) if self.word else "e"

    def __repr__(self) -> str:
        return f"<{self.system.name}: {self}>"

    def is_identity(self) -> bool:
        return not self.word

    def __mul__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        if other.system is not self.system:
            raise SystemMismatch("elements belong to different Coxeter systems")
        x = self
        for s in other.word:
            x = x.rmul(s)
        return x

    def rmul(self, s: int) -> "Element":
        """The product ``x * s``."""
        y = self._right.get(s)
        if y is None:
            y = self.system._element(self.word + (s,))
            self._right[s] = y
        return y

    def lmul(self, s: int) -> "Element":
        """The product ``s * x``."""
        y = self._left.get(s)
        if y is None:
            y = self.system._element((s,) + self.word)
            self._left[s] = y
        return y

    def mul_gen(self, s: int, side: str = RIGHT) -> tuple["Element", bool]:
        """Multiply by a generator; also report whether the length went up."""
        y = self.rmul(s) if side == RIGHT else self.lmul(s)
        return y, len(y.word) > len(self.word)

    def inverse(self) -> "Element":
        if self._inverse is None:
            self._inverse = self.system._element(tuple(reversed(self.word)))
            self._inverse._inverse = self
        return self._inverse

    def has_descent(self, s: int, side: str = RIGHT) -> bool:
        y = self.rmul(s) if side == RIGHT else self.lmul(s)
        return len(y.word) < len(self.word)

    def descents(self, side: str = RIGHT) -> frozenset[int]:
        return frozenset(s for s in range(self.system.rank) if self.has_descent(s, side))

    def bruhat_leq(self, other: "Element") -> bool:
        return self.system.bruhat_leq(self, other)


class CoxeterSystem:
    """A Coxeter system given by a crystallographic Coxeter matrix.

    ``matrix[i][j]`` is ``m_st`` for the ``i``-th and ``j``-th generators;
    infinity may be written as ``0``, ``None`` or ``math.inf``.
    """

    def __init__(self, generators: Sequence[str], matrix: Sequence[Sequence], name: str | None = None):
        generators = [str(g) for g in generators]
        n = len(generators)
        if len(set(generators)) != n:
            raise InvalidCoxeterMatrix("generator labels must be distinct")
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise InvalidCoxeterMatrix(f"matrix must be {n}x{n}")
        m = [[_normalize_entry(e) for e in row] for row in matrix]
        for i in range(n):
            if m[i][i] != 1:
                raise InvalidCoxeterMatrix(f"diagonal entry ({i},{i}) must be 1")
            for j in range(n):
                if i == j:
                    continue
                if m[i][j] != m[j][i]:
                    raise InvalidCoxeterMatrix(f"matrix not symmetric at ({i},{j})")
                if m[i][j] not in _CARTAN_PAIR:
                    raise InvalidCoxeterMatrix(
                        f"entry m({generators[i]},{generators[j]}) = {m[i][j]} is not in "
                        "{2, 3, 4, 6, infinity}"
                    )
        self.generators: tuple[str, ...] = tuple(generators)
        self.matrix: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in m)
        self.name = name or "custom"
        self.rank = n
        self._index = {g: i for i, g in enumerate(generators)}

        cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in combinations(range(n), 2):
            cartan[i][j], cartan[j][i] = _CARTAN_PAIR[m[i][j]]
        # cartan[s][j] = <alpha_j, alpha_s^vee>
        self.cartan = tuple(tuple(row) for row in cartan)

        self._elements: dict[tuple[int, ...], Element] = {}
        self._bruhat: dict[tuple[tuple[int, ...], tuple[int, ...]], bool] = {}
        self._lock = threading.Lock()
        self.identity = self._intern(())

    # -- construction ------------------------------------------------------

    @classmethod
    def preset(cls, name: str) -> "CoxeterSystem":
        try:
            labels, matrix = PRESETS[name]
        except KeyError:
            raise InvalidCoxeterMatrix(
                f"unknown preset {name!r}; choose from {', '.join(PRESETS)}"
            ) from None
        return cls(labels, matrix, name=name)

    @classmethod
    def from_json(cls, data: dict, name: str | None = None) -> "CoxeterSystem":
        try:
            return cls(data["generators"], data["matrix"], name=name or data.get("name"))
        except (KeyError, TypeError) as exc:
            raise InvalidCoxeterMatrix(f"malformed Coxeter matrix document: {exc}") from None

    @classmethod
    def from_file(cls, path: str | Path) -> "CoxeterSystem":
        p = Path(path)
        try:
            data = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise InvalidCoxeterMatrix(f"{p}: {exc}") from None
        return cls.from_json(data, name=data.get("name", p.stem))

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "matrix": [list(r) for r in self.matrix]}

    def fingerprint(self) -> str:
        """Content hash of the generator order and Coxeter matrix."""
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.name}, generators={list(self.generators)})"

    # -- generators and words ----------------------------------------------

    def index(self, label) -> int:
        if isinstance(label, int) and not isinstance(label, bool):
            if 0 <= label < self.rank:
                return label
            raise UnknownGenerator(f"generator index {label} out of range")
        try:
            return self._index[str(label).strip()]
        except KeyError:
            raise UnknownGenerator(
                f"unknown generator {label!r}; generators are {', '.join(self.generators)}"
            ) from None

    def gen(self, label) -> Element:
        return self._element((self.index(label),))

    def from_word(self, letters: Iterable) -> Element:
        """The element represented by a (not necessarily reduced) word."""
        return self._element(tuple(self.index(a) for a in letters))

    def parse_word(self, text: str) -> Element:
        """Parse ``"s1,s2,s1"`` (or ``"e"`` / empty) into an element."""
        text = text.strip()
        if text in ("", "e"):
            return self.identity
        return self.from_word(t for t in text.split(",") if t.strip())

    def parse_subset(self, text: str | Iterable | None) -> frozenset[int]:
        if text is None:
            return frozenset()
        if isinstance(text, str):
            items = [t for t in text.split(",") if t.strip()]
        else:
            items = list(text)
        return frozenset(self.index(t) for t in items)

    def subset_labels(self, subset: Iterable[int]) -> list[str]:
        return [self.generators[i] for i in sorted(subset)]

    # -- normal form -------------------------------------------------------

    def _intern(self, word: tuple[int, ...]) -> Element:
        x = self._elements.get(word)
        if x is None:
            with self._lock:
                x = self._elements.setdefault(word, Element(self, word))
        return x

    def _element(self, word: tuple[int, ...]) -> Element:
        x = self._elements.get(word)
        if x is not None:
            return x
        return self._intern(self._normal_form(word))

    def _reflect_right(self, cols: list[list[int]], s: int) -> None:
        # cols[j] holds N(alpha_j); replace N by N * s_s.
        col_s = cols[s]
        row = self.cartan[s]
        for j in range(self.rank):
            a = row[j]
            if a:
                cols[j] = [x - a * y for x, y in zip(cols[j], col_s)]

    def _normal_form(self, word: tuple[int, ...]) -> tuple[int, ...]:
        n = self.rank
        cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        for s in reversed(word):
            self._reflect_right(cols, s)
        # cols[j] is now w^-1(alpha_j) for the element w represented by word
        out = []
        while True:
            for s in range(n):
                if any(c < 0 for c in cols[s]):
                    break
            else:
                return tuple(out)
            out.append(s)
            self._reflect_right(cols, s)

    # -- order and enumeration ---------------------------------------------

    def bruhat_leq(self, y: Element, x: Element) -> bool:
        """Whether ``y <= x`` in the Bruhat order."""
        if y.system is not self or x.system is not self:
            raise SystemMismatch("elements belong to a different Coxeter system")
        return self._bruhat_leq(y, x)

    def _bruhat_leq(self, y: Element, x: Element) -> bool:
        ly, lx = len(y.word), len(x.word)
        if ly > lx:
            return False
        if ly == lx:
            return y.word == x.word
        if ly == 0:
            return True
        key = (y.word, x.word)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        s = x.word[0]
        sx = self._intern(x.word[1:])
        sy = y.lmul(s)
        res = self._bruhat_leq(sy if len(sy.word) < ly else y, sx)
        self._bruhat[key] = res
        return res

    def enumerate_up_to_length(self, max_length: int) -> list[Element]:
        """All elements of length at most ``max_length`` in (length, ShortLex) order."""
        if max_length < 0:
            raise ValueError("max_length must be non-negative")
        out = [self.identity]
        level = [self.identity]
        for _ in range(max_length):
            nxt = {}
            for x in level:
                for s in range(self.rank):
                    y = x.rmul(s)
                    if len(y.word) > len(x.word):
                        nxt[y.word] = y
            if not nxt:
                break
            level = [nxt[w] for w in sorted(nxt)]
            out.extend(level)
        return out

    def lower_covers(self, x: Element) -> list[Element]:
        """Elements ``y < x`` with ``l(y) = l(x) - 1`` (single-letter deletions)."""
        out = {}
        w = x.word
        for i in range(len(w)):
            y = self._element(w[:i] + w[i + 1:])
            if len(y.word) == len(w) - 1:
                out[y.word] = y
        return [out[k] for k in sorted(out)]


def _normalize_entry(e) -> int:
    if e is None:
        return INF
    if isinstance(e, float):
        if math.isinf(e):
            return INF
        if not e.is_integer():
            raise InvalidCoxeterMatrix(f"non-integer Coxeter matrix entry {e}")
        e = int(e)
    if isinstance(e, str):
        if e.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        e = int(e)
    if not isinstance(e, int) or isinstance(e, bool):
        raise InvalidCoxeterMatrix(f"bad Coxeter matrix entry {e!r}")
    return e


def _chain(labels: Sequence[str], bonds: Sequence[int]) -> tuple[list[str], list[list[int]]]:
    n = len(labels)
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, b in enumerate(bonds):
        m[i][i + 1] = m[i + 1][i] = b
    return list(labels), m


def _with_edges(labels: Sequence[str], edges: dict[tuple[int, int], int]):
    n = len(labels)
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (i, j), b in edges.items():
        m[i][j] = m[j][i] = b
    return list(labels), m


PRESETS = {
    "A1": _chain(["s1"], []),
    "A2": _chain(["s1", "s2"], [3]),
    "A3": _chain(["s1", "s2", "s3"], [3, 3]),
    "A4": _chain(["s1", "s2", "s3", "s4"], [3, 3, 3]),
    "B2": _chain(["s1", "s2"], [4]),
    "B3": _chain(["s1", "s2", "s3"], [3, 4]),
    "C3": _chain(["s1", "s2", "s3"], [3, 4]),
    "G2": _chain(["s1", "s2"], [6]),
    # affine node s0 is ordered last
    "A1~": _with_edges(["s1", "s0"], {(0, 1): INF}),
    "A2~": _with_edges(["s1", "s2", "s0"], {(0, 1): 3, (1, 2): 3, (0, 2): 3}),
    "C2~": _with_edges(["s1", "s2", "s0"], {(0, 1): 4, (0, 2): 4}),
    "G2~": _with_edges(["s1", "s2", "s0"], {(0, 1): 6, (1, 2): 3}),
}


def from_word(system: CoxeterSystem, letters: Iterable) -> Element:
    return system.from_word(letters)


def length(x: Element) -> int:
    return len(x.word)


def inverse(x: Element) -> Element:
    return x.inverse()


def descents(x: Element, side: str = RIGHT) -> frozenset[int]:
    return x.descents(side)


def bruhat_leq(y: Element, x: Element) -> bool:
    return y.system.bruhat_leq(y, x)


def enumerate_up_to_length(system: CoxeterSystem, max_length: int) -> list[Element]:
    return system.enumerate_up_to_length(max_length)
