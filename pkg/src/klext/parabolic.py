"""Parabolic subgroups, minimal coset representatives and double cosets."""

from __future__ import annotations

from collections.abc import Iterable

from .coxeter import LEFT, RIGHT, CoxeterSystem, Element
from .errors import InfiniteParabolic, NotMinimalRep

# Longest elements of finite crystallographic Coxeter groups of rank r have
# length at most max(r^2, 120); an ascent chain inside W_I that runs longer
# than this proves W_I is infinite.
def _length_cap(rank: int) -> int:
    return max(rank * rank, 120)


def in_quotient(x: Element, subset: Iterable[int], side: str) -> bool:
    """``x`` in ``W^I`` (side=right) or ``^I W`` (side=left)."""
    return not any(x.has_descent(s, side) for s in subset)


def min_rep(x: Element, subset: Iterable[int], side: str = RIGHT) -> Element:
    """Minimal element of ``x W_I`` (side=right) or ``W_I x`` (side=left)."""
    subset = tuple(sorted(subset))
    while True:
        for s in subset:
            if x.has_descent(s, side):
                x = x.rmul(s) if side == RIGHT else x.lmul(s)
                break
        else:
            return x


def quotient(system: CoxeterSystem, subset: Iterable[int], side: str, max_length: int) -> list[Element]:
    subset = frozenset(subset)
    return [x for x in system.enumerate_up_to_length(max_length) if in_quotient(x, subset, side)]


def is_finite_parabolic(system: CoxeterSystem, subset: Iterable[int], cap: int | None = None) -> bool:
    try:
        longest_element(system, subset, cap)
    except InfiniteParabolic:
        return False
    return True


def longest_element(system: CoxeterSystem, subset: Iterable[int], cap: int | None = None) -> Element:
    """The longest element ``w_I`` of ``W_I``.

    Climbs by right ascents inside ``W_I``; in a finite parabolic this stops
    at ``w_I``, in an infinite one it never stops, so a chain longer than
    ``cap`` raises :class:`InfiniteParabolic`.
    """
    subset = frozenset(subset)
    cache = system.__dict__.setdefault("_longest", {})
    if subset in cache:
        return cache[subset]
    if cap is None:
        cap = _length_cap(len(subset))
    order = sorted(subset)
    x = system.identity
    while True:
        for s in order:
            y = x.rmul(s)
            if len(y.word) > len(x.word):
                x = y
                break
        else:
            break
        if len(x.word) > cap:
            raise InfiniteParabolic(
                f"parabolic subgroup generated by {{{', '.join(system.subset_labels(subset))}}} "
                f"is infinite (ascent chain exceeded length {cap})"
            )
    cache[subset] = x
    return x


def parabolic_elements(system: CoxeterSystem, subset: Iterable[int]) -> list[Element]:
    """All elements of a finite ``W_I`` in (length, ShortLex) order."""
    subset = frozenset(subset)
    top = longest_element(system, subset)
    out = [system.identity]
    level = [system.identity]
    for _ in range(len(top.word)):
        nxt = {}
        for x in level:
            for s in subset:
                y = x.rmul(s)
                if len(y.word) > len(x.word):
                    nxt[y.word] = y
        level = [nxt[w] for w in sorted(nxt)]
        out.extend(level)
    return out


def double_min_reps(system: CoxeterSystem, left: Iterable[int], right: Iterable[int], max_length: int) -> list[Element]:
    """Elements of ``^J W^I`` (J = left, I = right) of length at most ``max_length``."""
    left, right = frozenset(left), frozenset(right)
    return [
        x for x in system.enumerate_up_to_length(max_length)
        if in_quotient(x, left, LEFT) and in_quotient(x, right, RIGHT)
    ]


def is_double_min_rep(z: Element, left: Iterable[int], right: Iterable[int]) -> bool:
    return in_quotient(z, left, LEFT) and in_quotient(z, right, RIGHT)


def is_regular(z: Element, left: Iterable[int], right: Iterable[int]) -> bool:
    """Whether ``W_J z W_I`` is regular, i.e. ``J`` meets ``z I z^-1`` trivially."""
    left, right = frozenset(left), frozenset(right)
    if not is_double_min_rep(z, left, right):
        raise NotMinimalRep(f"{z} is not a minimal (W_J, W_I) double coset representative")
    zi = z.inverse()
    for t in right:
        c = z.rmul(t) * zi
        if len(c.word) == 1 and c.word[0] in left:
            return False
    return True


def regular_double_reps(system: CoxeterSystem, left: Iterable[int], right: Iterable[int], max_length: int) -> list[Element]:
    left, right = frozenset(left), frozenset(right)
    return [z for z in double_min_reps(system, left, right, max_length) if is_regular(z, left, right)]


def double_coset(z: Element, left: Iterable[int], right: Iterable[int]) -> set[Element]:
    """The full double coset ``W_J z W_I``; both parabolics must be finite."""
    system = z.system
    wl = parabolic_elements(system, left)
    wr = parabolic_elements(system, right)
    return {a * z * b for a in wl for b in wr}
