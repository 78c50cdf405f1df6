"""Pointwise left Kan extension of decorating data to all cospans.

An element of ``Lan F (X)`` is a pair ``(e: X -> N, s in F N)`` with ``e`` in
the E-class of the source system, taken up to isomorphism of ``N``. The set
itself is never built; only elements and the operations on them exist.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from . import finset as fs
from .cospan import (
    ISO_SEARCH_BOUND,
    ApexTooLarge,
    Cospan,
    FactSys,
    FootMismatch,
    from_map,
    from_map_op,
)
from .decor import (
    DecDataMorphism,
    Decoration,
    DecoratedMorphism,
    DecorationFunctor,
    SourceMismatch,
)
from .finset import FinFunction, FinSet


@dataclass(frozen=True, eq=False)
class LanElement:
    e: FinFunction
    s: Decoration

    @property
    def base(self) -> FinSet:
        return self.e.dom

    @property
    def apex(self) -> FinSet:
        return self.e.cod

    def __repr__(self) -> str:
        return f"LanElement({list(self.e.table)} -> {self.e.cod.size}, {self.s!r})"


def kappa(X: FinSet, s: Decoration) -> LanElement:
    return LanElement(fs.identity(X), s)


def lan_apply(F: DecorationFunctor, f: Cospan, x: LanElement) -> LanElement:
    """Action of ``Lan F`` on the cospan ``f: X -> Y``."""
    if f.left_foot != x.base:
        raise FootMismatch(f"cospan out of {f.left_foot} applied to an element over {x.base}")
    jN, jM = fs.pushout(x.e, f.i)
    e2, m = F.system().factor(fs.compose(f.o, jM))
    return LanElement(e2, F.pull(m, F.push(jN, x.s)))


def lan_element_equal(F: DecorationFunctor, x: LanElement, y: LanElement,
                      bound: int = ISO_SEARCH_BOUND) -> bool:
    if x.base != y.base:
        raise FootMismatch("comparing elements over different sets")
    n = x.apex.size
    if n != y.apex.size:
        return False
    forced: dict[int, int] = {}
    for a, b in zip(x.e.table, y.e.table):
        if forced.setdefault(a, b) != b:
            return False
    if len(set(forced.values())) != len(forced):
        return False
    free_x = [k for k in range(n) if k not in forced]
    if free_x and n > bound:
        raise ApexTooLarge(f"apex of size {n} exceeds the search bound {bound}")
    free_y = sorted(set(range(n)) - set(forced.values()))
    for perm in permutations(free_y):
        table = dict(forced)
        table.update(zip(free_x, perm))
        b = FinFunction(x.apex, y.apex, [table[k] for k in range(n)])
        if F.equal(y.apex, F.push(b, x.s), y.s):
            return True
    return False


class LanFunctor(DecorationFunctor):
    """``Lan F`` presented as decorating data over the (iso, all) system."""

    def __init__(self, source: DecorationFunctor):
        self.source = source

    def __repr__(self) -> str:
        return f"LanFunctor({self.source!r})"

    def system(self) -> FactSys:
        return FactSys.ISO_ALL

    def is_decoration(self, N: FinSet, x) -> bool:
        return (isinstance(x, LanElement) and x.base == N
                and self.source.system().in_E(x.e)
                and self.source.is_decoration(x.apex, x.s))

    def push(self, f: FinFunction, x: LanElement) -> LanElement:
        return lan_apply(self.source, from_map(f), x)

    def pull(self, m: FinFunction, x: LanElement) -> LanElement:
        return lan_apply(self.source, from_map_op(m), x)

    def on_map(self, c: Cospan, x: LanElement) -> LanElement:
        return lan_apply(self.source, c, x)

    def laxator(self, N: FinSet, x: LanElement, M: FinSet, y: LanElement) -> LanElement:
        s = self.source.laxator(x.apex, x.s, y.apex, y.s)
        return LanElement(fs.tensor(x.e, y.e), s)

    def unit(self) -> LanElement:
        return kappa(FinSet(0), self.source.unit())

    def equal(self, N: FinSet, x: LanElement, y: LanElement) -> bool:
        return lan_element_equal(self.source, x, y)


def kappa_morphism(F: DecorationFunctor, LF: LanFunctor | None = None) -> DecDataMorphism:
    """The canonical ``(id, kappa): F -> Lan F``."""
    LF = LF if LF is not None else LanFunctor(F)
    return DecDataMorphism(F, LF, kappa, "kappa")


def kan_on_morphism(phi: DecDataMorphism, x: LanElement) -> LanElement:
    """Component of ``Kan(phi)`` at ``x``: refactor ``e`` in the target system."""
    if not phi.source.system().in_E(x.e):
        raise SourceMismatch("element is not over the source of phi")
    tgt = phi.target
    e2, m = tgt.system().factor(x.e)
    return LanElement(e2, tgt.pull(m, phi.alpha(x.apex, x.s)))


def as_lan_element(f: DecoratedMorphism) -> LanElement:
    """Identify ``(X -i-> N <-o- Y, s)`` with ``([i, o], s)`` over ``X + Y``."""
    return LanElement(f.corel.underlying.legs(), f.decoration)


def comp_cospan(X: FinSet, Y: FinSet, Z: FinSet) -> Cospan:
    """``X+Y+Y+Z -> X+Y+Z <- X+Z``: merges the two copies of ``Y``."""
    x, y, z = X.size, Y.size, Z.size
    XYZ = fs.sum_set(X, Y, Z)
    left = list(range(x)) + list(range(x, x + y)) * 2 + list(range(x + y, x + y + z))
    right = list(range(x)) + list(range(x + y, x + y + z))
    return Cospan(FinFunction(fs.sum_set(X, Y, Y, Z), XYZ, left),
                  FinFunction(fs.sum_set(X, Z), XYZ, right))


def lan_compose(F: DecorationFunctor, x: LanElement, y: LanElement,
                X: FinSet, Y: FinSet, Z: FinSet) -> LanElement:
    """Composite of ``x`` over ``X+Y`` and ``y`` over ``Y+Z``, by the ``comp`` cospan."""
    LF = LanFunctor(F)
    return lan_apply(F, comp_cospan(X, Y, Z),
                     LF.laxator(fs.sum_set(X, Y), x, fs.sum_set(Y, Z), y))
