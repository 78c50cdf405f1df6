"""Decorated corelations.

A :class:`DecorationFunctor` is a lax symmetric monoidal functor out of the
category of restricted cospans ``N -f-> P <-m- P'`` (``m`` in the M-class of
its factorisation system). Instances implement transport along a plain map
(:meth:`~DecorationFunctor.push`) and along an opposite M-map
(:meth:`~DecorationFunctor.pull`); transport along a general restricted cospan
is the composite of the two.
"""
from __future__ import annotations

import abc
from dataclasses import dataclass, field
from typing import Any, Callable

from . import finset as fs
from .cospan import (
    Corelation,
    Cospan,
    FactSys,
    FootMismatch,
    corelation_compose_parts,
    corelation_tensor,
    frobenius_generator,
    identity_cospan,
    iter_isos,
    braiding,
    to_corelation,
)
from .finset import FinFunction, FinSet

Decoration = Any


class FunctorMismatch(ValueError):
    pass


class SourceMismatch(ValueError):
    pass


@dataclass(frozen=True)
class DecorationDomain:
    """The set ``F(N)``, as a membership test."""

    functor: DecorationFunctor
    N: FinSet

    def __contains__(self, s) -> bool:
        return self.functor.is_decoration(self.N, s)


class DecorationFunctor(abc.ABC):
    @abc.abstractmethod
    def system(self) -> FactSys: ...

    @abc.abstractmethod
    def is_decoration(self, N: FinSet, s: Decoration) -> bool: ...

    @abc.abstractmethod
    def push(self, f: FinFunction, s: Decoration) -> Decoration:
        """Transport ``s`` on ``f.dom`` to ``f.cod`` along the map ``f``."""

    @abc.abstractmethod
    def pull(self, m: FinFunction, s: Decoration) -> Decoration:
        """Transport ``s`` on ``m.cod`` to ``m.dom`` along ``m^op``; ``m`` must lie in M."""

    @abc.abstractmethod
    def laxator(self, N: FinSet, s: Decoration, M: FinSet, t: Decoration) -> Decoration: ...

    @abc.abstractmethod
    def unit(self) -> Decoration: ...

    def equal(self, N: FinSet, s: Decoration, t: Decoration) -> bool:
        return s == t

    def on_object(self, N: FinSet) -> DecorationDomain:
        return DecorationDomain(self, N)

    def on_map(self, c: Cospan, s: Decoration) -> Decoration:
        """Transport along ``N -c.i-> P <-c.o- P'``."""
        if not self.system().in_M(c.o):
            raise ValueError(f"right leg {c.o} is not in M of {self.system().value}")
        return self.pull(c.o, self.push(c.i, s))

    def empty(self, N: FinSet) -> Decoration:
        """The empty decoration ``F(!)(unit)`` on ``N``."""
        return self.push(fs.initial(N), self.unit())


@dataclass(frozen=True, eq=False)
class DecoratedMorphism:
    corel: Corelation
    decoration: Decoration
    functor: DecorationFunctor

    def __post_init__(self):
        if self.corel.system is not self.functor.system():
            raise FunctorMismatch(
                f"{self.corel.system.value} corelation for a {self.functor.system().value} functor")

    @property
    def left_foot(self) -> FinSet:
        return self.corel.left_foot

    @property
    def right_foot(self) -> FinSet:
        return self.corel.right_foot

    @property
    def apex(self) -> FinSet:
        return self.corel.apex


def decorate(c: Cospan, s: Decoration, F: DecorationFunctor) -> DecoratedMorphism:
    """Decorated cospan ``(c, s)`` reduced to its corelation part."""
    corel, m = to_corelation(c, F.system())
    return DecoratedMorphism(corel, F.pull(m, s), F)


def lift(c: Cospan, F: DecorationFunctor) -> DecoratedMorphism:
    """Image of a plain cospan: its corelation part with the empty decoration."""
    return decorate(c, F.empty(c.apex), F)


def decorated_identity(X: FinSet | int, F: DecorationFunctor) -> DecoratedMorphism:
    return lift(identity_cospan(X), F)


def lift_frobenius(which: str, X: FinSet | int, F: DecorationFunctor) -> DecoratedMorphism:
    return lift(frobenius_generator(which, X), F)


def decorated_braiding(X, Y, F: DecorationFunctor) -> DecoratedMorphism:
    return lift(braiding(X, Y), F)


def decorated_compose(a: DecoratedMorphism, b: DecoratedMorphism) -> DecoratedMorphism:
    """Diagrammatic composite ``a ; b``."""
    if a.functor is not b.functor:
        raise FunctorMismatch("composing morphisms decorated by different functors")
    if a.right_foot != b.left_foot:
        raise FootMismatch(f"right foot {a.right_foot} vs left foot {b.left_foot}")
    F = a.functor
    parts = corelation_compose_parts(a.corel, b.corel)
    s = F.laxator(a.apex, a.decoration, b.apex, b.decoration)
    s = F.push(fs.copair(parts.j_N, parts.j_M), s)
    s = F.pull(parts.m, s)
    return DecoratedMorphism(parts.corel, s, F)


def decorated_tensor(a: DecoratedMorphism, b: DecoratedMorphism) -> DecoratedMorphism:
    if a.functor is not b.functor:
        raise FunctorMismatch("tensoring morphisms decorated by different functors")
    F = a.functor
    s = F.laxator(a.apex, a.decoration, b.apex, b.decoration)
    return DecoratedMorphism(corelation_tensor(a.corel, b.corel), s, F)


def decorated_equal(a: DecoratedMorphism, b: DecoratedMorphism) -> bool:
    """Iso classes agree: some apex bijection ``f`` commutes with the legs and ``F f (s) = s'``."""
    if a.functor is not b.functor:
        return False
    if a.left_foot != b.left_foot or a.right_foot != b.right_foot:
        return False
    F = a.functor
    for f in iter_isos(a.corel.underlying, b.corel.underlying):
        if F.equal(b.apex, F.push(f, a.decoration), b.decoration):
            return True
    return False


@dataclass(frozen=True, eq=False)
class DecDataMorphism:
    """A morphism ``(A, alpha)`` of decorating data with ``A`` the identity on FinSet.

    ``alpha(N, s)`` translates a source decoration on ``N`` into a target one.
    """

    source: DecorationFunctor
    target: DecorationFunctor
    alpha: Callable[[FinSet, Decoration], Decoration]
    name: str = field(default="alpha")

    def __post_init__(self):
        src, tgt = self.source.system(), self.target.system()
        # A = id must send M into M'
        if not _m_contained(src, tgt):
            raise ValueError(f"M of {src.value} is not contained in M of {tgt.value}")

    def then(self, other: DecDataMorphism) -> DecDataMorphism:
        if other.source is not self.target:
            raise SourceMismatch("DecData morphisms do not compose")
        first, second = self.alpha, other.alpha
        return DecDataMorphism(self.source, other.target,
                               lambda N, s: second(N, first(N, s)),
                               f"{self.name};{other.name}")


_M_ORDER = {FactSys.ALL_ISO: 0, FactSys.EPI_MONO: 1, FactSys.ISO_ALL: 2}


def _m_contained(src: FactSys, tgt: FactSys) -> bool:
    return _M_ORDER[src] <= _M_ORDER[tgt]


def identity_decdata(F: DecorationFunctor) -> DecDataMorphism:
    return DecDataMorphism(F, F, lambda N, s: s, "id")


def apply_decdata_morphism(phi: DecDataMorphism, f: DecoratedMorphism) -> DecoratedMorphism:
    """The hypergraph functor induced by ``phi`` on a decorated corelation."""
    if f.functor is not phi.source:
        raise SourceMismatch("morphism is not decorated by the source of phi")
    tgt = phi.target
    corel, m = to_corelation(f.corel.underlying, tgt.system())
    t = tgt.pull(m, phi.alpha(f.apex, f.decoration))
    return DecoratedMorphism(corel, t, tgt)


class GraphDecoration(DecorationFunctor):
    """Finite multisets of undirected edges on ``N``.

    A decoration is a sorted tuple of pairs ``(a, b)`` with ``a <= b``.
    Transport along ``m^op`` for an injection ``m`` relabels edges by
    preimage and drops those with an endpoint outside the image.
    """

    def __init__(self, system: FactSys = FactSys.EPI_MONO):
        if system is FactSys.ISO_ALL:
            raise ValueError("graph decorations only pull back along injections")
        self._system = system

    def __repr__(self) -> str:
        return f"GraphDecoration({self._system.value})"

    def system(self) -> FactSys:
        return self._system

    @staticmethod
    def normalize(edges) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((min(a, b), max(a, b)) for a, b in edges))

    def is_decoration(self, N: FinSet, s) -> bool:
        return all(0 <= a <= b < N.size for a, b in s) and tuple(s) == self.normalize(s)

    def push(self, f: FinFunction, s):
        t = f.table
        return self.normalize((t[a], t[b]) for a, b in s)

    def pull(self, m: FinFunction, s):
        if not fs.is_mono(m):
            raise ValueError(f"{m} is not injective")
        back = {y: k for k, y in enumerate(m.table)}
        return self.normalize((back[a], back[b]) for a, b in s if a in back and b in back)

    def laxator(self, N: FinSet, s, M: FinSet, t):
        off = N.size
        return self.normalize(list(s) + [(a + off, b + off) for a, b in t])

    def unit(self):
        return ()


def scale_edges(k: int) -> Callable[[FinSet, Decoration], Decoration]:
    """Natural, monoidal translation repeating every edge ``k`` times."""
    def alpha(N, s):
        return GraphDecoration.normalize(e for e in s for _ in range(k))
    return alpha

