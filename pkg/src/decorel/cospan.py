"""Cospans and corelations of finite sets.

A cospan ``X -i-> N <-o- Y`` is stored as a concrete representative; the
morphisms of the cospan category are iso classes, reached only through
:func:`iso_equal`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from . import finset as fs
from .finset import FinFunction, FinSet, as_finset

ISO_SEARCH_BOUND = 10


class FootMismatch(ValueError):
    pass


class ApexTooLarge(ValueError):
    pass


class FactSys(enum.Enum):
    """The three factorisation systems on FinSet used by the pipeline.

    ``ALL_ISO`` is (all maps, isos): corelations are plain cospans.
    ``ISO_ALL`` is (isos, all maps): the only corelation ``X -> Y`` is the coproduct.
    ``EPI_MONO`` is (surjections, injections).
    """

    ALL_ISO = "AllIso"
    ISO_ALL = "IsoAll"
    EPI_MONO = "EpiMono"

    def in_E(self, f: FinFunction) -> bool:
        if self is FactSys.ALL_ISO:
            return True
        if self is FactSys.ISO_ALL:
            return fs.is_iso(f)
        return fs.is_epi(f)

    def in_M(self, f: FinFunction) -> bool:
        if self is FactSys.ALL_ISO:
            return fs.is_iso(f)
        if self is FactSys.ISO_ALL:
            return True
        return fs.is_mono(f)

    def factor(self, f: FinFunction) -> tuple[FinFunction, FinFunction]:
        """Return ``(e, m)`` with ``e`` in E, ``m`` in M and ``e.then(m) == f``."""
        if self is FactSys.ALL_ISO:
            return f, fs.identity(f.cod)
        if self is FactSys.ISO_ALL:
            return fs.identity(f.dom), f
        return fs.epi_mono_factor(f)


@dataclass(frozen=True, eq=False)
class Cospan:
    i: FinFunction
    o: FinFunction

    def __post_init__(self):
        if self.i.cod != self.o.cod:
            raise FootMismatch(f"legs land in different apexes: {self.i.cod} vs {self.o.cod}")

    @property
    def left_foot(self) -> FinSet:
        return self.i.dom

    @property
    def right_foot(self) -> FinSet:
        return self.o.dom

    @property
    def apex(self) -> FinSet:
        return self.i.cod

    def legs(self) -> FinFunction:
        """The copairing ``[i, o]: X + Y -> N``."""
        return fs.copair(self.i, self.o)

    def __repr__(self) -> str:
        return (f"Cospan({list(self.i.table)} -> {self.apex.size} <- {list(self.o.table)})")

    def op(self) -> Cospan:
        return Cospan(self.o, self.i)


def from_map(f: FinFunction) -> Cospan:
    """The cospan ``X -f-> Y == Y``."""
    return Cospan(f, fs.identity(f.cod))


def from_map_op(f: FinFunction) -> Cospan:
    """The cospan ``Y == Y <-f- X``."""
    return Cospan(fs.identity(f.cod), f)


def identity_cospan(X: FinSet | int) -> Cospan:
    idX = fs.identity(as_finset(X))
    return Cospan(idX, idX)


def braiding(X: FinSet | int, Y: FinSet | int) -> Cospan:
    return from_map(fs.swap(X, Y))


def cospan_compose_parts(a: Cospan, b: Cospan) -> tuple[Cospan, FinFunction, FinFunction]:
    """Compose ``a`` then ``b``; also return the pushout injections ``(j_N, j_M)``."""
    if a.right_foot != b.left_foot:
        raise FootMismatch(f"right foot {a.right_foot} vs left foot {b.left_foot}")
    jN, jM = fs.pushout(a.o, b.i)
    return Cospan(fs.compose(a.i, jN), fs.compose(b.o, jM)), jN, jM


def cospan_compose(a: Cospan, b: Cospan) -> Cospan:
    """Diagrammatic composite ``a ; b`` by pushout over the shared foot."""
    return cospan_compose_parts(a, b)[0]


def monoidal_product(a: Cospan, b: Cospan) -> Cospan:
    return Cospan(fs.tensor(a.i, b.i), fs.tensor(a.o, b.o))


def frobenius_generator(which: str, X: FinSet | int) -> Cospan:
    X = as_finset(X)
    XX = fs.coproduct(X, X)[0]
    mu = fs.FinFunction(XX, X, list(range(X.size)) * 2)
    bang = fs.initial(X)
    if which == "mu":
        return from_map(mu)
    if which == "eta":
        return from_map(bang)
    if which == "delta":
        return from_map_op(mu)
    if which == "epsilon":
        return from_map_op(bang)
    raise ValueError(f"unknown Frobenius generator {which!r}")


def iter_isos(a: Cospan, b: Cospan, bound: int = ISO_SEARCH_BOUND) -> Iterator[FinFunction]:
    """Yield every apex bijection ``f`` with ``f . a.i == b.i`` and ``f . a.o == b.o``."""
    if a.left_foot != b.left_foot or a.right_foot != b.right_foot:
        raise FootMismatch("iso test between cospans with different feet")
    n = a.apex.size
    if n != b.apex.size:
        return
    forced: dict[int, int] = {}
    for pa, pb in zip(a.i.table + a.o.table, b.i.table + b.o.table):
        seen = forced.get(pa)
        if seen is None:
            forced[pa] = pb
        elif seen != pb:
            return
    if len(set(forced.values())) != len(forced):
        return
    free_a = [k for k in range(n) if k not in forced]
    free_b = sorted(set(range(n)) - set(forced.values()))
    # unattached points are interchangeable: the first bijection is free,
    # only a search past it (decorated equality) is bounded
    for k, perm in enumerate(permutations(free_b)):
        if k == 1 and n > bound:
            raise ApexTooLarge(f"apex of size {n} exceeds the iso search bound {bound}")
        table = dict(forced)
        table.update(zip(free_a, perm))
        yield FinFunction(a.apex, b.apex, [table[k] for k in range(n)])


def find_iso(a: Cospan, b: Cospan, bound: int = ISO_SEARCH_BOUND) -> FinFunction | None:
    return next(iter_isos(a, b, bound), None)


def iso_equal(a: Cospan, b: Cospan, bound: int = ISO_SEARCH_BOUND) -> bool:
    return find_iso(a, b, bound) is not None


@dataclass(frozen=True, eq=False)
class Corelation:
    underlying: Cospan
    system: FactSys

    def __post_init__(self):
        if not self.system.in_E(self.underlying.legs()):
            raise ValueError(f"{self.underlying} is not a {self.system.value} corelation")

    @property
    def i(self) -> FinFunction:
        return self.underlying.i

    @property
    def o(self) -> FinFunction:
        return self.underlying.o

    @property
    def apex(self) -> FinSet:
        return self.underlying.apex

    @property
    def left_foot(self) -> FinSet:
        return self.underlying.left_foot

    @property
    def right_foot(self) -> FinSet:
        return self.underlying.right_foot

    def __repr__(self) -> str:
        return f"Corelation[{self.system.value}]({self.underlying!r})"


def _split(e: FinFunction, X: FinSet, Y: FinSet) -> Cospan:
    _, inX, inY = fs.coproduct(X, Y)
    return Cospan(fs.compose(inX, e), fs.compose(inY, e))


def to_corelation(c: Cospan, sys: FactSys) -> tuple[Corelation, FinFunction]:
    """The E-part of ``c`` together with the M-part witness ``m``."""
    e, m = sys.factor(c.legs())
    return Corelation(_split(e, c.left_foot, c.right_foot), sys), m


@dataclass(frozen=True)
class CorelComposite:
    """Everything produced while composing two corelations.

    ``j_N`` and ``j_M`` are the pushout injections, ``m`` the M-part of the
    induced map out of ``X + Z``; decorations are transported along these.
    """

    corel: Corelation
    j_N: FinFunction
    j_M: FinFunction
    m: FinFunction


def corelation_compose_parts(a: Corelation, b: Corelation) -> CorelComposite:
    if a.system is not b.system:
        raise ValueError("corelations over different factorisation systems")
    c, jN, jM = cospan_compose_parts(a.underlying, b.underlying)
    corel, m = to_corelation(c, a.system)
    return CorelComposite(corel, jN, jM, m)


def corelation_compose(a: Corelation, b: Corelation) -> tuple[Corelation, FinFunction]:
    parts = corelation_compose_parts(a, b)
    return parts.corel, parts.m


def corelation_tensor(a: Corelation, b: Corelation) -> Corelation:
    if a.system is not b.system:
        raise ValueError("corelations over different factorisation systems")
    return Corelation(monoidal_product(a.underlying, b.underlying), a.system)


def corel_iso_equal(a: Corelation, b: Corelation, bound: int = ISO_SEARCH_BOUND) -> bool:
    return iso_equal(a.underlying, b.underlying, bound)
