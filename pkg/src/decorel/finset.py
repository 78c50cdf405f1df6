"""Finite sets, total functions between them, and finite colimits.

Sets are skeletal: a set of size ``n`` is the index set ``{0, ..., n-1}``.
Labels are display metadata only and never take part in equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


class FinSetError(ValueError):
    pass


class DomainMismatch(FinSetError):
    pass


class CodomainMismatch(FinSetError):
    pass


class FinSet:
    __slots__ = ("size", "labels")

    def __init__(self, size: int, labels: Sequence[str] | None = None):
        if size < 0:
            raise FinSetError(f"negative size {size}")
        if labels is not None:
            labels = tuple(str(lab) for lab in labels)
            if len(labels) != size:
                raise FinSetError(f"{len(labels)} labels for a set of size {size}")
            if len(set(labels)) != size:
                raise FinSetError(f"labels are not distinct: {labels}")
        self.size = size
        self.labels = labels

    def label(self, k: int) -> str:
        return self.labels[k] if self.labels is not None else str(k)

    def names(self) -> tuple[str, ...]:
        return tuple(self.label(k) for k in range(self.size))

    def index(self, label: str) -> int:
        names = self.names()
        try:
            return names.index(label)
        except ValueError:
            raise KeyError(label) from None

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))

    def __eq__(self, other) -> bool:
        if isinstance(other, FinSet):
            return self.size == other.size
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.size)

    def __repr__(self) -> str:
        if self.labels is None:
            return f"FinSet({self.size})"
        return f"FinSet({self.size}, {list(self.labels)})"


def as_finset(x: FinSet | int) -> FinSet:
    return x if isinstance(x, FinSet) else FinSet(x)


@dataclass(frozen=True, eq=False)
class FinFunction:
    """A total function ``dom -> cod`` stored as a lookup table."""

    dom: FinSet
    cod: FinSet
    table: tuple[int, ...]

    def __init__(self, dom: FinSet | int, cod: FinSet | int, table: Sequence[int]):
        dom, cod = as_finset(dom), as_finset(cod)
        table = tuple(int(t) for t in table)
        if len(table) != dom.size:
            raise FinSetError(f"table of length {len(table)} for domain of size {dom.size}")
        for t in table:
            if not 0 <= t < cod.size:
                raise FinSetError(f"entry {t} outside codomain of size {cod.size}")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "table", table)

    def __call__(self, k: int) -> int:
        return self.table[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinFunction):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.cod.size, self.table))

    def __repr__(self) -> str:
        return f"FinFunction({list(self.table)}: {self.dom.size}->{self.cod.size})"

    def then(self, g: FinFunction) -> FinFunction:
        return compose(self, g)

    def preimage(self, y: int) -> list[int]:
        return [k for k, t in enumerate(self.table) if t == y]

    def image(self) -> set[int]:
        return set(self.table)


def identity(X: FinSet | int) -> FinFunction:
    X = as_finset(X)
    return FinFunction(X, X, range(X.size))


def initial(X: FinSet | int) -> FinFunction:
    """The unique map out of the empty set."""
    return FinFunction(FinSet(0), as_finset(X), ())


def compose(f: FinFunction, g: FinFunction) -> FinFunction:
    """Diagrammatic composite: first ``f``, then ``g``."""
    if f.cod != g.dom:
        raise CodomainMismatch(f"cannot compose {f} with {g}")
    gt = g.table
    return FinFunction(f.dom, g.cod, [gt[t] for t in f.table])


def _join_labels(X: FinSet, Y: FinSet) -> tuple[str, ...] | None:
    if X.labels is None and Y.labels is None:
        return None
    out = list(X.names())
    taken = set(out)
    for lab in Y.names():
        while lab in taken:
            lab = lab + "'"
        taken.add(lab)
        out.append(lab)
    return tuple(out)


def coproduct(X: FinSet | int, Y: FinSet | int) -> tuple[FinSet, FinFunction, FinFunction]:
    X, Y = as_finset(X), as_finset(Y)
    S = FinSet(X.size + Y.size, _join_labels(X, Y))
    inl = FinFunction(X, S, range(X.size))
    inr = FinFunction(Y, S, range(X.size, X.size + Y.size))
    return S, inl, inr


def sum_set(*sets: FinSet | int) -> FinSet:
    out = FinSet(0)
    for X in sets:
        out = coproduct(out, X)[0]
    return out


def copair(f: FinFunction, g: FinFunction) -> FinFunction:
    if f.cod != g.cod:
        raise CodomainMismatch(f"copair of maps into {f.cod} and {g.cod}")
    S = coproduct(f.dom, g.dom)[0]
    return FinFunction(S, f.cod, f.table + g.table)


def tensor(f: FinFunction, g: FinFunction) -> FinFunction:
    """The coproduct map ``f + g``."""
    dom = coproduct(f.dom, g.dom)[0]
    cod = coproduct(f.cod, g.cod)[0]
    off = f.cod.size
    return FinFunction(dom, cod, f.table + tuple(t + off for t in g.table))


def swap(X: FinSet | int, Y: FinSet | int) -> FinFunction:
    """The symmetry ``X + Y -> Y + X``."""
    X, Y = as_finset(X), as_finset(Y)
    n, m = X.size, Y.size
    return FinFunction(coproduct(X, Y)[0], coproduct(Y, X)[0],
                       [m + k for k in range(n)] + list(range(m)))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller index wins, so every root is its class's least member
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


def _quotient(n: int, pairs, labels: Sequence[str] | None = None) -> FinFunction:
    uf = _UnionFind(n)
    for a, b in pairs:
        uf.union(a, b)
    index: dict[int, int] = {}
    table = []
    for k in range(n):
        r = uf.find(k)
        if r not in index:
            index[r] = len(index)
        table.append(index[r])
    q_labels = None
    if labels is not None:
        reps = sorted(index, key=index.get)
        q_labels = [labels[r] for r in reps]
    Q = FinSet(len(index), q_labels)
    return FinFunction(FinSet(n, labels), Q, table)


def coequalizer(f: FinFunction, g: FinFunction) -> FinFunction:
    """Surjection onto ``cod / ~`` where ``~`` is generated by ``f(k) ~ g(k)``.

    Classes are numbered in order of their least member.
    """
    if f.dom != g.dom:
        raise DomainMismatch(f"coequalizer of maps out of {f.dom} and {g.dom}")
    if f.cod != g.cod:
        raise CodomainMismatch(f"coequalizer of maps into {f.cod} and {g.cod}")
    q = _quotient(f.cod.size, zip(f.table, g.table), f.cod.labels)
    return FinFunction(f.cod, q.cod, q.table)


def pushout(f: FinFunction, g: FinFunction) -> tuple[FinFunction, FinFunction]:
    """Pushout of the span ``N <-f- Y -g-> M``; returns ``(j_N, j_M)``."""
    if f.dom != g.dom:
        raise DomainMismatch(f"pushout of maps out of {f.dom} and {g.dom}")
    NM, inl, inr = coproduct(f.cod, g.cod)
    q = coequalizer(compose(f, inl), compose(g, inr))
    return compose(inl, q), compose(inr, q)


def epi_mono_factor(f: FinFunction) -> tuple[FinFunction, FinFunction]:
    """Image factorisation ``f = m . e`` with image ordered by first preimage."""
    index: dict[int, int] = {}
    for t in f.table:
        if t not in index:
            index[t] = len(index)
    image = sorted(index, key=index.get)
    labels = [f.cod.label(t) for t in image] if f.cod.labels is not None else None
    im = FinSet(len(image), labels)
    e = FinFunction(f.dom, im, [index[t] for t in f.table])
    m = FinFunction(im, f.cod, image)
    return e, m


def is_epi(f: FinFunction) -> bool:
    return len(set(f.table)) == f.cod.size


def is_mono(f: FinFunction) -> bool:
    return len(set(f.table)) == len(f.table)


def is_iso(f: FinFunction) -> bool:
    return f.dom.size == f.cod.size and is_mono(f)


def inverse(f: FinFunction) -> FinFunction:
    if not is_iso(f):
        raise FinSetError(f"{f} is not a bijection")
    table = [0] * f.cod.size
    for k, t in enumerate(f.table):
        table[t] = k
    return FinFunction(f.cod, f.dom, table)


def all_functions(n: int, m: int) -> Iterator[FinFunction]:
    """Every function ``n -> m``, in lexicographic order of tables."""
    from itertools import product

    for table in product(range(m), repeat=n):
        yield FinFunction(n, m, table)
