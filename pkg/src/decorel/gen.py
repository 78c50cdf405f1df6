"""Random finite data for property checks."""
from __future__ import annotations

import random
from fractions import Fraction

from . import finset as fs
from .cospan import Cospan
from .decor import GraphDecoration
from .dynam import OpenNetwork, PolyVectorField, Reaction, ReactionNetwork
from .finset import FinFunction, FinSet
from .polynomial import Polynomial

RATES = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


def random_map(rng: random.Random, X: FinSet | int, Y: FinSet | int) -> FinFunction:
    X, Y = fs.as_finset(X), fs.as_finset(Y)
    return FinFunction(X, Y, [rng.randrange(Y.size) for _ in range(X.size)])


def random_cospan(rng: random.Random, X: int, Y: int, max_apex: int = 4) -> Cospan:
    lo = 1 if X + Y else 0
    n = rng.randint(lo, max(lo, max_apex))
    return Cospan(random_map(rng, X, n), random_map(rng, Y, n))


def random_edges(rng: random.Random, N: FinSet, max_edges: int = 2):
    n = N.size
    if not n:
        return ()
    k = rng.randint(0, max_edges)
    return GraphDecoration.normalize((rng.randrange(n), rng.randrange(n)) for _ in range(k))


def random_linear_field(rng: random.Random, N: FinSet | int, lo: int = -2, hi: int = 2) -> PolyVectorField:
    N = fs.as_finset(N)
    n = N.size
    comps = tuple(Polynomial.linear([rng.randint(lo, hi) for _ in range(n)]) for _ in range(n))
    return PolyVectorField(N, comps)


def random_monomial_field(rng: random.Random, N: FinSet | int, degree: int = 2) -> PolyVectorField:
    """Each component a single monomial of the given degree with a small nonzero coefficient."""
    N = fs.as_finset(N)
    n = N.size
    comps = []
    for _ in range(n):
        mono = [0] * n
        for _ in range(degree):
            mono[rng.randrange(n)] += 1
        comps.append(Polynomial(n, {tuple(mono): rng.choice([-2, -1, 1, 2])}))
    return PolyVectorField(N, tuple(comps))


def _random_complex(rng: random.Random, n: int, order: int) -> tuple[int, ...]:
    counts = [0] * n
    for _ in range(rng.randint(0, order)):
        counts[rng.randrange(n)] += 1
    return tuple(counts)


def random_network(rng: random.Random, n: int, max_order: int, max_reactions: int = 3,
                   prefix: str = "S") -> ReactionNetwork:
    species = FinSet(n, [f"{prefix}{k}" for k in range(n)])
    reactions = []
    for j in range(rng.randint(0, max_reactions) if n else 0):
        ins = _random_complex(rng, n, max_order)
        outs = _random_complex(rng, n, 2)
        reactions.append(Reaction(f"r{j}", ins, outs, rng.choice(RATES)))
    return ReactionNetwork(species, tuple(reactions))


def random_open_network(rng: random.Random, X: FinSet | int, Y: FinSet | int, max_species: int = 3,
                        max_order: int = 1, prefix: str = "S") -> OpenNetwork:
    """Mass-action network whose reactions consume at most ``max_order`` molecules."""
    X, Y = fs.as_finset(X), fs.as_finset(Y)
    lo = 1 if X.size + Y.size else 0
    n = rng.randint(max(lo, 1), max_species)
    net = random_network(rng, n, max_order, prefix=prefix)
    return OpenNetwork(net, random_map(rng, X, net.species), random_map(rng, Y, net.species))


def boundary(n: int, prefix: str) -> FinSet:
    return FinSet(n, [f"{prefix}{k}" for k in range(n)])
