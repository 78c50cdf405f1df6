"""Hypergraph-category law checks, generic over the morphism representation.

A :class:`HypergraphOps` bundles identity, composition, tensor, braiding,
the Frobenius generators and an equality test. The same axiom list is then
run against cospans, corelations, decorated corelations and relations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import finset as fs
from .cospan import (
    Corelation,
    Cospan,
    FactSys,
    braiding,
    corel_iso_equal,
    corelation_compose,
    corelation_tensor,
    cospan_compose,
    frobenius_generator,
    identity_cospan,
    iso_equal,
    monoidal_product,
    to_corelation,
)
from .blackbox import S_instance, alpha
from .decor import (
    DecorationFunctor,
    GraphDecoration,
    decorate,
    decorated_braiding,
    decorated_compose,
    decorated_equal,
    decorated_identity,
    decorated_tensor,
    lift_frobenius,
)
from .dynam import D_instance
from .finset import FinFunction, FinSet
from .gen import random_cospan, random_edges, random_linear_field
from .kan import LanFunctor, kappa
from .sarel import (
    frob_of_cospan,
    identity_relation,
    relation_compose,
    relation_equal,
    relation_tensor,
    swap_relation,
)


@dataclass(frozen=True)
class HypergraphOps:
    name: str
    identity: Callable
    compose: Callable
    tensor: Callable
    braiding: Callable
    generator: Callable
    equal: Callable


def cospan_ops() -> HypergraphOps:
    return HypergraphOps("Cospan", identity_cospan, cospan_compose, monoidal_product, braiding,
                         frobenius_generator, iso_equal)


def corelation_ops(system: FactSys) -> HypergraphOps:
    def lift(c: Cospan) -> Corelation:
        return to_corelation(c, system)[0]

    return HypergraphOps(
        f"Corel[{system.value}]",
        lambda X: lift(identity_cospan(X)),
        lambda a, b: corelation_compose(a, b)[0],
        corelation_tensor,
        lambda X, Y: lift(braiding(X, Y)),
        lambda which, X: lift(frobenius_generator(which, X)),
        corel_iso_equal,
    )


def decorated_ops(F: DecorationFunctor) -> HypergraphOps:
    return HypergraphOps(
        f"DecCorel[{F!r}]",
        lambda X: decorated_identity(X, F),
        decorated_compose,
        decorated_tensor,
        lambda X, Y: decorated_braiding(X, Y, F),
        lambda which, X: lift_frobenius(which, X, F),
        decorated_equal,
    )


def relation_ops() -> HypergraphOps:
    return HypergraphOps(
        "LinearRelations",
        identity_relation,
        relation_compose,
        relation_tensor,
        swap_relation,
        lambda which, X: frob_of_cospan(frobenius_generator(which, X)),
        relation_equal,
    )


def frobenius_axioms(ops: HypergraphOps, X: FinSet | int) -> list[tuple[str, object, object]]:
    """The eight axiom diagrams at ``X``, as ``(name, lhs, rhs)`` triples."""
    X = fs.as_finset(X)
    mu, eta = ops.generator("mu", X), ops.generator("eta", X)
    de, ep = ops.generator("delta", X), ops.generator("epsilon", X)
    i = ops.identity(X)
    s = ops.braiding(X, X)
    c, t = ops.compose, ops.tensor
    return [
        ("associativity", c(t(mu, i), mu), c(t(i, mu), mu)),
        ("unitality", c(t(eta, i), mu), i),
        ("commutativity", c(s, mu), mu),
        ("coassociativity", c(de, t(de, i)), c(de, t(i, de))),
        ("counitality", c(de, t(ep, i)), i),
        ("cocommutativity", c(de, s), de),
        ("frobenius", c(t(i, de), t(mu, i)), c(mu, de)),
        ("special", c(de, mu), i),
    ] + [
        ("unitality (right)", c(t(i, eta), mu), i),
        ("counitality (right)", c(de, t(i, ep)), i),
        ("frobenius (mirror)", c(t(de, i), t(i, mu)), c(mu, de)),
    ]


@dataclass
class LawResult:
    suite: str
    law: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        line = f"[{'pass' if self.passed else 'FAIL'}] {self.suite}: {self.law}"
        return line + (f"\n    {self.detail}" if self.detail else "")


def check_frobenius(ops: HypergraphOps, sizes) -> list[LawResult]:
    out = []
    for n in sizes:
        for name, lhs, rhs in frobenius_axioms(ops, n):
            ok = ops.equal(lhs, rhs)
            out.append(LawResult(ops.name, f"{name} at |X|={n}", ok,
                                 "" if ok else f"lhs={lhs!r} rhs={rhs!r}"))
    return out


def category_laws(ops: HypergraphOps, f, g, h) -> list[tuple[str, object, object]]:
    c = ops.compose
    X, Y = _feet(f)
    return [
        ("left identity", c(ops.identity(X), f), f),
        ("right identity", c(f, ops.identity(Y)), f),
        ("associativity", c(c(f, g), h), c(f, c(g, h))),
    ]


def _feet(m) -> tuple[FinSet, FinSet]:
    if hasattr(m, "left_foot"):
        return m.left_foot, m.right_foot
    return m.left, m.right


def partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length ``n``: every partition once."""
    if n == 0:
        yield []
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from rec(prefix, max(top, b))
            prefix.pop()

    yield from rec([0], 0)


def epi_cospans(X: int, Y: int) -> Iterator[Cospan]:
    """Every jointly surjective cospan ``X -> N <- Y`` up to iso."""
    for p in partitions(X + Y):
        N = FinSet(max(p) + 1 if p else 0)
        yield Cospan(FinFunction(FinSet(X), N, p[:X]), FinFunction(FinSet(Y), N, p[X:]))


def check_category(ops: HypergraphOps, lift: Callable[[Cospan], object], size: int,
                   cases: int, rng: random.Random) -> list[LawResult]:
    failures = []
    for _ in range(cases):
        a, b, c, d = (rng.randint(0, size) for _ in range(4))
        f = lift(random_cospan(rng, a, b))
        g = lift(random_cospan(rng, b, c))
        h = lift(random_cospan(rng, c, d))
        for name, lhs, rhs in category_laws(ops, f, g, h):
            if not ops.equal(lhs, rhs):
                failures.append(LawResult(ops.name, name, False, f"f={f!r} g={g!r} h={h!r}"))
    if failures:
        return failures[:3]
    return [LawResult(ops.name, f"category laws on {cases} random triples", True)]


def check_frob_functor(size: int, cases: int, rng: random.Random) -> list[LawResult]:
    """The cospan-to-relation interpretation preserves composition and tensor."""
    for _ in range(cases):
        a, b, c = (rng.randint(0, size) for _ in range(3))
        f, g = random_cospan(rng, a, b), random_cospan(rng, b, c)
        if not relation_equal(frob_of_cospan(cospan_compose(f, g)),
                              relation_compose(frob_of_cospan(f), frob_of_cospan(g))):
            return [LawResult("Frob", "composition", False, f"f={f!r} g={g!r}")]
        if not relation_equal(frob_of_cospan(monoidal_product(f, g)),
                              relation_tensor(frob_of_cospan(f), frob_of_cospan(g))):
            return [LawResult("Frob", "tensor", False, f"f={f!r} g={g!r}")]
    return [LawResult("Frob", f"functoriality on {cases} random pairs", True)]


def run_law_suite(size: int = 2, seed: int = 0, cases: int = 40) -> list[LawResult]:
    """Frobenius axioms at every ``|X| <= size`` and category laws on random triples."""
    rng = random.Random(seed)
    sizes = range(size + 1)
    graph = GraphDecoration()
    lan = LanFunctor(graph)
    D, S = D_instance(), S_instance()
    suites: list[tuple[HypergraphOps, Callable]] = [(cospan_ops(), lambda c: c)]
    for sys in FactSys:
        suites.append((corelation_ops(sys), lambda c, s=sys: to_corelation(c, s)[0]))
    suites += [
        (decorated_ops(graph), lambda c: decorate(c, random_edges(rng, c.apex), graph)),
        (decorated_ops(D), lambda c: decorate(c, random_linear_field(rng, c.apex), D)),
        (decorated_ops(lan), lambda c: decorate(c, kappa(c.apex, random_edges(rng, c.apex)), lan)),
        (decorated_ops(S), lambda c: decorate(c, alpha(random_linear_field(rng, c.apex)), S)),
        (relation_ops(), frob_of_cospan),
    ]
    results: list[LawResult] = []
    for ops, lift in suites:
        results += check_frobenius(ops, sizes)
        results += check_category(ops, lift, size, cases, rng)
    results += check_frob_functor(size, cases, rng)
    return results
