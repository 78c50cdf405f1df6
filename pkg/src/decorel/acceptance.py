"""The ten acceptance criteria, runnable from tests and from ``decorel selftest``.

Each ``criterion_N`` returns a :class:`CriterionResult`; none of them raise
on failure, so one broken criterion does not hide the others.
"""
from __future__ import annotations

import contextlib
import io
import itertools
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib.resources import files

import numpy as np

from . import finset as fs
from .blackbox import (
    alpha,
    black_box,
    check_functoriality,
    numeric_member,
    sample_points,
    solve_steady_states,
    split_boundary,
)
from .cospan import (
    Cospan,
    FactSys,
    cospan_compose,
    corelation_compose,
    corel_iso_equal,
    from_map,
    frobenius_generator,
    to_corelation,
)
from .decor import (
    DecDataMorphism,
    GraphDecoration,
    apply_decdata_morphism,
    decorate,
    decorated_compose,
    scale_edges,
)
from .dsl import parse
from .dynam import PolyVectorField, open_network_to_morphism, pushforward_field
from .finset import FinFunction, FinSet
from .gen import random_cospan, random_edges, random_monomial_field, random_open_network, boundary
from .kan import as_lan_element, kan_on_morphism, lan_compose, lan_element_equal
from .laws import (
    check_frobenius,
    cospan_ops,
    epi_cospans,
    frobenius_axioms,
    relation_ops,
)
from .polynomial import Polynomial
from .sarel import (
    BP,
    ConstraintRelation,
    Membership,
    check_witness,
    frob_of_cospan,
    identity_relation,
    is_member,
    relation_compose,
    relation_equal,
    relation_tensor,
    swap_relation,
    to_convention,
)



@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def __str__(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return f"[{state}] criterion {self.number:2d}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


def _timed(number: int, title: str, body) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        passed, detail = body()
    except Exception as exc:  # a crash is a failure, reported rather than raised
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CriterionResult(number, title, passed, detail, time.perf_counter() - t0)


def data_text(name: str) -> str:
    return files("decorel").joinpath("data", name).read_text()


# 1

def criterion_1() -> CriterionResult:
    def body():
        t0 = time.perf_counter()
        results = check_frobenius(cospan_ops(), range(4))
        elapsed = time.perf_counter() - t0
        bad = [str(r) for r in results if not r.passed]
        ok = not bad and elapsed < 5.0
        return ok, f"{len(results)} axiom instances, {len(bad)} failures, {elapsed:.2f}s of 5s budget"
    return _timed(1, "Frobenius axioms in cospans, |X| <= 3", body)


# 2

def _factorisation_checks() -> tuple[int, list[str]]:
    bad, count = [], 0
    for a, b in itertools.product(range(4), repeat=2):
        for f in fs.all_functions(a, b):
            for sys in FactSys:
                e, m = sys.factor(f)
                count += 1
                if not (sys.in_E(e) and sys.in_M(m) and fs.compose(e, m) == f):
                    bad.append(f"{sys.value} factor of {f.table}")
    return count, bad


def _unique_diagonal() -> tuple[int, list[str]]:
    bad, count = [], 0
    maps = {(a, b): list(fs.all_functions(a, b)) for a in range(4) for b in range(4)}
    for A, B, C, D in itertools.product(range(4), repeat=4):
        epis = [e for e in maps[A, B] if fs.is_epi(e)]
        monos = [m for m in maps[C, D] if fs.is_mono(m)]
        if not epis or not monos:
            continue
        for e, m, u in itertools.product(epis, monos, maps[A, C]):
            v = [None] * B
            consistent = True
            for x in range(A):
                y, val = e.table[x], m.table[u.table[x]]
                if v[y] is None:
                    v[y] = val
                elif v[y] != val:
                    consistent = False
                    break
            if not consistent:
                continue
            count += 1
            fills = [d for d in maps[B, C]
                     if all(d.table[e.table[x]] == u.table[x] for x in range(A))
                     and all(m.table[d.table[y]] == v[y] for y in range(B))]
            if len(fills) != 1:
                bad.append(f"e={e.table} m={m.table} u={u.table}: {len(fills)} fills")
    return count, bad


def _pushout_stable_monos() -> tuple[int, list[str]]:
    bad, count = [], 0
    for A, B, C in itertools.product(range(4), repeat=3):
        for m in fs.all_functions(A, B):
            if not fs.is_mono(m):
                continue
            for f in fs.all_functions(A, C):
                jB, jC = fs.pushout(m, f)
                count += 1
                if not fs.is_mono(jC):
                    bad.append(f"m={m.table} f={f.table}")
    return count, bad


def criterion_2() -> CriterionResult:
    def body():
        n1, b1 = _factorisation_checks()
        n2, b2 = _unique_diagonal()
        n3, b3 = _pushout_stable_monos()
        bad = b1 + b2 + b3
        return not bad, (f"{n1} factorisations, {n2} lifting squares, {n3} pushouts; "
                         f"{len(bad)} failures{': ' + bad[0] if bad else ''}")
    return _timed(2, "factorisation systems and unique diagonals, sizes <= 3", body)


# 3

def criterion_3(pairs: int = 500, seed: int = 3) -> CriterionResult:
    def body():
        rng = random.Random(seed)
        fails = 0
        for sys in FactSys:
            for _ in range(pairs):
                X, Y, Z = (rng.randint(0, 3) for _ in range(3))
                a = to_corelation(random_cospan(rng, X, Y, 4), sys)[0]
                b = to_corelation(random_cospan(rng, Y, Z, 4), sys)[0]
                got = corelation_compose(a, b)[0]
                want = to_corelation(cospan_compose(a.underlying, b.underlying), sys)[0]
                if not corel_iso_equal(got, want):
                    fails += 1
        return fails == 0, f"{pairs} random pairs per system x {len(FactSys)} systems, {fails} failures"
    return _timed(3, "corelation composition vs cospan composition then E-part", body)


# 4

def _graph_decorations(N: FinSet, max_edges: int):
    pairs = [(a, b) for a in range(N.size) for b in range(a, N.size)]
    out = [()]
    for k in range(1, max_edges + 1):
        out += [tuple(c) for c in itertools.combinations_with_replacement(pairs, k)]
    return out


def kan_exhaustive_morphisms(F: GraphDecoration, X: int, Y: int, max_edges: int = 1):
    return [decorate(c, s, F) for c in epi_cospans(X, Y) for s in _graph_decorations(c.apex, max_edges)]


def kan_exhaustive_cases(F: GraphDecoration, max_size: int = 2, max_edges: int = 1):
    for X, Y, Z in itertools.product(range(max_size + 1), repeat=3):
        fs_ = kan_exhaustive_morphisms(F, X, Y, max_edges)
        gs = kan_exhaustive_morphisms(F, Y, Z, max_edges)
        for f in fs_:
            for g in gs:
                yield f, g


def kan_random_cases(F: GraphDecoration, n: int, rng: random.Random, size: int = 3):
    for _ in range(n):
        X, Y, Z = size, rng.randint(0, size), rng.randint(0, size)
        c1, c2 = random_cospan(rng, X, Y, 4), random_cospan(rng, Y, Z, 4)
        yield (decorate(c1, random_edges(rng, c1.apex, 3), F),
               decorate(c2, random_edges(rng, c2.apex, 3), F))


def kan_composition_agrees(f, g) -> bool:
    F = f.functor
    direct = as_lan_element(decorated_compose(f, g))
    via_lan = lan_compose(F, as_lan_element(f), as_lan_element(g),
                          f.left_foot, f.right_foot, g.right_foot)
    return lan_element_equal(F, direct, via_lan)


def kan_morphism_agrees(phi: DecDataMorphism, f) -> bool:
    direct = as_lan_element(apply_decdata_morphism(phi, f))
    via_lan = kan_on_morphism(phi, as_lan_element(f))
    return lan_element_equal(phi.target, direct, via_lan)


def criterion_4(random_cases: int = 200, seed: int = 4) -> CriterionResult:
    def body():
        F = GraphDecoration()
        coarse = GraphDecoration(FactSys.ALL_ISO)
        doubling = DecDataMorphism(F, F, scale_edges(2), "double")
        widen = DecDataMorphism(coarse, F, scale_edges(1), "include")
        fails = exhaustive = 0
        morph_checks = morph_fails = 0
        for f, g in kan_exhaustive_cases(F):
            exhaustive += 1
            fails += not kan_composition_agrees(f, g)
        for X, Y in itertools.product(range(3), repeat=2):
            for f in kan_exhaustive_morphisms(F, X, Y):
                morph_checks += 1
                morph_fails += not kan_morphism_agrees(doubling, f)
        rng = random.Random(seed)
        rand = 0
        for f, g in kan_random_cases(F, random_cases, rng):
            rand += 1
            fails += not kan_composition_agrees(f, g)
            for phi, m in ((doubling, f), (doubling, g)):
                morph_checks += 1
                morph_fails += not kan_morphism_agrees(phi, m)
            c = f.corel.underlying
            raw = decorate(c, random_edges(rng, c.apex, 3), coarse)
            morph_checks += 1
            morph_fails += not kan_morphism_agrees(widen, raw)
        ok = fails == 0 and morph_fails == 0
        return ok, (f"{exhaustive} exhaustive + {rand} random compositions, {fails} failures; "
                    f"{morph_checks} morphism checks, {morph_fails} failures")
    return _timed(4, "decorated corelations vs Kan extension elements", body)


# 5

def _monomials(n: int, degree: int = 2):
    return [e for e in itertools.product(range(degree + 1), repeat=n) if sum(e) <= degree]


def small_fields(n: int):
    """Every field on ``n`` species with at most two unit monomial terms of degree <= 2."""
    N = FinSet(n)
    slots = [(k, m) for k in range(n) for m in _monomials(n)]
    yield PolyVectorField.zero(N)
    for r in (1, 2):
        for combo in itertools.combinations(slots, r):
            comps = [{} for _ in range(n)]
            for k, m in combo:
                comps[k][m] = 1
            yield PolyVectorField(N, tuple(Polynomial(n, c) for c in comps))


def criterion_5(max_species: int = 3) -> CriterionResult:
    def body():
        checks = fails = 0
        sizes = range(max_species + 1)
        for a in sizes:
            fields = list(small_fields(a))
            for b in sizes:
                fmaps = list(fs.all_functions(a, b))
                for c in sizes:
                    for g in fs.all_functions(b, c):
                        for f in fmaps:
                            gf = fs.compose(f, g)
                            for v in fields:
                                checks += 1
                                if pushforward_field(gf, v) != pushforward_field(g, pushforward_field(f, v)):
                                    fails += 1
        return fails == 0, f"{checks} exact identities, {fails} failures"
    return _timed(5, "D(g.f) = D(g)D(f) exhaustively, species <= 3", body)


# 6

def relation_generators() -> list[tuple[str, ConstraintRelation, Cospan]]:
    """The generators on one wire, also padded with an identity on either side."""
    one = FinSet(1)
    base = [(w, frobenius_generator(w, one)) for w in ("mu", "eta", "delta", "epsilon")]
    base += [("id", from_map(fs.identity(one))), ("swap", from_map(fs.swap(one, one)))]
    idc = from_map(fs.identity(one))
    out = []
    for name, c in base:
        out.append((name, c))
        out.append((f"{name}+id", _cospan_tensor(c, idc)))
        out.append((f"id+{name}", _cospan_tensor(idc, c)))
    return [(n, frob_of_cospan(c), c) for n, c in out]


def _cospan_tensor(a: Cospan, b: Cospan) -> Cospan:
    return Cospan(fs.tensor(a.i, b.i), fs.tensor(a.o, b.o))


def criterion_6(budget: float = 10.0) -> CriterionResult:
    def body():
        t0 = time.perf_counter()
        gens = relation_generators()
        fails, checks = [], 0

        def check(name, ok):
            nonlocal checks
            checks += 1
            if not ok:
                fails.append(name)

        for n in (1, 2, 3):
            for name, lhs, rhs in frobenius_axioms(relation_ops(), n):
                check(f"{name}@{n}", relation_equal(lhs, rhs))
        words = [[g] for g in gens]
        for depth in (2, 3):
            grown = []
            for w in words:
                if len(w) != depth - 1:
                    continue
                for g in gens:
                    if w[-1][1].right == g[1].left:
                        grown.append(w + [g])
            words += grown
        for w in words:
            rel, cos = w[0][1], w[0][2]
            for _, r, c in w[1:]:
                rel = relation_compose(rel, r)
                cos = cospan_compose(cos, c)
            label = ";".join(x[0] for x in w)
            X, Y = rel.left, rel.right
            check(f"left unit {label}", relation_equal(relation_compose(identity_relation(X), rel), rel))
            check(f"right unit {label}", relation_equal(relation_compose(rel, identity_relation(Y)), rel))
            check(f"frob functor {label}", relation_equal(frob_of_cospan(cos), rel))
            if len(w) == 3:
                (_, a, _), (_, b, _), (_, c, _) = w
                check(f"assoc {label}", relation_equal(relation_compose(relation_compose(a, b), c),
                                                       relation_compose(a, relation_compose(b, c))))
        for (n1, a, ca), (n2, b, cb) in itertools.product(gens, repeat=2):
            check(f"tensor {n1}|{n2}", relation_equal(relation_tensor(a, b),
                                                      frob_of_cospan(_cospan_tensor(ca, cb))))
        check("swap involution", relation_equal(relation_compose(swap_relation(1, 1), swap_relation(1, 1)),
                                                identity_relation(2)))
        elapsed = time.perf_counter() - t0
        ok = not fails and elapsed < budget
        return ok, (f"{checks} row-space equalities over {len(words)} composites of depth <= 3, "
                    f"{len(fails)} failures{': ' + fails[0] if fails else ''}; {elapsed:.2f}s of {budget:.0f}s")
    return _timed(6, "linear relation laws, Frobenius axioms and Frob functoriality", body)


# 7

def gr_as_state(v: PolyVectorField) -> ConstraintRelation:
    """The graph of ``v`` as a relation from the empty boundary to ``v.space``."""
    return split_boundary(alpha(v), FinSet(0), v.space)


def naturality_sides(f: FinFunction, v: PolyVectorField) -> tuple[ConstraintRelation, ConstraintRelation]:
    lhs = relation_compose(gr_as_state(v), frob_of_cospan(from_map(f)))
    rhs = gr_as_state(pushforward_field(f, v))
    return lhs, rhs


def _matrix_field(n: int, entries) -> PolyVectorField:
    it = iter(entries)
    comps = tuple(Polynomial.linear([next(it) for _ in range(n)]) for _ in range(n))
    return PolyVectorField(FinSet(n), comps)


def linear_fields_for_naturality(n: int, rng: random.Random, random_extra: int = 500):
    """All coefficient matrices in {-2..2} for n <= 2; for n = 3 a structured and random subset."""
    values = range(-2, 3)
    if n <= 2:
        for entries in itertools.product(values, repeat=n * n):
            yield _matrix_field(n, entries)
        return
    for diag in itertools.product(values, repeat=n):
        yield _matrix_field(n, [diag[i] if i == j else 0 for i in range(n) for j in range(n)])
    for pos in range(n * n):
        for val in values:
            if val:
                yield _matrix_field(n, [val if k == pos else 0 for k in range(n * n)])
    for _ in range(random_extra):
        yield _matrix_field(n, [rng.choice(values) for _ in range(n * n)])


def naturality_sampled(f: FinFunction, v: PolyVectorField, points: int, rng: np.random.Generator) -> bool:
    lhs, rhs = naturality_sides(f, v)
    for x in sample_points(lhs, points, rng):
        if is_member(rhs, x[:rhs.boundary_count]) is not Membership.MEMBER:
            return False
    for x in sample_points(rhs, points, rng):
        if numeric_member(lhs, x[:lhs.boundary_count], rng)[0] is not Membership.MEMBER:
            return False
    return True


def criterion_7(seed: int = 7, random_extra: int = 500, nonlinear_fields: int = 20) -> CriterionResult:
    def body():
        rng = random.Random(seed)
        exact = exact_fail = 0
        for n in range(4):
            maps = [f for m in range(4) for f in fs.all_functions(n, m)]
            for v in linear_fields_for_naturality(n, rng, random_extra):
                for f in maps:
                    lhs, rhs = naturality_sides(f, v)
                    exact += 1
                    exact_fail += not relation_equal(lhs, rhs)
        nrng = np.random.default_rng(seed)
        sampled_fail = 0
        for _ in range(nonlinear_fields):
            n = rng.randint(1, 3)
            v = random_monomial_field(rng, n, 2)
            m = rng.randint(1, 3)
            f = FinFunction(FinSet(n), FinSet(m), [rng.randrange(m) for _ in range(n)])
            sampled_fail += not naturality_sampled(f, v, 50, nrng)
        ok = exact_fail == 0 and sampled_fail == 0
        return ok, (f"{exact} exact linear cases ({exact_fail} failures); "
                    f"{nonlinear_fields} degree-2 fields x 50 points each way ({sampled_fail} failures)")
    return _timed(7, "graph naturality: Frob(f) Gr(v) = Gr(f_* v f^*)", body)


# 8

def composable_pair(rng: random.Random, max_order: int):
    X, Y, Z = (boundary(rng.randint(0, 2), p) for p in "xyz")
    a = random_open_network(rng, X, Y, 3, max_order, prefix="P")
    b = random_open_network(rng, Y, Z, 3, max_order, prefix="Q")
    return open_network_to_morphism(a), open_network_to_morphism(b)


def criterion_8(linear_pairs: int = 100, nonlinear_pairs: int = 20, seed: int = 8) -> CriterionResult:
    def body():
        rng = random.Random(seed)
        lin_fail = 0
        for _ in range(linear_pairs):
            a, b = composable_pair(rng, 1)
            rep = check_functoriality(a, b)
            lin_fail += not (rep.passed and rep.method == "exact")
        non_fail = nonlinear = empty = 0
        first = ""
        while nonlinear < nonlinear_pairs:
            a, b = composable_pair(rng, 2)
            if all(p.is_linear() for m in (a, b) for p in m.decoration.components):
                continue
            rep = check_functoriality(a, b, samples=25, seed=rng.randrange(2 ** 31))
            if rep.method == "both empty":
                empty += 1
                continue
            nonlinear += 1
            if not rep.passed:
                non_fail += 1
                first = first or str(rep)
        ok = lin_fail == 0 and non_fail == 0
        return ok, (f"{linear_pairs} linear pairs exact ({lin_fail} failures); {nonlinear_pairs} "
                    f"mass-action pairs x 25 points per side ({non_fail} failures); "
                    f"{empty} pairs with certified-empty sides skipped"
                    f"{' ' + first if first else ''}")
    return _timed(8, "black box preserves composition", body)


# 9

HALF = Fraction(1, 2)
# concentrations A=B=D=1, C=2; the two A inflows share the unit A+B flux
INTRO_WITNESS = {
    "cin_a1": 1, "cin_a2": 1, "cin_b": 1, "I_a1": -HALF, "I_a2": -HALF, "I_b": -1,
    "cout_d": 1, "O_d": 2, "A": 1, "B": 1, "C": 2, "D": 1,
}
INTRO_FIXED = {"I_a1": -HALF, "I_a2": -HALF, "I_b": -1, "cin_a1": 1, "cout_d": 1}


def intro_relation() -> ConstraintRelation:
    doc = parse(data_text("intro.net"))
    return black_box(open_network_to_morphism(doc.evaluate("main")))


def criterion_9() -> CriterionResult:
    def body():
        r = intro_relation()
        names = r.variable_names()
        w = [Fraction(INTRO_WITNESS[n]) for n in names]
        nb = r.boundary_count
        member = is_member(r, w[:nb], w[nb:])
        exact_zero = check_witness(r, w)
        rng = np.random.default_rng(9)
        seed = {n: float(INTRO_WITNESS[n]) + rng.uniform(-0.15, 0.15) for n in names}
        sols = solve_steady_states(r, INTRO_FIXED, seeds=[seed])
        err = min((max(abs(float(a) - float(b)) for a, b in zip(s.values, w)) for s in sols),
                  default=float("inf"))
        ok = (member is Membership.MEMBER and exact_zero is Membership.MEMBER
              and len(r.internal) == 4 and err < 1e-9)
        return ok, (f"hand witness {member.value} (exact check {exact_zero.value}), "
                    f"{len(sols)} solver solution(s), max deviation {err:.1e}")
    return _timed(9, "intro network black box and steady-state solve", body)


# 10

def _run_cli(argv: list[str]) -> tuple[int, str]:
    from .cli import main

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def expected_decay_relation() -> ConstraintRelation:
    """``c = c' = c_A`` and ``-c_A = I + O``, written out by hand."""
    n = 5  # cin_x, I_x, cout_y, O_y, A
    var = lambda j: Polynomial.var(n, j)  # noqa: E731
    eqs = (var(0) - var(4), var(2) - var(4), -var(4) - var(1) - var(3))
    return ConstraintRelation(FinSet(1, ["x"]), FinSet(1, ["y"]), FinSet(1, ["A"]), eqs, (), ("c",))


def _monic(p: Polynomial) -> Polynomial:
    lead = p.sorted_terms()[0][1]
    return p * (1 / lead)


def _same_equations(r: ConstraintRelation, s: ConstraintRelation) -> bool:
    return (r.variable_names() == s.variable_names()
            and sorted(map(repr, map(_monic, r.equations))) == sorted(map(repr, map(_monic, s.equations))))


def criterion_10() -> CriterionResult:
    def body():
        path = str(files("decorel").joinpath("data", "decay.net"))
        code1, out1 = _run_cli(["blackbox", path, "main"])
        code2, out2 = _run_cli(["blackbox", path, "main", "--convention", "bp"])
        native = ConstraintRelation.from_json(json.loads(out1))
        bp = ConstraintRelation.from_json(json.loads(out2))
        want = expected_decay_relation()
        n = 5
        var = lambda j: Polynomial.var(n, j)  # noqa: E731
        # v(c) + I - O = 0 with v = -c_A
        want_bp = ConstraintRelation(want.left, want.right, want.internal,
                                     (var(0) - var(4), var(2) - var(4), -var(4) + var(1) - var(3)),
                                     (), ("c",), BP)
        checks = {
            "exit codes": code1 == 0 and code2 == 0,
            "native equations": _same_equations(native, want),
            "native set": relation_equal(native, want),
            "one internal": native.internal.size == 1,
            "bp equations": _same_equations(bp, want_bp),
            "bp round trip": to_convention(bp, "native").dumps() == native.dumps(),
        }
        bad = [k for k, v in checks.items() if not v]
        return not bad, "all checks hold" if not bad else "failed: " + ", ".join(bad)
    return _timed(10, "decay regression in both conventions", body)


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


def run_all(only=None) -> list[CriterionResult]:
    return [CRITERIA[n]() for n in sorted(only or CRITERIA)]

