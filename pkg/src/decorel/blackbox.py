"""From open dynamical systems to their steady-state relations.

:class:`SFunctor` decorates a finite set ``N`` with relations on
``R^N + R^N`` (concentrations and flows at each point of ``N``). Sending a
vector field to its graph is a morphism of decorating data ``D -> S``; the
functor it induces is :func:`black_box`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import finset as fs
from .cospan import FactSys
from .decor import (
    DecDataMorphism,
    DecoratedMorphism,
    DecorationFunctor,
    FunctorMismatch,
    apply_decdata_morphism,
    decorated_compose,
)
from .dynam import PolyVectorField, D_instance
from .finset import FinFunction, FinSet
from .linalg import solve
from .polynomial import Polynomial, to_fraction
from .sarel import (
    NATIVE,
    TOLERANCE,
    ConstraintRelation,
    Membership,
    WitnessPoint,
    certainly_empty,
    is_member,
    parse_assignment,
    relation_compose,
    relation_equal,
    relation_tensor,
)
from .solver import NoConvergence, PolySystem, gauss_newton


class InconsistentFixing(ValueError):
    pass


def _decoration(N: FinSet, eqs, internal: FinSet, kinds, ineqs=()) -> ConstraintRelation:
    return ConstraintRelation(N, FinSet(0), internal, tuple(eqs), tuple(ineqs), tuple(kinds))


def _rename_along_iso(f: FinFunction, R: ConstraintRelation) -> ConstraintRelation:
    M, k = f.cod.size, R.internal.size
    table = list(f.table) + [M + t for t in f.table] + [2 * M + j for j in range(k)]
    n = 2 * M + k
    return _decoration(f.cod, [p.rename(table, n) for p in R.equations], R.internal,
                       R.internal_kinds, [p.rename(table, n) for p in R.inequalities])


class SFunctor(DecorationFunctor):
    """Relations on ``R^N + R^N``, transported through the cospan relations.

    ``push(f, R) = {(d, f_* g) | (f^* d, g) in R}`` and
    ``pull(m, R) = {(m^* k, F) | (k, m_* F) in R}``; both keep the old
    variables as internals rather than eliminating them.
    """

    def __repr__(self) -> str:
        return "S"

    def system(self) -> FactSys:
        return FactSys.ISO_ALL

    def is_decoration(self, N: FinSet, R) -> bool:
        return (isinstance(R, ConstraintRelation) and R.left == N and R.right.size == 0
                and R.convention == NATIVE)

    def push(self, f: FinFunction, R: ConstraintRelation) -> ConstraintRelation:
        if R.left != f.dom:
            raise ValueError(f"decoration on {R.left} pushed along a map out of {f.dom}")
        if fs.is_iso(f):
            return _rename_along_iso(f, R)
        N, M, k = f.dom.size, f.cod.size, R.internal.size
        n = 2 * M + k + N
        table = list(f.table) + [2 * M + k + x for x in range(N)] + [2 * M + j for j in range(k)]
        eqs = [p.rename(table, n) for p in R.equations]
        for m in range(M):
            coeffs = [0] * n
            coeffs[M + m] = 1
            for x in f.preimage(m):
                coeffs[2 * M + k + x] = -1
            eqs.append(Polynomial.linear(coeffs))
        K = fs.coproduct(R.internal, FinSet(N, [f"g_{a}" for a in f.dom.names()]))[0]
        return _decoration(f.cod, eqs, K, R.internal_kinds + ("f",) * N,
                           [p.rename(table, n) for p in R.inequalities])

    def pull(self, m: FinFunction, R: ConstraintRelation) -> ConstraintRelation:
        if R.left != m.cod:
            raise ValueError(f"decoration on {R.left} pulled along a map into {m.cod}")
        if fs.is_iso(m):
            return _rename_along_iso(fs.inverse(m), R)
        P, N, k = m.dom.size, m.cod.size, R.internal.size
        n = 2 * P + k + N
        images = [Polynomial.var(n, 2 * P + k + x) for x in range(N)]
        for x in range(N):
            flow = Polynomial.zero(n)
            for p in m.preimage(x):
                flow = flow + Polynomial.var(n, P + p)
            images.append(flow)
        images += [Polynomial.var(n, 2 * P + j) for j in range(k)]
        eqs = [q.substitute(images) for q in R.equations]
        for p in range(P):
            eqs.append(Polynomial.var(n, p) - Polynomial.var(n, 2 * P + k + m.table[p]))
        K = fs.coproduct(R.internal, m.cod)[0]
        return _decoration(m.dom, eqs, K, R.internal_kinds + ("c",) * N,
                           [q.substitute(images) for q in R.inequalities])

    def laxator(self, N, R, M, T) -> ConstraintRelation:
        return relation_tensor(R, T)

    def unit(self) -> ConstraintRelation:
        return ConstraintRelation(FinSet(0), FinSet(0), FinSet(0))

    def equal(self, N: FinSet, R: ConstraintRelation, T: ConstraintRelation) -> bool:
        """Set equality on the linear fragment; syntactic equality otherwise."""
        if R.linear and T.linear and not R.inequalities and not T.inequalities:
            return relation_equal(R, T)
        return (R.internal.size == T.internal.size and R.equations == T.equations
                and R.inequalities == T.inequalities)


_S = SFunctor()


def S_instance() -> SFunctor:
    return _S


def alpha(v: PolyVectorField) -> ConstraintRelation:
    """The graph ``{(c, f) | f = v(c)}``."""
    n = v.space.size
    table = list(range(n))
    eqs = [Polynomial.var(2 * n, n + x) - p.rename(table, 2 * n) for x, p in enumerate(v.components)]
    return _decoration(v.space, eqs, FinSet(0), ())


def alpha_morphism() -> DecDataMorphism:
    return DecDataMorphism(D_instance(), _S, lambda N, v: alpha(v), "alpha")


_ALPHA = alpha_morphism()


def split_boundary(R: ConstraintRelation, X: FinSet, Y: FinSet) -> ConstraintRelation:
    """Read a decoration on ``X + Y`` as a relation from ``X`` to ``Y``."""
    nX, nY, k = X.size, Y.size, R.internal.size
    if R.left.size != nX + nY or R.right.size:
        raise ValueError("decoration does not live on X + Y")
    table = (list(range(nX)) + [2 * nX + y for y in range(nY)]
             + [nX + x for x in range(nX)] + [2 * nX + nY + y for y in range(nY)]
             + [2 * (nX + nY) + j for j in range(k)])
    n = R.nvars
    return ConstraintRelation(X, Y, R.internal, tuple(p.rename(table, n) for p in R.equations),
                              tuple(p.rename(table, n) for p in R.inequalities), R.internal_kinds)


def join_boundary(r: ConstraintRelation) -> ConstraintRelation:
    """Inverse of :func:`split_boundary`."""
    nX, nY = r.left.size, r.right.size
    table = (list(range(nX)) + [nX + nY + x for x in range(nX)]
             + [nX + y for y in range(nY)] + [2 * nX + nY + y for y in range(nY)]
             + [2 * (nX + nY) + j for j in range(r.internal.size)])
    n = r.nvars
    S = fs.coproduct(r.left, r.right)[0]
    return ConstraintRelation(S, FinSet(0), r.internal, tuple(p.rename(table, n) for p in r.equations),
                              tuple(p.rename(table, n) for p in r.inequalities), r.internal_kinds)


def black_box(m: DecoratedMorphism) -> ConstraintRelation:
    """Steady-state relation of an open system: boundary concentrations and net inflows."""
    if m.functor is not D_instance():
        raise FunctorMismatch("black_box needs a morphism decorated by vector fields")
    t = apply_decdata_morphism(_ALPHA, m)
    return split_boundary(t.decoration, m.left_foot, m.right_foot)


def _random_start(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(0.1, 2.0, n)


def sample_points(r: ConstraintRelation, k: int, rng: np.random.Generator,
                  max_attempts: int | None = None) -> list[np.ndarray]:
    """``k`` floating points of the solution set of ``r`` (all variables)."""
    system = PolySystem(r.equations, r.nvars)
    out = []
    attempts = 0
    best = float("inf")
    max_attempts = max_attempts or 20 * k
    while len(out) < k and attempts < max_attempts:
        attempts += 1
        res = gauss_newton(system, _random_start(r.nvars, rng))
        best = min(best, res.residual)
        if res.residual < 1e-11 and all(p.evaluate_float(res.x) > 0 for p in r.inequalities):
            out.append(res.x)
    if len(out) < k:
        raise NoConvergence(f"found {len(out)} of {k} sample points", best)
    return out


def numeric_member(r: ConstraintRelation, boundary: Sequence[float], rng: np.random.Generator,
                   starts: int = 20) -> tuple[Membership, np.ndarray | None]:
    """Search for internals realising ``boundary``; not finding any reads as ``NOT_MEMBER``."""
    boundary = [float(b) for b in boundary]
    if r.linear and not r.inequalities:
        return is_member(r, boundary), None
    nb = r.boundary_count
    system = PolySystem(r.equations, r.nvars)
    free = list(range(nb, r.nvars))
    for _ in range(starts):
        x0 = np.concatenate([boundary, _random_start(r.internal.size, rng)])
        res = gauss_newton(system, x0, free)
        if res.residual < TOLERANCE and all(p.evaluate_float(res.x) > 0 for p in r.inequalities):
            return Membership.MEMBER, res.x
    return Membership.NOT_MEMBER, None


@dataclass
class FunctorialityReport:
    passed: bool
    method: str
    checked: int = 0
    counterexample: dict | None = None

    def __str__(self) -> str:
        state = "pass" if self.passed else "FAIL"
        text = f"{state} ({self.method}, {self.checked} checks)"
        if self.counterexample:
            text += f" counterexample: {self.counterexample}"
        return text


def check_functoriality(a: DecoratedMorphism, b: DecoratedMorphism, samples: int = 25,
                        seed: int = 0) -> FunctorialityReport:
    """Compare the black box of ``a ; b`` with the composite of the black boxes."""
    lhs = black_box(decorated_compose(a, b))
    rhs = relation_compose(black_box(a), black_box(b))
    if lhs.linear and rhs.linear:
        ok = relation_equal(lhs, rhs)
        return FunctorialityReport(ok, "exact", 1,
                                   None if ok else {"lhs": lhs.format(), "rhs": rhs.format()})
    empty = certainly_empty(lhs), certainly_empty(rhs)
    if all(empty):
        return FunctorialityReport(True, "both empty", 1)
    rng = np.random.default_rng(seed)
    checked = 0
    for name, side, other, side_empty in (("lhs", lhs, rhs, empty[0]), ("rhs", rhs, lhs, empty[1])):
        if side_empty:
            continue
        try:
            points = sample_points(side, samples, rng)
        except NoConvergence as exc:
            return FunctorialityReport(False, "inconclusive", checked, {"from": name, "error": str(exc)})
        for x in points:
            bnd = x[:side.boundary_count]
            verdict, _ = numeric_member(other, bnd, rng)
            checked += 1
            if verdict is not Membership.MEMBER:
                return FunctorialityReport(False, "sampled", checked,
                                           {"from": name, "boundary": bnd.tolist()})
    return FunctorialityReport(True, "sampled", checked)


def _fixed_positions(r: ConstraintRelation, fixed: Mapping) -> dict[int, Fraction]:
    named = {k: v for k, v in fixed.items() if isinstance(k, str)}
    out = parse_assignment(r, named)
    for k, v in fixed.items():
        if not isinstance(k, str):
            out[int(k)] = to_fraction(v)
    return out


@dataclass
class LinearSolutionSet:
    point: WitnessPoint
    directions: list[tuple[Fraction, ...]] = field(default_factory=list)


def linear_solution_set(r: ConstraintRelation, fixed: Mapping) -> LinearSolutionSet:
    """Exact affine solution set of a linear relation after fixing some variables."""
    if not r.linear or r.inequalities:
        raise ValueError("relation is not linear")
    pos = _fixed_positions(r, fixed)
    unknown = [j for j in range(r.nvars) if j not in pos]
    A, b = [], []
    for p in r.equations:
        coeffs, const = p.linear_coeffs()
        A.append([coeffs[j] for j in unknown])
        b.append(-(const + sum(coeffs[j] * v for j, v in pos.items())))
    if A and unknown:
        sol = solve(A, b)
    elif any(x != 0 for x in b):
        sol = None
    else:
        sol = ([Fraction(0)] * len(unknown),
               [[Fraction(int(i == j)) for i in range(len(unknown))] for j in range(len(unknown))])
    if sol is None:
        raise InconsistentFixing("no solution with the given values")
    x, basis = sol
    values = [Fraction(0)] * r.nvars
    for j, v in pos.items():
        values[j] = v
    for j, v in zip(unknown, x):
        values[j] = v
    dirs = []
    for vec in basis:
        d = [Fraction(0)] * r.nvars
        for j, v in zip(unknown, vec):
            d[j] = v
        dirs.append(tuple(d))
    return LinearSolutionSet(WitnessPoint(values), dirs)


def solve_steady_states(r: ConstraintRelation, fixed: Mapping, seeds: Sequence[Mapping] | None = None,
                        starts: int = 8, seed: int = 0) -> list[WitnessPoint]:
    """Points of ``r`` agreeing with ``fixed`` (keys are variable names or positions).

    Linear relations give one exact point; the free directions come from
    :func:`linear_solution_set`. Otherwise damped Gauss-Newton runs from each
    seed (missing coordinates start at 1) or from random starts, and
    solutions with a negative concentration are dropped.
    """
    if r.linear and not r.inequalities:
        return [linear_solution_set(r, fixed).point]
    pos = _fixed_positions(r, fixed)
    free = [j for j in range(r.nvars) if j not in pos]
    system = PolySystem(r.equations, r.nvars)
    rng = np.random.default_rng(seed)
    starts_x = []
    if seeds:
        for s in seeds:
            x0 = np.ones(r.nvars)
            for j, v in _fixed_positions(r, s).items():
                x0[j] = float(v)
            starts_x.append(x0)
    else:
        starts_x = [_random_start(r.nvars, rng) for _ in range(starts)]
    conc = r.concentration_indices()
    found: list[np.ndarray] = []
    best = float("inf")
    for x0 in starts_x:
        for j, v in pos.items():
            x0[j] = float(v)
        res = gauss_newton(system, x0, free)
        best = min(best, res.residual)
        if not res.converged:
            continue
        if any(p.evaluate_float(res.x) <= 0 for p in r.inequalities):
            continue
        if any(res.x[j] < -TOLERANCE for j in conc):
            continue
        if not any(np.allclose(res.x, y, atol=1e-7) for y in found):
            found.append(res.x)
    if best >= 1e-9:
        raise NoConvergence("no start converged", best)
    out = []
    for x in found:
        vals = [pos[j] if j in pos else float(x[j]) for j in range(r.nvars)]
        out.append(WitnessPoint(vals))
    return out

