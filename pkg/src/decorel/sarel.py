"""Relations on concentration/flow pairs, kept in implicit existential form.

A :class:`ConstraintRelation` from ``X`` to ``Y`` is the set of boundary
vectors ``(c_X, f_X, c_Y, f_Y)`` for which some assignment of the internal
variables makes every equation vanish (and every inequality positive).

Variables are laid out as::

    [c_X | f_X | c_Y | f_Y | internal]

Composition follows the net-flow-in convention: on the shared boundary the
concentrations agree and the two flows sum to zero. The identity relation is
therefore ``c = c'``, ``f + f' = 0``.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from . import finset as fs
from .cospan import Cospan, frobenius_generator, identity_cospan, braiding
from .finset import FinSet
from .linalg import rref, solve
from .polynomial import Polynomial, to_fraction

NATIVE = "native"
BP = "bp"
TOLERANCE = 1e-9


class BoundaryMismatch(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class NotLinear(ValueError):
    pass


class Membership(enum.Enum):
    MEMBER = "Member"
    NOT_MEMBER = "NotMember"
    NEEDS_WITNESS = "NeedsWitness"


@dataclass(frozen=True, eq=False)
class ConstraintRelation:
    left: FinSet
    right: FinSet
    internal: FinSet
    equations: tuple[Polynomial, ...] = ()
    inequalities: tuple[Polynomial, ...] = ()
    # 'c' (concentration), 'f' (flow) or 'x' per internal variable
    internal_kinds: tuple[str, ...] | None = None
    convention: str = NATIVE

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(p for p in self.equations if not p.is_zero()))
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        kinds = self.internal_kinds
        kinds = ("x",) * self.internal.size if kinds is None else tuple(kinds)
        if len(kinds) != self.internal.size or any(k not in "cfx" for k in kinds):
            raise DimensionMismatch(f"bad internal kinds {kinds}")
        object.__setattr__(self, "internal_kinds", kinds)
        if self.convention not in (NATIVE, BP):
            raise ValueError(f"unknown convention {self.convention!r}")
        n = self.nvars
        for p in self.equations + self.inequalities:
            if p.nvars != n:
                raise DimensionMismatch(f"polynomial in {p.nvars} variables, relation has {n}")

    @property
    def nvars(self) -> int:
        return self.boundary_count + self.internal.size

    @property
    def boundary_count(self) -> int:
        return 2 * (self.left.size + self.right.size)

    @property
    def linear(self) -> bool:
        return all(p.is_linear() for p in self.equations + self.inequalities)

    def conc_left(self, j: int) -> int:
        return j

    def flow_left(self, j: int) -> int:
        return self.left.size + j

    def conc_right(self, j: int) -> int:
        return 2 * self.left.size + j

    def flow_right(self, j: int) -> int:
        return 2 * self.left.size + self.right.size + j

    def internal_var(self, j: int) -> int:
        return self.boundary_count + j

    def variable_names(self) -> list[str]:
        L, R = self.left.names(), self.right.names()
        return ([f"cin_{a}" for a in L] + [f"I_{a}" for a in L]
                + [f"cout_{a}" for a in R] + [f"O_{a}" for a in R]
                + list(self.internal.names()))

    def concentration_indices(self) -> list[int]:
        nL, nR = self.left.size, self.right.size
        out = list(range(nL)) + [2 * nL + j for j in range(nR)]
        out += [self.internal_var(j) for j, k in enumerate(self.internal_kinds) if k == "c"]
        return out

    def __repr__(self) -> str:
        return (f"ConstraintRelation({self.left.size} | {self.right.size}, "
                f"{self.internal.size} internal, {len(self.equations)} equations)")

    def format(self) -> str:
        names = self.variable_names()
        head = f"relation ({', '.join(self.left.names())} | {', '.join(self.right.names())})"
        if self.internal.size:
            head += f" exists {', '.join(self.internal.names())}"
        lines = [head + f"  [{self.convention}]"]
        lines += [f"  {p.format(names)} = 0" for p in self.equations]
        lines += [f"  {p.format(names)} > 0" for p in self.inequalities]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "left": list(self.left.names()),
            "right": list(self.right.names()),
            "internal": list(self.internal.names()),
            "internal_kinds": "".join(self.internal_kinds),
            "convention": self.convention,
            "linear": self.linear,
            "equations": [p.to_json() for p in self.equations],
            "inequalities": [p.to_json() for p in self.inequalities],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> ConstraintRelation:
        L, R, K = (FinSet(len(data[k]), data[k]) for k in ("left", "right", "internal"))
        n = 2 * (L.size + R.size) + K.size
        r = cls(L, R, K,
                tuple(Polynomial.from_json(n, p) for p in data.get("equations", [])),
                tuple(Polynomial.from_json(n, p) for p in data.get("inequalities", [])),
                tuple(data.get("internal_kinds", "x" * K.size)),
                data.get("convention", NATIVE))
        if "linear" in data and bool(data["linear"]) != r.linear:
            raise ValueError("linear flag disagrees with the equations")
        return r

    @classmethod
    def loads(cls, text: str) -> ConstraintRelation:
        return cls.from_json(json.loads(text))


@dataclass(frozen=True)
class WitnessPoint:
    """Values for every variable of a relation, boundary first."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Rational) for v in self.values)

    def boundary(self, r: ConstraintRelation) -> tuple:
        return self.values[:r.boundary_count]

    def as_dict(self, r: ConstraintRelation) -> dict[str, object]:
        return dict(zip(r.variable_names(), self.values))


def _embed(p: Polynomial, table: Sequence[int], n: int, negate=frozenset()) -> Polynomial:
    return p.rename(table, n, frozenset(negate))


def frob_of_cospan(c: Cospan) -> ConstraintRelation:
    """Relation of ``X -i-> N <-o- Y``: concentrations constant on each block, flows summing to zero."""
    X, Y, N = c.left_foot, c.right_foot, c.apex
    nX, nY, nN = X.size, Y.size, N.size
    n = 2 * (nX + nY) + nN
    base = 2 * (nX + nY)
    eqs = []
    for x in range(nX):
        eqs.append(Polynomial.var(n, x) - Polynomial.var(n, base + c.i.table[x]))
    for y in range(nY):
        eqs.append(Polynomial.var(n, 2 * nX + y) - Polynomial.var(n, base + c.o.table[y]))
    for k in range(nN):
        coeffs = [0] * n
        for x in c.i.preimage(k):
            coeffs[nX + x] += 1
        for y in c.o.preimage(k):
            coeffs[2 * nX + nY + y] += 1
        if any(coeffs):
            eqs.append(Polynomial.linear(coeffs))
    K = FinSet(nN, [f"k_{a}" for a in N.names()])
    return ConstraintRelation(X, Y, K, tuple(eqs), (), ("c",) * nN)


def frob_generator_R2(which: str) -> ConstraintRelation:
    return frob_of_cospan(frobenius_generator(which, 1))


def identity_relation(X: FinSet | int) -> ConstraintRelation:
    return frob_of_cospan(identity_cospan(X))


def swap_relation(X: FinSet | int, Y: FinSet | int) -> ConstraintRelation:
    return frob_of_cospan(braiding(X, Y))


def _check_native(*rels: ConstraintRelation) -> None:
    for r in rels:
        if r.convention != NATIVE:
            raise ValueError("relation algebra works in the native convention; convert first")


def relation_compose(u: ConstraintRelation, v: ConstraintRelation) -> ConstraintRelation:
    """``u ; v``: shared concentrations equal, shared flows entering ``u`` negated."""
    if u.right != v.left:
        raise BoundaryMismatch(f"right boundary of size {u.right.size} vs left of size {v.left.size}")
    _check_native(u, v)
    nX, nY, nZ = u.left.size, u.right.size, v.right.size
    ku, kv = u.internal.size, v.internal.size
    b_ui = 2 * (nX + nZ)
    b_vi = b_ui + ku
    b_cy = b_vi + kv
    b_fy = b_cy + nY
    n = b_fy + nY
    tu = (list(range(2 * nX)) + [b_cy + j for j in range(nY)]
          + [b_fy + j for j in range(nY)] + [b_ui + j for j in range(ku)])
    neg = {2 * nX + nY + j for j in range(nY)}
    tv = ([b_cy + j for j in range(nY)] + [b_fy + j for j in range(nY)]
          + [2 * nX + j for j in range(2 * nZ)] + [b_vi + j for j in range(kv)])
    ylab = u.right.names()
    K = fs.sum_set(u.internal, v.internal,
                   FinSet(nY, [f"c_{a}" for a in ylab]), FinSet(nY, [f"f_{a}" for a in ylab]))
    kinds = u.internal_kinds + v.internal_kinds + ("c",) * nY + ("f",) * nY
    eqs = [_embed(p, tu, n, neg) for p in u.equations] + [_embed(p, tv, n) for p in v.equations]
    ineqs = ([_embed(p, tu, n, neg) for p in u.inequalities]
             + [_embed(p, tv, n) for p in v.inequalities])
    return ConstraintRelation(u.left, v.right, K, tuple(eqs), tuple(ineqs), kinds)


def relation_tensor(u: ConstraintRelation, v: ConstraintRelation) -> ConstraintRelation:
    _check_native(u, v)
    a, b, c, d = u.left.size, v.left.size, u.right.size, v.right.size
    L, R = fs.coproduct(u.left, v.left)[0], fs.coproduct(u.right, v.right)[0]
    ku, kv = u.internal.size, v.internal.size
    nL, nR = a + b, c + d
    base = 2 * (nL + nR)
    n = base + ku + kv
    tu = (list(range(a)) + [nL + j for j in range(a)]
          + [2 * nL + j for j in range(c)] + [2 * nL + nR + j for j in range(c)]
          + [base + j for j in range(ku)])
    tv = ([a + j for j in range(b)] + [nL + a + j for j in range(b)]
          + [2 * nL + c + j for j in range(d)] + [2 * nL + nR + c + j for j in range(d)]
          + [base + ku + j for j in range(kv)])
    K = fs.coproduct(u.internal, v.internal)[0]
    eqs = [_embed(p, tu, n) for p in u.equations] + [_embed(p, tv, n) for p in v.equations]
    ineqs = [_embed(p, tu, n) for p in u.inequalities] + [_embed(p, tv, n) for p in v.inequalities]
    return ConstraintRelation(L, R, K, tuple(eqs), tuple(ineqs),
                              u.internal_kinds + v.internal_kinds)


def flip_left_flows(r: ConstraintRelation) -> ConstraintRelation:
    """Negate every left-boundary flow variable (an involution)."""
    n = r.nvars
    neg = {r.flow_left(j) for j in range(r.left.size)}
    table = list(range(n))
    return replace(r,
                   equations=tuple(_embed(p, table, n, neg) for p in r.equations),
                   inequalities=tuple(_embed(p, table, n, neg) for p in r.inequalities))


def to_convention(r: ConstraintRelation, convention: str) -> ConstraintRelation:
    """Present ``r`` in the native (net flow in) or ``bp`` (inflow/outflow) form.

    The ``bp`` form reads left flows as inflows, so ``v = I + O`` becomes
    ``v + I - O = 0``. Composition in that form is plain relational
    composition: shared concentrations and flows are equal.
    """
    if convention not in (NATIVE, BP):
        raise ValueError(f"unknown convention {convention!r}")
    if convention == r.convention:
        return r
    return replace(flip_left_flows(r), convention=convention)


def _augmented_rows(r: ConstraintRelation, order: Sequence[int]) -> list[list[Fraction]]:
    rows = []
    for p in r.equations:
        coeffs, const = p.linear_coeffs()
        rows.append([coeffs[j] for j in order] + [const])
    return rows


def linear_eliminate(r: ConstraintRelation) -> ConstraintRelation:
    """Exact projection onto the boundary; the result has no internals.

    Equations come out in reduced row echelon form over the boundary
    variables, so two relations define the same set iff their eliminated
    equation lists agree. An empty set is normalised to the single equation
    ``1 = 0``.
    """
    if not r.linear:
        raise NotLinear("elimination is exact only for linear relations")
    if r.inequalities:
        raise NotLinear("elimination does not handle strict inequalities")
    nb, k = r.boundary_count, r.internal.size
    order = list(range(nb, nb + k)) + list(range(nb))
    red, pivots = rref(_augmented_rows(r, order), nb + k)
    eqs = []
    for row, p in zip(red, pivots):
        if p >= k:
            eqs.append(Polynomial.linear(row[k:nb + k], row[nb + k]))
    if len(red) > len(pivots):
        eqs = [Polynomial.const(nb, 1)]
    return ConstraintRelation(r.left, r.right, FinSet(0), tuple(eqs), (), (), r.convention)


def certainly_empty(r: ConstraintRelation) -> bool:
    """True when the equations are inconsistent even with every monomial read as a free unknown.

    Any real solution of ``r`` solves that linearised system, so ``True`` is a
    proof of emptiness. ``False`` decides nothing for a nonlinear relation.
    """
    if not r.equations:
        return False
    const = (0,) * r.nvars
    monos = sorted({m for p in r.equations for m in p.terms if m != const})
    col = {m: j for j, m in enumerate(monos)}
    rows = []
    for p in r.equations:
        row = [Fraction(0)] * (len(monos) + 1)
        for m, c in p.terms.items():
            row[col[m] if m != const else len(monos)] = c
        rows.append(row)
    red, pivots = rref(rows, len(monos))
    return len(red) > len(pivots)


def relation_equal(u: ConstraintRelation, v: ConstraintRelation) -> bool:
    """Set equality for linear relations, by comparing eliminated forms."""
    if u.left != v.left or u.right != v.right or u.convention != v.convention:
        return False
    return linear_eliminate(u).equations == linear_eliminate(v).equations


def _is_exact(values) -> bool:
    return all(isinstance(x, Rational) for x in values)


def _evaluate(r: ConstraintRelation, values: Sequence) -> Membership:
    exact = _is_exact(values)
    for p in r.equations:
        val = p.evaluate(values) if exact else p.evaluate_float([float(x) for x in values])
        if (val != 0) if exact else not abs(val) <= TOLERANCE:
            return Membership.NOT_MEMBER
    for p in r.inequalities:
        val = p.evaluate(values) if exact else p.evaluate_float([float(x) for x in values])
        if not val > 0:
            return Membership.NOT_MEMBER
    return Membership.MEMBER


def check_witness(r: ConstraintRelation, w: WitnessPoint | Sequence) -> Membership:
    values = w.values if isinstance(w, WitnessPoint) else tuple(w)
    if len(values) != r.nvars:
        raise DimensionMismatch(f"witness of length {len(values)} for {r.nvars} variables")
    return _evaluate(r, values)


def _linear_member(r: ConstraintRelation, boundary: Sequence) -> Membership:
    nb, k = r.boundary_count, r.internal.size
    A, b = [], []
    exact = _is_exact(boundary)
    for p in r.equations:
        coeffs, const = p.linear_coeffs()
        A.append(coeffs[nb:])
        if exact:
            rhs = -(const + sum(coeffs[j] * boundary[j] for j in range(nb)))
        else:
            rhs = -(float(const) + sum(float(coeffs[j]) * float(boundary[j]) for j in range(nb)))
        b.append(rhs)
    if not A:
        return Membership.MEMBER
    if exact:
        return Membership.MEMBER if solve(A, b) is not None else Membership.NOT_MEMBER
    M = np.array([[float(x) for x in row] for row in A]).reshape(len(A), k)
    rhs = np.array(b, dtype=float)
    if k:
        x = np.linalg.lstsq(M, rhs, rcond=None)[0]
        res = M @ x - rhs
    else:
        res = -rhs
    return Membership.MEMBER if np.max(np.abs(res)) <= TOLERANCE else Membership.NOT_MEMBER


def is_member(r: ConstraintRelation, boundary_values: Sequence,
              witness: WitnessPoint | Sequence | None = None) -> Membership:
    """Decide membership of a boundary vector.

    Linear relations without inequalities are decided by solving for the
    internals; rational input is decided exactly, floating input at the
    module tolerance. Otherwise a witness for the internals (or for every
    variable) is evaluated, and without one the answer is ``NEEDS_WITNESS``
    unless there is nothing to witness.
    """
    boundary = tuple(boundary_values)
    if len(boundary) != r.boundary_count:
        raise DimensionMismatch(f"{len(boundary)} boundary values for {r.boundary_count} variables")
    if r.linear and not r.inequalities:
        return _linear_member(r, boundary)
    if witness is not None:
        values = tuple(witness.values if isinstance(witness, WitnessPoint) else witness)
        if len(values) == r.internal.size:
            values = boundary + values
        if len(values) != r.nvars:
            raise DimensionMismatch(f"witness of length {len(values)} for {r.nvars} variables")
        exact = _is_exact(boundary) and _is_exact(values)
        for a, b in zip(boundary, values):
            if (a != b) if exact else abs(float(a) - float(b)) > TOLERANCE:
                return Membership.NOT_MEMBER
        return _evaluate(r, values)
    if r.internal.size == 0:
        return _evaluate(r, boundary)
    return Membership.NEEDS_WITNESS


def parse_assignment(r: ConstraintRelation, items: dict[str, object]) -> dict[int, Fraction]:
    """Translate ``{variable name: value}`` into positional form."""
    names = r.variable_names()
    out = {}
    for key, val in items.items():
        if key not in names:
            raise KeyError(f"unknown variable {key!r}; known: {', '.join(names)}")
        out[names.index(key)] = to_fraction(val)
    return out
