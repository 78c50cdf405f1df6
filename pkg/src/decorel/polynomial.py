"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational")


class Polynomial:
    """A polynomial in ``nvars`` positional variables.

    ``terms`` maps exponent tuples to nonzero :class:`~fractions.Fraction`
    coefficients.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != nvars:
                    raise ValueError(f"exponent vector {mono} for {nvars} variables")
                c = to_fraction(c)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
                    if not clean[mono]:
                        del clean[mono]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> Polynomial:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> Polynomial:
        c = to_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, j: int, coef=1) -> Polynomial:
        if not 0 <= j < nvars:
            raise IndexError(f"variable {j} out of {nvars}")
        mono = [0] * nvars
        mono[j] = 1
        coef = to_fraction(coef)
        return cls._raw(nvars, {tuple(mono): coef} if coef else {})

    @classmethod
    def linear(cls, coeffs: Sequence, constant=0) -> Polynomial:
        n = len(coeffs)
        terms: dict[Monomial, Fraction] = {}
        for j, c in enumerate(coeffs):
            c = to_fraction(c)
            if c:
                mono = [0] * n
                mono[j] = 1
                terms[tuple(mono)] = c
        c0 = to_fraction(constant)
        if c0:
            terms[(0,) * n] = c0
        return cls._raw(n, terms)

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"mixing polynomials in {self.nvars} and {other.nvars} variables")
            return other
        return Polynomial.const(self.nvars, other)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = to_fraction(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(mono, 0) + c1 * c2
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.const(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.format()})"

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def is_linear(self) -> bool:
        return self.degree() <= 1

    def variables(self) -> set[int]:
        return {j for m in self.terms for j, e in enumerate(m) if e}

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def linear_coeffs(self) -> tuple[list[Fraction], Fraction]:
        """Coefficient row and constant of a polynomial of degree at most one."""
        if not self.is_linear():
            raise ValueError("polynomial is not linear")
        row = [Fraction(0)] * self.nvars
        for m, c in self.terms.items():
            for j, e in enumerate(m):
                if e:
                    row[j] = c
                    break
        return row, self.constant_term()

    def rename(self, table: Sequence[int], nvars: int, negate: frozenset[int] = frozenset()) -> Polynomial:
        """Substitute variable ``j`` by variable ``table[j]`` of an ``nvars``-variable ring.

        Variables whose index is in ``negate`` are replaced by the negated target.
        """
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            mono = [0] * nvars
            for j, e in enumerate(m):
                if e:
                    mono[table[j]] += e
                    if j in negate and e % 2:
                        c = -c
            mono = tuple(mono)
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Polynomial._raw(nvars, out)

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        """Ring homomorphism sending variable ``j`` to ``images[j]``."""
        if len(images) != self.nvars:
            raise ValueError(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return Polynomial.const(0, self.constant_term())
        target = images[0].nvars
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(j, e):
            key = (j, e)
            if key not in powers:
                powers[key] = images[j] ** e
            return powers[key]

        result = Polynomial.zero(target)
        for m, c in self.terms.items():
            term = Polynomial.const(target, c)
            for j, e in enumerate(m):
                if e:
                    term = term * power(j, e)
            result = result + term
        return result

    def evaluate(self, values: Sequence):
        """Value at a point; exact when ``values`` are rationals."""
        total = 0
        for m, c in self.terms.items():
            t = c
            for j, e in enumerate(m):
                if e:
                    t = t * values[j] ** e
            total = total + t
        return total

    def evaluate_float(self, values: Sequence[float]) -> float:
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for j, e in enumerate(m):
                if e:
                    t *= values[j] ** e
            total += t
        return total

    def diff(self, j: int) -> Polynomial:
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[j]
            if e:
                mono = list(m)
                mono[j] = e - 1
                out[tuple(mono)] = c * e
        return Polynomial._raw(self.nvars, out)

    def partial_evaluate(self, assignment: Mapping[int, object]) -> Polynomial:
        """Fix some variables to rational values, keeping the variable count."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            mono = list(m)
            v = c
            for j, x in assignment.items():
                e = mono[j]
                if e:
                    v = v * to_fraction(x) ** e
                    mono[j] = 0
            mono = tuple(mono)
            s = out.get(mono, 0) + v
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial._raw(self.nvars, out)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{j}" for j in range(self.nvars)]
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for j, e in enumerate(m):
                if e == 1:
                    factors.append(names[j])
                elif e > 1:
                    factors.append(f"{names[j]}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list:
        return [{"coef": str(c), "monomial": [[j, e] for j, e in enumerate(m) if e]}
                for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable) -> Polynomial:
        terms: dict[Monomial, Fraction] = {}
        for term in data:
            mono = [0] * nvars
            for j, e in term["monomial"]:
                mono[j] += int(e)
            mono = tuple(mono)
            terms[mono] = terms.get(mono, 0) + Fraction(term["coef"])
        return cls(nvars, terms)
