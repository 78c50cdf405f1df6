"""Damped Gauss-Newton for small polynomial systems."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .polynomial import Polynomial


class NoConvergence(RuntimeError):
    def __init__(self, message: str, best_residual: float):
        super().__init__(f"{message} (best residual {best_residual:.3e})")
        self.best_residual = best_residual


def _compile(p: Polynomial):
    coefs = np.array([float(c) for c in p.terms.values()])
    exps = np.array(list(p.terms.keys()), dtype=float).reshape(len(p.terms), p.nvars)
    return coefs, exps


class PolySystem:
    """A list of polynomials evaluated as ``F: R^n -> R^m`` with its Jacobian."""

    def __init__(self, polys: Sequence[Polynomial], nvars: int):
        self.nvars = nvars
        self.polys = list(polys)
        self._f = [_compile(p) for p in self.polys]
        self._jac = []
        for i, p in enumerate(self.polys):
            for j in sorted(p.variables()):
                self._jac.append((i, j, _compile(p.diff(j))))

    @staticmethod
    def _eval(compiled, x: np.ndarray) -> float:
        coefs, exps = compiled
        if not len(coefs):
            return 0.0
        return float(coefs @ np.prod(x ** exps, axis=1))

    def residual(self, x: np.ndarray) -> np.ndarray:
        return np.array([self._eval(c, x) for c in self._f])

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        J = np.zeros((len(self.polys), self.nvars))
        for i, j, c in self._jac:
            J[i, j] = self._eval(c, x)
        return J


@dataclass
class NewtonResult:
    x: np.ndarray
    residual: float
    iterations: int

    @property
    def converged(self) -> bool:
        return self.residual < 1e-9


def gauss_newton(system: PolySystem, x0: Sequence[float], free: Sequence[int] | None = None,
                 tol: float = 1e-13, max_iter: int = 200) -> NewtonResult:
    """Minimise ``|F(x)|`` over the ``free`` coordinates, starting at ``x0``.

    Each step is the minimum-norm least-squares Newton step, halved until the
    residual decreases; for underdetermined systems this walks to a nearby
    point of the solution set.
    """
    x = np.array(x0, dtype=float)
    free = list(range(system.nvars)) if free is None else list(free)
    r = system.residual(x)
    norm = float(np.max(np.abs(r))) if len(r) else 0.0
    it = 0
    for it in range(1, max_iter + 1):
        if norm < tol or not free:
            break
        J = system.jacobian(x)[:, free]
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        t = 1.0
        improved = False
        while t > 1e-8:
            y = x.copy()
            y[free] += t * step
            ry = system.residual(y)
            ny = float(np.max(np.abs(ry)))
            if ny < norm:
                x, r, norm = y, ry, ny
                improved = True
                break
            t *= 0.5
        if not improved:
            break
    return NewtonResult(x, norm, it)
