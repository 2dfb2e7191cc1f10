"""Gradient-based minimization of real-valued costs of complex arguments.

The steepest-descent update moves against the conjugate-derivative slot,

    z_next = z - mu * (df/dz*)          (scalar)
    f_next = f - mu * grad_fc           (Hilbert space)

because for real-valued costs that slot is the direction of maximal
increase.  Stationarity of real costs is symmetric: the two derivative
slots are conjugates of each other, so driving one below the threshold
drives both.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from . import expr as ex
from . import hilbert as hb
from .errors import (DimensionMismatch, EmptyData, NonRealCost,
                     SingularHessian)
from .second import propagate_second_order

log = logging.getLogger("wirtcalc.optimize")

#: tolerated |imag(cost)| at the starting point / along the run
IMAG_TOL_START = 1e-10
IMAG_TOL_DRIFT = 1e-8
#: a run whose cost exceeds this multiple of the initial cost has diverged
DIVERGENCE_FACTOR = 10.0


class Termination(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITER = "MaxIter"
    DIVERGED = "Diverged"


@dataclass
class DescentConfig:
    mu: float = 0.1
    tol: float = 1e-8
    max_iter: int = 1000
    step_mode: str = "fixed"          # "fixed" | "backtracking"
    shrink: float = 0.5
    armijo_c: float = 1e-4

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if not 0 < self.shrink < 1:
            raise ValueError(f"shrink must be in (0, 1), got {self.shrink}")
        if not 0 < self.armijo_c < 1:
            raise ValueError(f"armijo_c must be in (0, 1), got {self.armijo_c}")
        if self.step_mode not in ("fixed", "backtracking"):
            raise ValueError(f"unknown step_mode {self.step_mode!r}")
        if self.max_iter < 0:
            raise ValueError("max_iter must be non-negative")


@dataclass
class DescentTrace:
    """Iterate / cost / gradient-norm history of one minimization run."""

    iterates: list = field(default_factory=list)
    costs: list[float] = field(default_factory=list)
    grad_norms: list[float] = field(default_factory=list)
    termination: Termination = Termination.MAX_ITER

    @property
    def final(self):
        return self.iterates[-1]

    @property
    def iterations(self) -> int:
        return len(self.iterates) - 1

    def json_lines(self):
        """One JSON record per recorded iterate:
        {"iter": k, "z" or "f": ..., "cost": ..., "grad_norm": ...}."""
        for k, (x, cost, gn) in enumerate(
                zip(self.iterates, self.costs, self.grad_norms)):
            if isinstance(x, complex):
                point = {"z": [x.real, x.imag]}
            else:
                point = {"f": [[w.real, w.imag] for w in np.asarray(x)]}
            yield json.dumps({"iter": k, **point, "cost": cost,
                              "grad_norm": gn})


def _check_real(value: complex, tol: float) -> float:
    if not (abs(value.imag) <= tol):
        raise NonRealCost(
            f"cost has imaginary part {value.imag:.3e} beyond {tol:g}")
    return value.real


def _descend(value_of: Callable, jet_of: Callable,
             move: Callable, grad_norm_of: Callable,
             x0, cfg: DescentConfig) -> DescentTrace:
    """Shared loop: scalar and Hilbert descent differ only in the callbacks."""
    trace = DescentTrace()
    x = x0
    initial_cost = None
    for k in range(cfg.max_iter + 1):
        jet = jet_of(x)
        tol_imag = IMAG_TOL_START if k == 0 else IMAG_TOL_DRIFT
        cost = _check_real(jet[0], tol_imag)
        grad = jet[1]
        gn = grad_norm_of(grad)
        trace.iterates.append(x)
        trace.costs.append(cost)
        trace.grad_norms.append(gn)
        log.debug("iter %d: cost=%.6e grad_norm=%.6e", k, cost, gn)
        if initial_cost is None:
            initial_cost = cost
        if not np.isfinite(cost) or cost > DIVERGENCE_FACTOR * abs(initial_cost) + 1e-30:
            trace.termination = Termination.DIVERGED
            return trace
        if gn < cfg.tol:
            trace.termination = Termination.CONVERGED
            return trace
        if k == cfg.max_iter:
            break
        if cfg.step_mode == "fixed":
            x = move(x, cfg.mu, grad)
        else:
            t = cfg.mu
            accepted = False
            for _ in range(60):
                candidate = move(x, t, grad)
                c_new = _check_real(value_of(candidate), IMAG_TOL_DRIFT)
                if c_new <= cost - cfg.armijo_c * t * gn * gn:
                    x = candidate
                    accepted = True
                    break
                t *= cfg.shrink
            if not accepted:
                break  # line search stalled; report MaxIter
    trace.termination = Termination.MAX_ITER
    return trace


def steepest_descent_scalar(cost: Union[str, ex.Expr], z0: complex,
                            cfg: DescentConfig) -> DescentTrace:
    """Minimize a real-valued expression in z, z* from the point ``z0``."""
    e = ex.parse(cost) if isinstance(cost, str) else cost

    def jet_of(z):
        j = ex.eval_jet(e, z, order=1)
        return j.value, j.dzc

    return _descend(
        value_of=lambda z: ex.eval_jet(e, z, order=0),
        jet_of=jet_of,
        move=lambda z, t, g: z - t * g,
        grad_norm_of=abs,
        x0=complex(z0),
        cfg=cfg,
    )


def steepest_descent_hilbert(cost: hb.Functional, f0: hb.HVec,
                             cfg: DescentConfig) -> DescentTrace:
    """Minimize a real-valued functional program from the vector ``f0``."""
    f0 = hb.hvec(f0)

    def jet_of(f):
        j = cost(f)
        return j.value, j.grad_fc

    return _descend(
        value_of=lambda f: cost(f).value,
        jet_of=jet_of,
        move=lambda f, t, g: f - t * g,
        grad_norm_of=lambda g: float(np.linalg.norm(g)),
        x0=f0,
        cfg=cfg,
    )


# --------------------------------------------------------------------------
# least squares
# --------------------------------------------------------------------------


class LeastSquaresProgram:
    """Residual-sum-of-squares functional over C^n (or C^2n when widely
    linear): T(f) = sum_k |d_k - inner(w_k, f)|^2 with w_k the sample vector
    (widely linear stacks the sample with its conjugate so the parameter
    holds both filter halves).

    Calling the program evaluates value and both gradients with matrix
    arithmetic; ``eval_assembled`` builds the same jet sample-by-sample from
    the inner-product rules and the product-with-conjugate algebra, and the
    test suite pins the two paths together.
    """

    def __init__(self, X: Sequence, d: Sequence[complex],
                 widely_linear: bool = False):
        rows = [hb.hvec(x) for x in X]
        if not rows:
            raise EmptyData("least squares needs at least one sample")
        n = rows[0].shape[0]
        for r in rows[1:]:
            if r.shape[0] != n:
                raise DimensionMismatch(
                    f"sample dimensions differ: {r.shape[0]} vs {n}")
        d = np.asarray([complex(v) for v in d], dtype=np.complex128)
        if d.shape[0] != len(rows):
            raise DimensionMismatch(
                f"{len(rows)} samples but {d.shape[0]} targets")
        self.widely_linear = bool(widely_linear)
        self.n_features = n
        base = np.vstack(rows)
        self._W = np.hstack([base, np.conj(base)]) if widely_linear else base
        self._d = d

    @property
    def n_params(self) -> int:
        return self._W.shape[1]

    def residuals(self, c: hb.HVec) -> np.ndarray:
        c = np.asarray(c, dtype=np.complex128)
        if c.shape[0] != self.n_params:
            raise DimensionMismatch(
                f"parameter has dimension {c.shape[0]}, need {self.n_params}")
        return self._d - self._W @ np.conj(c)

    def __call__(self, c: hb.HVec) -> hb.FunctionalJet:
        r = self.residuals(c)
        value = complex(np.vdot(r, r).real)
        grad_f = -(np.conj(self._W).T @ r)
        grad_fc = -(self._W.T @ np.conj(r))
        return hb.FunctionalJet(value, grad_f, grad_fc)

    def eval_assembled(self, c: hb.HVec) -> hb.FunctionalJet:
        c = np.asarray(c, dtype=np.complex128)
        total = hb.functional_constant(0.0, self.n_params)
        for k in range(self._W.shape[0]):
            ip = hb.ip_functional("wf", self._W[k], c)
            r = hb.jet_sub(hb.functional_constant(self._d[k], self.n_params),
                           ip)
            total = hb.jet_add(total, hb.jet_mul(r, hb.jet_conj(r)))
        return total


def build_least_squares(X: Sequence, d: Sequence[complex],
                        widely_linear: bool = False) -> LeastSquaresProgram:
    """Least-squares cost program for ``steepest_descent_hilbert``."""
    return LeastSquaresProgram(X, d, widely_linear)


# --------------------------------------------------------------------------
# Newton step
# --------------------------------------------------------------------------

DET_TOL = 1e-12
NEWTON_CONJ_TOL = 1e-8


def newton_step_scalar(cost: Union[str, ex.Expr], z: complex) -> complex:
    """One Newton displacement for a real-valued cost: solve the 2x2 system

        [dzz  dzzc ] [dz_step ]     [dz ]
        [dzcz dzczc] [dzc_step] = - [dzc]

    from the quadratic model and return dz_step.  For a genuinely real cost
    the second row is the conjugate of the first, so the solved pair must be
    conjugate; a violation (like a singular or non-real block) raises
    SingularHessian and callers should fall back to a gradient step.
    """
    j = propagate_second_order(cost, complex(z))
    _check_real(j.value, IMAG_TOL_DRIFT)
    scale = max(abs(j.dzz), abs(j.dzzc), abs(j.dzcz), abs(j.dzczc))
    if scale == 0.0:
        raise SingularHessian("second-order block is identically zero")
    det = j.dzz * j.dzczc - j.dzzc * j.dzcz
    if abs(det) <= DET_TOL * scale * scale:
        raise SingularHessian(f"determinant {abs(det):.3e} below threshold")
    step = (-j.dz * j.dzczc + j.dzzc * j.dzc) / det
    step_c = (j.dzcz * j.dz - j.dzz * j.dzc) / det
    if abs(step_c - step.conjugate()) > NEWTON_CONJ_TOL * (1.0 + abs(step)):
        raise SingularHessian(
            "solved displacement pair is not a conjugate pair")
    return step
