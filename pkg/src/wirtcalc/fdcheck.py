"""Finite-difference oracle: independent z/z* derivatives and holomorphy
classification via the Cauchy-Riemann conditions.

All derivative values here come from central differences of plain function
evaluations, never from the jet rules, so this module can arbitrate every
rule in the forward-mode engine.  Default step 1e-5 balances truncation
against rounding for double precision; classification threshold 1e-4.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Union

from .errors import StepTooSmall
from .expr import Expr, eval_jet

DEFAULT_STEP = 1e-5
DEFAULT_TOL = 1e-4
MIN_STEP = 1e-12

Evaluable = Union[Expr, str, Callable[[complex], complex]]


class Verdict(enum.Enum):
    HOLOMORPHIC = "Holomorphic"
    CONJUGATE_HOLOMORPHIC = "ConjugateHolomorphic"
    BOTH = "Both"
    NEITHER = "Neither"


@dataclass(frozen=True)
class HolomorphyReport:
    """Classification verdict plus the residuals of both condition systems.

    ``cr_residual`` is |CW| (the Cauchy-Riemann system reduces to a
    vanishing z*-derivative) and ``conj_cr_residual`` is |W|.
    """

    verdict: Verdict
    w: complex
    cw: complex

    @property
    def cr_residual(self) -> float:
        return abs(self.cw)

    @property
    def conj_cr_residual(self) -> float:
        return abs(self.w)


def _as_callable(f: Evaluable) -> Callable[[complex], complex]:
    if callable(f) and not isinstance(f, Expr):
        return f
    expr = f
    return lambda c: eval_jet(expr, c, order=0)


def fd_partials(f: Evaluable, c: complex,
                step: float = DEFAULT_STEP) -> tuple[complex, complex]:
    """Central-difference partials (df/dx, df/dy) at ``c``."""
    if step < MIN_STEP:
        raise StepTooSmall(f"step {step:g} below {MIN_STEP:g}")
    g = _as_callable(f)
    c = complex(c)
    s = float(step)
    fx = (g(c + s) - g(c - s)) / (2.0 * s)
    fy = (g(c + 1j * s) - g(c - 1j * s)) / (2.0 * s)
    return fx, fy


def fd_wirtinger(f: Evaluable, c: complex,
                 step: float = DEFAULT_STEP) -> tuple[complex, complex]:
    """Central-difference (d/dz, d/dz*) pair at ``c``."""
    fx, fy = fd_partials(f, c, step)
    w = 0.5 * (fx - 1j * fy)
    cw = 0.5 * (fx + 1j * fy)
    return w, cw


def classify(f: Evaluable, c: complex, step: float = DEFAULT_STEP,
             tol: float = DEFAULT_TOL) -> HolomorphyReport:
    """Threshold the finite-difference W/CW magnitudes at ``c``.

    For expression inputs, an order-1 evaluation runs first so that
    non-differentiable points (abs or arg at 0) surface an error instead of
    a spurious verdict; opaque callables get no such precheck.
    """
    if isinstance(f, (Expr, str)):
        eval_jet(f, c, order=1)
    w, cw = fd_wirtinger(f, c, step)
    cr_ok = abs(cw) < tol
    conj_cr_ok = abs(w) < tol
    if cr_ok and conj_cr_ok:
        verdict = Verdict.BOTH
    elif cr_ok:
        verdict = Verdict.HOLOMORPHIC
    elif conj_cr_ok:
        verdict = Verdict.CONJUGATE_HOLOMORPHIC
    else:
        verdict = Verdict.NEITHER
    return HolomorphyReport(verdict, w, cw)
