"""Finite-dimensional complex Hilbert space: functionals on C^n carrying a
scalar value plus a pair of gradient vectors.

Vectors are 1-D ``complex128`` numpy arrays; ``hvec`` copies and freezes its
input so every value handed around is immutable.  The inner product is
linear in the FIRST argument and conjugate-linear in the second,

    inner(f, g) = sum_k f_k * conj(g_k),

which is the convention under which the gradient of f -> inner(f, w) is
conj(w) with vanishing conjugate gradient.  A ``FunctionalJet`` stores

    value    : T(c)
    grad_f   : gradient with f* held formally constant
    grad_fc  : gradient with f held formally constant (the steepest-ascent
               direction when T is real valued)

and the algebra below mirrors the scalar jet rules with vectors in the
derivative slots.  ``fd_gradients`` is the independent oracle: coordinate-wise
central differences along the real and imaginary unit directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import expr as ex
from .errors import (DimensionMismatch, DomainError, PoleError, StepTooSmall)
from .fdcheck import DEFAULT_STEP, DEFAULT_TOL, MIN_STEP, Verdict
from .forward import POLE_FLOOR

HVec = np.ndarray

Functional = Callable[[HVec], "FunctionalJet"]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def hvec(coords) -> HVec:
    """Validate and freeze a coordinate vector (length >= 1, all finite)."""
    a = np.array(coords, dtype=np.complex128, copy=True)
    if a.ndim != 1 or a.size < 1:
        raise DimensionMismatch(f"expected a 1-D vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("vector has non-finite coordinates")
    return _freeze(a)


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimension mismatch: {a.shape} vs {b.shape}")


def inner(f: HVec, g: HVec) -> complex:
    """sum_k f_k * conj(g_k); linear in f, conjugate-linear in g."""
    f = np.asarray(f)
    g = np.asarray(g)
    _check_same_dim(f, g)
    return complex(np.vdot(g, f))


def norm(f: HVec) -> float:
    return float(np.linalg.norm(f))


@dataclass(frozen=True)
class FunctionalJet:
    """Scalar value of a functional plus its two gradient vectors."""

    value: complex
    grad_f: np.ndarray
    grad_fc: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        gf = np.array(self.grad_f, dtype=np.complex128, copy=True)
        gfc = np.array(self.grad_fc, dtype=np.complex128, copy=True)
        if gf.ndim != 1 or gfc.shape != gf.shape:
            raise DimensionMismatch(
                f"gradient shapes differ: {gf.shape} vs {gfc.shape}")
        object.__setattr__(self, "grad_f", _freeze(gf))
        object.__setattr__(self, "grad_fc", _freeze(gfc))

    @property
    def dim(self) -> int:
        return self.grad_f.shape[0]


def functional_constant(k: complex, n: int) -> FunctionalJet:
    z = np.zeros(n, dtype=np.complex128)
    return FunctionalJet(k, z, z)


def ip_functional(kind: str, w: HVec, c: HVec) -> FunctionalJet:
    """Jet of one of the four inner-product functionals evaluated at ``c``.

    kind 'fw'  : f -> inner(f, w)   gradients (conj(w), 0)
    kind 'wf'  : f -> inner(w, f)   gradients (0, w)
    kind 'fcw' : f -> inner(f*, w)  gradients (0, conj(w))
    kind 'wfc' : f -> inner(w, f*)  gradients (w, 0)
    """
    w = np.asarray(w)
    c = np.asarray(c)
    _check_same_dim(w, c)
    zero = np.zeros_like(w)
    if kind == "fw":
        return FunctionalJet(inner(c, w), np.conj(w), zero)
    if kind == "wf":
        return FunctionalJet(inner(w, c), zero, w)
    if kind == "fcw":
        return FunctionalJet(inner(np.conj(c), w), zero, np.conj(w))
    if kind == "wfc":
        return FunctionalJet(inner(w, np.conj(c)), w, zero)
    raise ValueError(f"unknown inner-product kind {kind!r}")


# --------------------------------------------------------------------------
# jet algebra (vector-valued twin of the scalar rules)
# --------------------------------------------------------------------------


def jet_linear_combine(alpha: complex, a: FunctionalJet,
                       beta: complex, b: FunctionalJet) -> FunctionalJet:
    _check_same_dim(a.grad_f, b.grad_f)
    alpha = complex(alpha)
    beta = complex(beta)
    return FunctionalJet(alpha * a.value + beta * b.value,
                         alpha * a.grad_f + beta * b.grad_f,
                         alpha * a.grad_fc + beta * b.grad_fc)


def jet_add(a: FunctionalJet, b: FunctionalJet) -> FunctionalJet:
    _check_same_dim(a.grad_f, b.grad_f)
    return FunctionalJet(a.value + b.value, a.grad_f + b.grad_f,
                         a.grad_fc + b.grad_fc)


def jet_sub(a: FunctionalJet, b: FunctionalJet) -> FunctionalJet:
    _check_same_dim(a.grad_f, b.grad_f)
    return FunctionalJet(a.value - b.value, a.grad_f - b.grad_f,
                         a.grad_fc - b.grad_fc)


def jet_mul(a: FunctionalJet, b: FunctionalJet) -> FunctionalJet:
    _check_same_dim(a.grad_f, b.grad_f)
    return FunctionalJet(a.value * b.value,
                         a.grad_f * b.value + a.value * b.grad_f,
                         a.grad_fc * b.value + a.value * b.grad_fc)


def jet_conj(a: FunctionalJet) -> FunctionalJet:
    return FunctionalJet(a.value.conjugate(),
                         np.conj(a.grad_fc), np.conj(a.grad_f))


def jet_recip(a: FunctionalJet, floor: float = POLE_FLOOR) -> FunctionalJet:
    v = a.value
    if abs(v) <= floor:
        raise PoleError(f"reciprocal at a pole: |value| = {abs(v):.3e}")
    v2 = v * v
    return FunctionalJet(1.0 / v, -a.grad_f / v2, -a.grad_fc / v2)


def jet_div(a: FunctionalJet, b: FunctionalJet,
            floor: float = POLE_FLOOR) -> FunctionalJet:
    _check_same_dim(a.grad_f, b.grad_f)
    v = b.value
    if abs(v) <= floor:
        raise PoleError(f"division by a value at a pole: |value| = {abs(v):.3e}")
    v2 = v * v
    return FunctionalJet(a.value / v,
                         (a.grad_f * v - a.value * b.grad_f) / v2,
                         (a.grad_fc * v - a.value * b.grad_fc) / v2)


def outer_chain(s, a: FunctionalJet) -> FunctionalJet:
    """Jet of S(T(f)) for a scalar outer function S given as an expression
    in z (and conj(z)); its scalar jet is evaluated at the value slot."""
    sj = ex.eval_jet(s, a.value, order=1)
    return FunctionalJet(
        sj.value,
        sj.dz * a.grad_f + sj.dzc * np.conj(a.grad_fc),
        sj.dz * a.grad_fc + sj.dzc * np.conj(a.grad_f),
    )


def squared_distance(w: HVec) -> Functional:
    """Program for f -> ||f - w||^2, assembled from coordinate projections
    inner(f, e_j) and the product-with-conjugate rule."""
    w = hvec(w)
    n = w.shape[0]
    basis = np.eye(n, dtype=np.complex128)

    def program(c: HVec) -> FunctionalJet:
        total = functional_constant(0.0, n)
        for j in range(n):
            r = jet_sub(ip_functional("fw", basis[j], c),
                        functional_constant(w[j], n))
            total = jet_add(total, jet_mul(r, jet_conj(r)))
        return total

    return program


# --------------------------------------------------------------------------
# finite-difference oracle and classification
# --------------------------------------------------------------------------


def fd_gradients(T: Callable[[HVec], complex], c: HVec,
                 step: float = DEFAULT_STEP) -> tuple[HVec, HVec]:
    """Coordinate-wise central differences of T along the real and imaginary
    unit directions; returns the complex-valued pair (grad1, grad2)."""
    if step < MIN_STEP:
        raise StepTooSmall(f"step {step:g} below {MIN_STEP:g}")
    c = np.asarray(c, dtype=np.complex128)
    n = c.shape[0]
    s = float(step)
    g1 = np.empty(n, dtype=np.complex128)
    g2 = np.empty(n, dtype=np.complex128)
    for j in range(n):
        e = np.zeros(n, dtype=np.complex128)
        e[j] = s
        g1[j] = (complex(T(c + e)) - complex(T(c - e))) / (2.0 * s)
        e[j] = 1j * s
        g2[j] = (complex(T(c + e)) - complex(T(c - e))) / (2.0 * s)
    return _freeze(g1), _freeze(g2)


def fd_wirtinger_gradients(T: Callable[[HVec], complex], c: HVec,
                           step: float = DEFAULT_STEP) -> tuple[HVec, HVec]:
    """(W-gradient, CW-gradient) reconstructed from the directional pair."""
    g1, g2 = fd_gradients(T, c, step)
    return _freeze(0.5 * (g1 - 1j * g2)), _freeze(0.5 * (g1 + 1j * g2))


@dataclass(frozen=True)
class FunctionalHolomorphyReport:
    verdict: Verdict
    grad_w: np.ndarray
    grad_cw: np.ndarray

    @property
    def cr_residual(self) -> float:
        return float(np.linalg.norm(self.grad_cw))

    @property
    def conj_cr_residual(self) -> float:
        return float(np.linalg.norm(self.grad_w))


def classify_functional(T: Callable[[HVec], complex], c: HVec,
                        step: float = DEFAULT_STEP,
                        tol: float = DEFAULT_TOL) -> FunctionalHolomorphyReport:
    """Threshold the finite-difference W/CW gradient norms at ``c``."""
    gw, gcw = fd_wirtinger_gradients(T, c, step)
    cr_ok = float(np.linalg.norm(gcw)) < tol
    conj_cr_ok = float(np.linalg.norm(gw)) < tol
    if cr_ok and conj_cr_ok:
        verdict = Verdict.BOTH
    elif cr_ok:
        verdict = Verdict.HOLOMORPHIC
    elif conj_cr_ok:
        verdict = Verdict.CONJUGATE_HOLOMORPHIC
    else:
        verdict = Verdict.NEITHER
    return FunctionalHolomorphyReport(verdict, gw, gcw)


# --------------------------------------------------------------------------
# vector-valued operators
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GradientStack:
    """Row-stacked gradients of a C^nu-valued operator: one (grad_f,
    grad_fc) pair per component."""

    values: np.ndarray     # shape (nu,)
    grads_f: np.ndarray    # shape (nu, n)
    grads_fc: np.ndarray   # shape (nu, n)

    def __len__(self) -> int:
        return self.values.shape[0]


def stack_vector_operator(components: Sequence[FunctionalJet]) -> GradientStack:
    comps = list(components)
    if not comps:
        raise DimensionMismatch("cannot stack zero components")
    n = comps[0].dim
    for j in comps[1:]:
        if j.dim != n:
            raise DimensionMismatch(
                f"components live in different spaces: {j.dim} vs {n}")
    values = np.array([j.value for j in comps], dtype=np.complex128)
    grads_f = np.vstack([j.grad_f for j in comps])
    grads_fc = np.vstack([j.grad_fc for j in comps])
    return GradientStack(_freeze(values), _freeze(grads_f), _freeze(grads_fc))
