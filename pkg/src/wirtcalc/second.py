"""Second-order jets: the four second partials in z and z* on top of a jet.

A ``SecondOrderJet`` stores the six derivative slots

    dz, dzc, dzz (d2/dz2), dzzc (d2/dz dz*), dzcz (d2/dz* dz), dzczc (d2/dz*2)

as a flat record.  Both mixed slots are kept: for twice-differentiable
inputs they agree and the gap is a free smoothness diagnostic.

The rules below are the first-order rules differentiated once more.  The
``abs`` primitive is rejected here (UnsupportedPrimitive): it is smooth away
from 0 but its second-order table is deliberately left out to keep this
module small enough to verify line by line against second differences.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, PoleError, UnsupportedPrimitive
from .forward import POLE_FLOOR, PRIMITIVES, WirtingerJet, _require_finite


@dataclass(frozen=True, slots=True)
class SecondOrderJet:
    value: complex
    dz: complex
    dzc: complex
    dzz: complex
    dzzc: complex
    dzcz: complex
    dzczc: complex

    def first_order(self) -> WirtingerJet:
        return WirtingerJet(self.value, self.dz, self.dzc)

    @property
    def mixed_symmetry_gap(self) -> float:
        """|dzzc - dzcz|; ~0 for twice-differentiable inputs."""
        return abs(self.dzzc - self.dzcz)


@dataclass(frozen=True, slots=True)
class HessianBlock:
    """Gradient pair plus the 2x2 matrix of second partials at a point."""

    dz: complex
    dzc: complex
    dzz: complex
    dzzc: complex
    dzcz: complex
    dzczc: complex

    @classmethod
    def from_jet(cls, j: SecondOrderJet) -> "HessianBlock":
        return cls(j.dz, j.dzc, j.dzz, j.dzzc, j.dzcz, j.dzczc)

    @property
    def matrix(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return ((self.dzz, self.dzzc), (self.dzcz, self.dzczc))


_ZERO = 0.0 + 0.0j


def seed_variable2(c: complex) -> SecondOrderJet:
    return SecondOrderJet(_require_finite(c, "seed point"), 1.0 + 0.0j,
                          _ZERO, _ZERO, _ZERO, _ZERO, _ZERO)


def constant2(k: complex) -> SecondOrderJet:
    return SecondOrderJet(_require_finite(k, "constant"), _ZERO,
                          _ZERO, _ZERO, _ZERO, _ZERO, _ZERO)


def add2(a: SecondOrderJet, b: SecondOrderJet) -> SecondOrderJet:
    return SecondOrderJet(a.value + b.value, a.dz + b.dz, a.dzc + b.dzc,
                          a.dzz + b.dzz, a.dzzc + b.dzzc,
                          a.dzcz + b.dzcz, a.dzczc + b.dzczc)


def sub2(a: SecondOrderJet, b: SecondOrderJet) -> SecondOrderJet:
    return SecondOrderJet(a.value - b.value, a.dz - b.dz, a.dzc - b.dzc,
                          a.dzz - b.dzz, a.dzzc - b.dzzc,
                          a.dzcz - b.dzcz, a.dzczc - b.dzczc)


def neg2(a: SecondOrderJet) -> SecondOrderJet:
    return SecondOrderJet(-a.value, -a.dz, -a.dzc,
                          -a.dzz, -a.dzzc, -a.dzcz, -a.dzczc)


def linear_combine2(alpha: complex, a: SecondOrderJet,
                    beta: complex, b: SecondOrderJet) -> SecondOrderJet:
    alpha = complex(alpha)
    beta = complex(beta)
    return SecondOrderJet(
        alpha * a.value + beta * b.value,
        alpha * a.dz + beta * b.dz,
        alpha * a.dzc + beta * b.dzc,
        alpha * a.dzz + beta * b.dzz,
        alpha * a.dzzc + beta * b.dzzc,
        alpha * a.dzcz + beta * b.dzcz,
        alpha * a.dzczc + beta * b.dzczc,
    )


def mul2(a: SecondOrderJet, b: SecondOrderJet) -> SecondOrderJet:
    av, bv = a.value, b.value
    return SecondOrderJet(
        av * bv,
        a.dz * bv + av * b.dz,
        a.dzc * bv + av * b.dzc,
        a.dzz * bv + 2.0 * a.dz * b.dz + av * b.dzz,
        a.dzzc * bv + a.dz * b.dzc + a.dzc * b.dz + av * b.dzzc,
        a.dzcz * bv + a.dzc * b.dz + a.dz * b.dzc + av * b.dzcz,
        a.dzczc * bv + 2.0 * a.dzc * b.dzc + av * b.dzczc,
    )


def conj2(a: SecondOrderJet) -> SecondOrderJet:
    """Conjugation swaps dz<->dzc and dzz<->dzczc, mirrors the mixed slots."""
    return SecondOrderJet(
        a.value.conjugate(),
        a.dzc.conjugate(),
        a.dz.conjugate(),
        a.dzczc.conjugate(),
        a.dzcz.conjugate(),
        a.dzzc.conjugate(),
        a.dzz.conjugate(),
    )


def recip2(a: SecondOrderJet, floor: float = POLE_FLOOR) -> SecondOrderJet:
    v = a.value
    if abs(v) <= floor:
        raise PoleError(f"reciprocal at a pole: |value| = {abs(v):.3e}")
    v2 = v * v
    v3 = v2 * v
    return SecondOrderJet(
        1.0 / v,
        -a.dz / v2,
        -a.dzc / v2,
        -a.dzz / v2 + 2.0 * a.dz * a.dz / v3,
        -a.dzzc / v2 + 2.0 * a.dz * a.dzc / v3,
        -a.dzcz / v2 + 2.0 * a.dzc * a.dz / v3,
        -a.dzczc / v2 + 2.0 * a.dzc * a.dzc / v3,
    )


def div2(a: SecondOrderJet, b: SecondOrderJet,
         floor: float = POLE_FLOOR) -> SecondOrderJet:
    v = b.value
    if abs(v) <= floor:
        raise PoleError(f"division by a value at a pole: |value| = {abs(v):.3e}")
    av = a.value
    v2 = v * v
    v3 = v2 * v
    nz = a.dz * v - av * b.dz     # numerator of d(a/b)/dz
    nzc = a.dzc * v - av * b.dzc
    return SecondOrderJet(
        av / v,
        nz / v2,
        nzc / v2,
        (a.dzz * v - av * b.dzz) / v2 - 2.0 * b.dz * nz / v3,
        (a.dzzc * v + a.dz * b.dzc - a.dzc * b.dz - av * b.dzzc) / v2
        - 2.0 * b.dzc * nz / v3,
        (a.dzcz * v + a.dzc * b.dz - a.dz * b.dzc - av * b.dzcz) / v2
        - 2.0 * b.dz * nzc / v3,
        (a.dzczc * v - av * b.dzczc) / v2 - 2.0 * b.dzc * nzc / v3,
    )


def power_int2(a: SecondOrderJet, k: int,
               floor: float = POLE_FLOOR) -> SecondOrderJet:
    v = a.value
    if k == 0:
        return SecondOrderJet(v ** 0, _ZERO, _ZERO, _ZERO, _ZERO, _ZERO, _ZERO)
    if k < 0 and abs(v) <= floor:
        raise PoleError(f"negative power at a pole: |value| = {abs(v):.3e}")
    g = k * v ** (k - 1)
    gg = _ZERO if k == 1 else k * (k - 1) * v ** (k - 2)
    return SecondOrderJet(
        v ** k,
        g * a.dz,
        g * a.dzc,
        gg * a.dz * a.dz + g * a.dzz,
        gg * a.dz * a.dzc + g * a.dzzc,
        gg * a.dzc * a.dz + g * a.dzcz,
        gg * a.dzc * a.dzc + g * a.dzczc,
    )


def apply_primitive2(name: str, a: SecondOrderJet) -> SecondOrderJet:
    """Chain rule carried to second order for one primitive."""
    p = PRIMITIVES[name]
    if p.second_partials is None:
        raise UnsupportedPrimitive(f"{name} has no second-order rule")
    v = a.value
    p.check_domain(v, order=2)
    try:
        value = p.value(v)
        gz, gzc = p.partials(v)
        gzz, gzzc, gzcz, gzczc = p.second_partials(v)
    except (ValueError, OverflowError) as exc:
        raise DomainError(f"{name}: {exc}") from None

    A, B = a.dz, a.dzc
    Ac, Bc = A.conjugate(), B.conjugate()

    # z / z* derivatives of g_z(f) and g_zc(f) along the inner function
    p_z = gzz * A + gzzc * Bc
    p_zc = gzz * B + gzzc * Ac
    q_z = gzcz * A + gzczc * Bc
    q_zc = gzcz * B + gzczc * Ac

    return SecondOrderJet(
        value,
        gz * A + gzc * Bc,
        gz * B + gzc * Ac,
        p_z * A + gz * a.dzz + q_z * Bc + gzc * a.dzczc.conjugate(),
        p_zc * A + gz * a.dzzc + q_zc * Bc + gzc * a.dzcz.conjugate(),
        p_z * B + gz * a.dzcz + q_z * Ac + gzc * a.dzzc.conjugate(),
        p_zc * B + gz * a.dzczc + q_zc * Ac + gzc * a.dzz.conjugate(),
    )


def propagate_second_order(expr, c: complex) -> SecondOrderJet:
    """Evaluate an expression into a second-order jet at ``c``."""
    from .expr import eval_jet  # local import: expr builds on this module

    return eval_jet(expr, c, order=2)


def second_order_taylor(jet: SecondOrderJet, h: complex) -> complex:
    """Quadratic model value at displacement ``h`` from the jet's base point:

        f(c) + dz*h + dzc*h* + (dzz*h^2 + (dzzc+dzcz)*h*h* + dzczc*h*^2) / 2
    """
    h = complex(h)
    hc = h.conjugate()
    quad = (jet.dzz * h * h + (jet.dzzc + jet.dzcz) * h * hc
            + jet.dzczc * hc * hc)
    return jet.value + jet.dz * h + jet.dzc * hc + 0.5 * quad


def hessian_is_real_consistent(block: HessianBlock,
                               tol: float = 1e-10) -> bool:
    """Checks the structure a real-valued function must produce: dzzc real,
    dzz the conjugate of dzczc, and (dz)* = dzc."""
    scale = 1.0 + max(abs(block.dzz), abs(block.dzzc), abs(block.dzcz),
                      abs(block.dzczc))
    return (abs(block.dzzc.imag) <= tol * scale
            and abs(block.dzz - block.dzczc.conjugate()) <= tol * scale
            and abs(block.dz.conjugate() - block.dzc) <= tol * (1.0 + abs(block.dz)))
