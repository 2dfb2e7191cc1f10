"""Forward-mode first-order jets for derivatives with respect to z and z*.

A jet carries ``(value, dz, dzc)`` where ``dz`` is the derivative taken with
z* held formally constant and ``dzc`` the derivative with z held constant:

    dz  = (df/dx - i*df/dy) / 2
    dzc = (df/dx + i*df/dy) / 2

Everything here is a pure function of its inputs; jets are immutable and can
be shared freely between threads.  Jets do not remember their base point:
combining jets seeded at different points is a caller error that is not
detected.

The non-holomorphic entries of the primitive table (conj, re, im, abs, abs2,
arg) are the single source of conjugate mass in the whole engine; they are
cross-checked against the finite-difference oracle in the test suite before
anything else trusts them.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DomainError, PoleError

#: |value| at or below which reciprocals/quotients raise PoleError.
POLE_FLOOR = 1e-300


def _require_finite(w: complex, what: str = "value") -> complex:
    w = complex(w)
    if not (cmath.isfinite(w)):
        raise DomainError(f"non-finite {what}: {w!r}")
    return w


@dataclass(frozen=True, slots=True)
class WirtingerJet:
    """Value plus the (d/dz, d/dz*) pair at one point."""

    value: complex
    dz: complex
    dzc: complex


def seed_variable(c: complex) -> WirtingerJet:
    """Jet of the identity function at ``c``: (c, 1, 0)."""
    return WirtingerJet(_require_finite(c, "seed point"), 1.0 + 0.0j, 0.0 + 0.0j)


def constant(k: complex) -> WirtingerJet:
    """Jet of the constant function ``k``: (k, 0, 0)."""
    return WirtingerJet(_require_finite(k, "constant"), 0.0 + 0.0j, 0.0 + 0.0j)


def linear_combine(alpha: complex, a: WirtingerJet,
                   beta: complex, b: WirtingerJet) -> WirtingerJet:
    """Jet of ``alpha*a + beta*b`` (operands at the same base point)."""
    alpha = complex(alpha)
    beta = complex(beta)
    return WirtingerJet(
        alpha * a.value + beta * b.value,
        alpha * a.dz + beta * b.dz,
        alpha * a.dzc + beta * b.dzc,
    )


def add(a: WirtingerJet, b: WirtingerJet) -> WirtingerJet:
    return WirtingerJet(a.value + b.value, a.dz + b.dz, a.dzc + b.dzc)


def sub(a: WirtingerJet, b: WirtingerJet) -> WirtingerJet:
    return WirtingerJet(a.value - b.value, a.dz - b.dz, a.dzc - b.dzc)


def neg(a: WirtingerJet) -> WirtingerJet:
    return WirtingerJet(-a.value, -a.dz, -a.dzc)


def mul(a: WirtingerJet, b: WirtingerJet) -> WirtingerJet:
    """Product rule, applied independently in the dz and dzc slots."""
    return WirtingerJet(
        a.value * b.value,
        a.dz * b.value + a.value * b.dz,
        a.dzc * b.value + a.value * b.dzc,
    )


def conj(a: WirtingerJet) -> WirtingerJet:
    """Jet of the conjugated function: swaps and conjugates the two slots."""
    return WirtingerJet(
        a.value.conjugate(),
        a.dzc.conjugate(),
        a.dz.conjugate(),
    )


def recip(a: WirtingerJet, floor: float = POLE_FLOOR) -> WirtingerJet:
    """Jet of ``1/a``; raises PoleError when |a| is at or below ``floor``."""
    v = a.value
    if abs(v) <= floor:
        raise PoleError(f"reciprocal at a pole: |value| = {abs(v):.3e}")
    v2 = v * v
    return WirtingerJet(1.0 / v, -a.dz / v2, -a.dzc / v2)


def div(a: WirtingerJet, b: WirtingerJet, floor: float = POLE_FLOOR) -> WirtingerJet:
    """Quotient rule in both derivative slots."""
    v = b.value
    if abs(v) <= floor:
        raise PoleError(f"division by a value at a pole: |value| = {abs(v):.3e}")
    v2 = v * v
    return WirtingerJet(
        a.value / v,
        (a.dz * v - a.value * b.dz) / v2,
        (a.dzc * v - a.value * b.dzc) / v2,
    )


def power_int(a: WirtingerJet, k: int, floor: float = POLE_FLOOR) -> WirtingerJet:
    """Integer power ``a**k`` (holomorphic; k may be negative away from 0)."""
    v = a.value
    if k == 0:
        return WirtingerJet(v ** 0, 0.0 + 0.0j, 0.0 + 0.0j)
    if k < 0 and abs(v) <= floor:
        raise PoleError(f"negative power at a pole: |value| = {abs(v):.3e}")
    g = k * v ** (k - 1)
    return WirtingerJet(v ** k, g * a.dz, g * a.dzc)


# --------------------------------------------------------------------------
# primitive table
# --------------------------------------------------------------------------

def _check_nonzero(v: complex, name: str) -> None:
    if v == 0:
        raise DomainError(f"{name} not defined at 0")


@dataclass(frozen=True)
class Primitive:
    """One entry of the primitive table.

    ``partials(v)`` returns the pair (g_z, g_zc) at the point ``v`` and
    ``second_partials(v)`` the quadruple (g_zz, g_zzc, g_zcz, g_zczc), or is
    None when the primitive is not supported at second order.
    ``zero_excluded_from_order`` is the lowest derivative order at which the
    point 0 falls outside the domain (None: 0 is always allowed).
    """

    name: str
    holomorphic: bool
    value: Callable[[complex], complex]
    partials: Callable[[complex], tuple[complex, complex]]
    second_partials: Optional[Callable[[complex], tuple[complex, complex, complex, complex]]]
    zero_excluded_from_order: Optional[int] = None  # None: 0 is fine at all orders

    def check_domain(self, v: complex, order: int) -> None:
        if self.zero_excluded_from_order is not None and order >= self.zero_excluded_from_order:
            _check_nonzero(v, self.name)


def _abs_partials(v: complex) -> tuple[complex, complex]:
    m = abs(v)
    return v.conjugate() / (2.0 * m), v / (2.0 * m)


def _arg_partials(v: complex) -> tuple[complex, complex]:
    return -0.5j / v, 0.5j / v.conjugate()


def _arg_second(v: complex) -> tuple[complex, complex, complex, complex]:
    vc = v.conjugate()
    return 0.5j / (v * v), 0.0j, 0.0j, -0.5j / (vc * vc)


def _sqrt_partials(v: complex) -> tuple[complex, complex]:
    return 0.5 / cmath.sqrt(v), 0.0j


def _sqrt_second(v: complex) -> tuple[complex, complex, complex, complex]:
    s = cmath.sqrt(v)
    return -0.25 / (s * s * s), 0.0j, 0.0j, 0.0j


PRIMITIVES: dict[str, Primitive] = {
    "exp": Primitive(
        "exp", True, cmath.exp,
        lambda v: (cmath.exp(v), 0.0j),
        lambda v: (cmath.exp(v), 0.0j, 0.0j, 0.0j),
    ),
    "log": Primitive(
        "log", True, cmath.log,
        lambda v: (1.0 / v, 0.0j),
        lambda v: (-1.0 / (v * v), 0.0j, 0.0j, 0.0j),
        zero_excluded_from_order=0,
    ),
    "sin": Primitive(
        "sin", True, cmath.sin,
        lambda v: (cmath.cos(v), 0.0j),
        lambda v: (-cmath.sin(v), 0.0j, 0.0j, 0.0j),
    ),
    "cos": Primitive(
        "cos", True, cmath.cos,
        lambda v: (-cmath.sin(v), 0.0j),
        lambda v: (-cmath.cos(v), 0.0j, 0.0j, 0.0j),
    ),
    "sqrt": Primitive(
        "sqrt", True, cmath.sqrt,
        _sqrt_partials,
        _sqrt_second,
        zero_excluded_from_order=1,
    ),
    "conj": Primitive(
        "conj", False, lambda v: v.conjugate(),
        lambda v: (0.0j, 1.0 + 0.0j),
        lambda v: (0.0j, 0.0j, 0.0j, 0.0j),
    ),
    "re": Primitive(
        "re", False, lambda v: complex(v.real, 0.0),
        lambda v: (0.5 + 0.0j, 0.5 + 0.0j),
        lambda v: (0.0j, 0.0j, 0.0j, 0.0j),
    ),
    "im": Primitive(
        "im", False, lambda v: complex(v.imag, 0.0),
        lambda v: (-0.5j, 0.5j),
        lambda v: (0.0j, 0.0j, 0.0j, 0.0j),
    ),
    "abs": Primitive(
        "abs", False, lambda v: complex(abs(v), 0.0),
        _abs_partials,
        None,  # second-order table intentionally absent
        zero_excluded_from_order=1,
    ),
    "abs2": Primitive(
        "abs2", False, lambda v: complex(v.real * v.real + v.imag * v.imag, 0.0),
        lambda v: (v.conjugate(), v),
        lambda v: (0.0j, 1.0 + 0.0j, 1.0 + 0.0j, 0.0j),
    ),
    "arg": Primitive(
        "arg", False, lambda v: complex(cmath.phase(v), 0.0),
        _arg_partials,
        _arg_second,
        zero_excluded_from_order=0,
    ),
}


def apply_primitive(name: str, a: WirtingerJet) -> WirtingerJet:
    """Chain rule for one primitive applied on top of a jet.

    The conjugate cross terms use (df*/dz) = (df/dz*)* and its mirror, so a
    single (g_z, g_zc) pair per primitive suffices.
    """
    p = PRIMITIVES[name]
    v = a.value
    p.check_domain(v, order=1)
    try:
        value = p.value(v)
        gz, gzc = p.partials(v)
    except (ValueError, OverflowError) as exc:
        raise DomainError(f"{name}: {exc}") from None
    return WirtingerJet(
        value,
        gz * a.dz + gzc * a.dzc.conjugate(),
        gz * a.dzc + gzc * a.dz.conjugate(),
    )
