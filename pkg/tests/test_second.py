import cmath
import random

import pytest

from conftest import (CORPUS_SECOND_ORDER, REAL_COSTS, fd_second_partials,
                      rel_err, sample_points)
from wirtcalc import second as so
from wirtcalc.errors import PoleError, UnsupportedPrimitive
from wirtcalc.expr import eval_jet, parse
from wirtcalc.second import (HessianBlock, hessian_is_real_consistent,
                             propagate_second_order, second_order_taylor)


def random_jet2(rng):
    vals = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(7)]
    return so.SecondOrderJet(*vals)


def test_quadratic_golden():
    for c in sample_points(3, 5):
        j = propagate_second_order("z^2", c)
        assert j.dzz == 2 + 0j
        assert j.dzzc == 0 and j.dzcz == 0 and j.dzczc == 0


def test_modulus_squared_golden():
    for c in sample_points(5, 5):
        j = propagate_second_order("z*conj(z)", c)
        assert j.dzzc == 1 + 0j and j.dzcz == 1 + 0j
        assert j.dzz == 0 and j.dzczc == 0


def test_conjugate_quadratic_golden():
    for c in sample_points(7, 5):
        j = propagate_second_order("conj(z)^2", c)
        assert j.dzczc == 2 + 0j
        assert j.dzz == 0 and j.dzzc == 0 and j.dzcz == 0


@pytest.mark.parametrize("expr", CORPUS_SECOND_ORDER)
def test_first_order_slice_is_bitwise_identical(expr):
    for c in sample_points(11, 10):
        j2 = eval_jet(expr, c, order=2)
        j1 = eval_jet(expr, c, order=1)
        assert j2.first_order() == j1


@pytest.mark.parametrize("expr", CORPUS_SECOND_ORDER)
def test_second_partials_against_second_differences(expr):
    for c in sample_points(13, 8):
        j = eval_jet(expr, c, order=2)
        dzz, dzzc, dzczc = fd_second_partials(expr, c)
        assert rel_err(j.dzz, dzz) < 1e-4
        assert rel_err(j.dzzc, dzzc) < 1e-4
        assert rel_err(j.dzcz, dzzc) < 1e-4
        assert rel_err(j.dzczc, dzczc) < 1e-4


@pytest.mark.parametrize("expr", CORPUS_SECOND_ORDER)
def test_mixed_partial_symmetry(expr):
    for c in sample_points(17, 10):
        j = eval_jet(expr, c, order=2)
        assert abs(j.dzzc - j.dzcz) <= 1e-10 * (1 + abs(j.dzzc))


def test_abs_is_rejected_at_second_order():
    with pytest.raises(UnsupportedPrimitive):
        propagate_second_order("abs(z)", 1 + 1j)
    with pytest.raises(UnsupportedPrimitive):
        so.apply_primitive2("abs", so.seed_variable2(1 + 1j))


def test_pole_propagates():
    with pytest.raises(PoleError):
        propagate_second_order("1/z", 0)


def test_taylor_exact_on_quadratic():
    j = propagate_second_order("z^2", 0)
    h = 1 + 1j
    assert second_order_taylor(j, h) == (1 + 1j) ** 2


def test_taylor_exact_on_modulus_squared(rng):
    j = propagate_second_order("z*conj(z)", 0)
    for _ in range(10):
        h = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        model = second_order_taylor(j, h)
        assert abs(model - abs(h) ** 2) < 1e-14 * (1 + abs(h) ** 2)


def test_taylor_cubic_remainder_for_exp():
    j = propagate_second_order("exp(z)", 0)
    model = second_order_taylor(j, 0.01)
    assert abs(model - cmath.exp(0.01)) <= 2e-7


def test_second_order_remainder_decays_cubically():
    rng = random.Random(31)
    failures = 0
    trials = 0
    for expr in CORPUS_SECOND_ORDER:
        for c in sample_points(19, 3):
            j = eval_jet(expr, c, order=2)
            theta = rng.uniform(0, 2 * cmath.pi)
            e = cmath.exp(1j * theta)
            f0 = eval_jet(expr, c, order=0)

            def ratio(t):
                h = t * e
                return abs(eval_jet(expr, c + h, order=0)
                           - second_order_taylor(j, h)) / t ** 2

            q1, q2 = ratio(1e-2), ratio(1e-3)
            trials += 1
            # the absolute floor absorbs rounding noise on exactly-quadratic
            # entries, whose true remainder is zero
            if q2 > 0.125 * q1 + 1e-9 * (1 + abs(f0)):
                failures += 1
    assert failures <= 0.05 * trials


@pytest.mark.parametrize("expr", REAL_COSTS)
def test_hessian_block_real_structure(expr):
    e = parse(expr)
    for c in sample_points(23, 50):
        j = eval_jet(e, c, order=2)
        block = HessianBlock.from_jet(j)
        assert hessian_is_real_consistent(block)
        scale = 1 + max(abs(j.dzz), abs(j.dzczc))
        assert abs(j.dzzc.imag) <= 1e-10 * scale
        assert abs(j.dzz - j.dzczc.conjugate()) <= 1e-10 * scale
        assert abs(j.dz.conjugate() - j.dzc) <= 1e-12 * (1 + abs(j.dz))


def test_hessian_block_matrix_layout():
    j = propagate_second_order("z*conj(z)", 0.5 + 0.5j)
    block = HessianBlock.from_jet(j)
    assert block.matrix == ((j.dzz, j.dzzc), (j.dzcz, j.dzczc))


def test_conj2_involution(rng):
    for _ in range(30):
        j = random_jet2(rng)
        assert so.conj2(so.conj2(j)) == j


def test_div2_consistent_with_mul_recip(rng):
    for _ in range(30):
        a, b = random_jet2(rng), random_jet2(rng)
        if abs(b.value) < 0.1:
            continue
        d = so.div2(a, b)
        m = so.mul2(a, so.recip2(b))
        for slot in ("value", "dz", "dzc", "dzz", "dzzc", "dzcz", "dzczc"):
            x, y = getattr(d, slot), getattr(m, slot)
            assert abs(x - y) < 1e-10 * (1 + abs(y))


def test_power2_matches_repeated_multiplication(rng):
    for _ in range(20):
        j = random_jet2(rng)
        p = so.power_int2(j, 3)
        m = so.mul2(so.mul2(j, j), j)
        for slot in ("value", "dz", "dzc", "dzz", "dzzc", "dzcz", "dzczc"):
            x, y = getattr(p, slot), getattr(m, slot)
            assert abs(x - y) < 1e-10 * (1 + abs(y))
