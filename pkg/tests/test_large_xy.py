import cmath
import math
import random

import mpmath
import pytest

from pearcey.large_x import eval_large_x
from pearcey.large_xy import (
    build_context,
    coeff_an,
    eval_large_xy,
    large_xy_summands,
    validity_large_xy,
)
from pearcey.reference import oracle_value, relative_error
from pearcey.results import DomainError, RegionError

A7 = complex(
    -0.2989737344555162430359325072262666715918, 1.203519648471714619199436224504910143515
)  # A_7(0.3+0.1i), mpmath taylor at 40 digits


def rel(a, b):
    return abs(a - b) / abs(b)


def taylor_coeffs(g: complex, n: int) -> list[complex]:
    with mpmath.workdps(40):
        gm = mpmath.mpc(g)
        cs = mpmath.taylor(lambda t: mpmath.exp(4j * gm**3 * t - 4j * gm * t**3 - t**4), 0, n)
        return [complex(c) for c in cs]


class TestCoefficients:
    def test_low_orders(self):
        g = 0.7 - 0.2j
        assert coeff_an(0, g) == 1
        assert rel(coeff_an(1, g), 4j * g**3) <= 1e-15
        assert rel(coeff_an(2, g), -8 * g**6) <= 1e-15

    def test_a7_pinned(self):
        assert rel(coeff_an(7, 0.3 + 0.1j), A7) <= 1e-14

    def test_against_taylor_extraction(self):
        rng = random.Random(7)
        for _ in range(10):
            r, t = rng.uniform(0, 1), rng.uniform(-math.pi, math.pi)
            g = r * complex(math.cos(t), math.sin(t))
            want = taylor_coeffs(g, 12)
            for n in range(13):
                got = coeff_an(n, g)
                assert abs(got - want[n]) <= 1e-9 * max(abs(want[n]), 1e-12)

    def test_negative_order(self):
        with pytest.raises(DomainError):
            coeff_an(-1, 0.1)


class TestValidity:
    def test_ordinary_point(self):
        v = validity_large_xy(20, 1)
        assert v and v.reason == "ok"

    def test_on_caustic(self):
        v = validity_large_xy(1.5, 1.5)
        assert not v
        assert v.distance == 0

    def test_negative_real(self):
        v = validity_large_xy(-5, 0)
        assert not v and "3pi/4" in v.reason

    def test_zero_x(self):
        with pytest.raises(DomainError):
            validity_large_xy(0, 1)

    def test_eval_refuses(self):
        with pytest.raises(RegionError):
            eval_large_xy(1.5, 1.5, 2)


class TestEval:
    def test_y_zero_leading_term(self):
        x = 12 + 5j
        want = math.sqrt(math.pi) / (2 * cmath.sqrt(x))
        assert rel(eval_large_xy(x, 0, 1).value, want) <= 1e-15

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_reduces_to_large_x_at_y_zero(self, n):
        x = 15 - 4j
        # odd-m terms vanish at y = 0, so 2n - 1 terms here match n there
        a = eval_large_xy(x, 0, 2 * n - 1).value
        b = eval_large_x(x, 0, n).value
        assert rel(a, b) <= 1e-12

    def test_table_value_n1(self):
        err = relative_error(eval_large_xy(10, 3j, 1).value, 10, 3j)
        assert err == pytest.approx(0.006716, rel=1e-3)

    def test_table_value_200i(self):
        err = relative_error(eval_large_xy(200j, 5, 5).value, 200j, 5)
        assert err == pytest.approx(4.274e-13, rel=0.03)

    def test_closed_form_root_matches_shifted(self):
        for x, y in [(10, 3j), (50j, 14 + 14j), (-7.65 + 18.5j, 10)]:
            ctx = build_context(complex(x), complex(y))
            root = cmath.sqrt(2 * x * x / (2 * x**3 - 3 * y * y))
            assert rel(root, 1 / cmath.sqrt(ctx.shifted)) <= 1e-14

    def test_first_omitted_term_estimate(self):
        x, y = 100, 20j
        ctx = build_context(complex(x), complex(y))
        s = large_xy_summands(ctx, 4)
        res = eval_large_xy(x, y, 3)
        assert res.error_estimate == pytest.approx(abs(ctx.prefactor * s[3]), rel=1e-6)

    def test_symmetry(self):
        assert eval_large_xy(50j, 3 + 4j, 4).value == eval_large_xy(50j, -3 - 4j, 4).value


@pytest.mark.parametrize("n", [1, 2])
def test_remainder_order(n):
    ratio = 0.2 + 0.1j  # y / x
    scaled = []
    for r in (10, 100, 1000):
        x = r * complex(math.cos(0.5), math.sin(0.5))
        y = ratio * x
        ctx = build_context(x, y)
        exact = complex(oracle_value(x, y, 50))
        err = abs(exact - eval_large_xy(x, y, n).value) / abs(exact)
        scaled.append(err * abs(ctx.shifted) ** n)
    # bounded, not necessarily constant: A_2(gamma) = -8 gamma^6 is small here
    assert max(scaled) <= 2 * scaled[0]
