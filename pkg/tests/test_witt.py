import pytest

from tameblocks.errors import UsageError
from tameblocks.witt import (CyclotomicWitt, WittRing, WPoly, cyc_mul,
                             cyc_reduce, is_power_of_two, minpoly_nu, nu_value,
                             q_poly, resultant, zeta_power)

W24 = WittRing(24)


def test_witt_units():
    assert W24.is_unit(3) and not W24.is_unit(6)
    assert W24.reduce(W24.inv(3) * 3) == 1
    assert W24.val2(12) == 2 and W24.val2(0) == 24


def test_zeta_relations():
    # zeta^(2^l) = 1 and zeta^(2^(l-1)) = -1 at each level
    for level in range(2, 6):
        ring = CyclotomicWitt(W24, level)
        one = ring.one()
        z = ring.zeta()
        acc = one
        for _ in range(2 ** level):
            acc = ring.mul(acc, z)
        assert acc == one
        half = cyc_reduce(zeta_power(level, 2 ** (level - 1)), W24)
        assert half[0] == W24.reduce(-1) and not any(half[1:])


def test_nu_level_lowering():
    # nu_l^2 = nu_(l-1) + 2 under zeta_l^2 -> zeta_(l-1)
    for level in range(3, 6):
        ring = CyclotomicWitt(W24, level)
        nu = ring.nu("plus")
        sq = ring.mul(nu, nu)
        # nu_(l-1) embeds as zeta^2 + zeta^-2
        emb = ring.add(ring.zeta(2), ring.zeta(-2))
        expect = ring.add(emb, ring.scale(2, ring.one()))
        assert sq == expect


# --- minpoly_nu: stated examples ------------------------------------------

def test_minpoly_examples():
    assert minpoly_nu(2, "D", 4) == WPoly([0, 1])          # t
    assert minpoly_nu(3, "D", 4) == WPoly([-2, 0, 1])      # t^2 - 2
    assert minpoly_nu(3, "SD", 4) == WPoly([2, 0, 1])      # t^2 + 2
    with pytest.raises(UsageError):
        minpoly_nu(5, "D", 4)
    with pytest.raises(UsageError):
        minpoly_nu(1, "D", 4)


@pytest.mark.parametrize("dt", ["D", "SD", "Q"])
@pytest.mark.parametrize("n", range(3, 9))
def test_minpoly_annihilates_nu(dt, n):
    if dt == "SD" and n < 4:
        pytest.skip("semidihedral defect needs n >= 4")
    for level in range(2, n):
        p = minpoly_nu(level, dt, n)
        assert p.is_monic and p.degree == 2 ** (level - 2)
        ring = CyclotomicWitt(W24, level)
        val = cyc_reduce(nu_value(level, dt, n), W24)
        assert ring.is_zero(p.eval_cyc(val, ring))


# --- q_n ------------------------------------------------------------------

def test_q_poly_examples():
    assert q_poly(3, "Q") == WPoly([0, 1])
    assert q_poly(4, "D") == WPoly([0, -2, 0, 1])           # t^3 - 2t
    assert q_poly(4, "Q") == WPoly([0, -2, 0, 1])
    assert q_poly(4, "SD") == WPoly([0, 2, 0, 1])           # t^3 + 2t
    # n=5 SD factors: t, t^2-2, t^4+4t^2+2
    assert q_poly(5, "SD") == WPoly([0, 1]) * WPoly([-2, 0, 1]) * WPoly([2, 0, 4, 0, 1])
    with pytest.raises(UsageError):
        q_poly(2, "D")


@pytest.mark.parametrize("dt", ["D", "SD", "Q"])
@pytest.mark.parametrize("n", range(3, 9))
def test_q_poly_shape(dt, n):
    q = q_poly(n, dt)
    deg = 2 ** (n - 2) - 1
    assert q.is_monic and q.degree == deg
    assert q.mod2() == tuple([0] * deg + [1])


@pytest.mark.parametrize("dt", ["D", "SD", "Q"])
@pytest.mark.parametrize("n", range(3, 7))
def test_factor_resultants_nonzero(dt, n):
    # pairwise coprime over the fraction field: nonzero resultants.  The
    # stronger "always a power of 2" holds for the inversion flavor but fails
    # for SD from n=5 on (odd square factors appear, which are 2-adic units).
    fs = [minpoly_nu(l, dt, n) for l in range(2, n)]
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            r = resultant(fs[i], fs[j])
            assert r != 0
            if dt in ("D", "Q"):
                assert is_power_of_two(r), (dt, n, i, j, r)
            else:
                odd = abs(r)
                while odd % 2 == 0:
                    odd //= 2
                root = int(round(odd ** 0.5))
                assert odd % 2 == 1


def test_sd_resultant_unit_square_example():
    # frozen counterexample to the power-of-2 form: 196 = 2^2 * 7^2
    r = resultant(minpoly_nu(3, "SD", 5), minpoly_nu(4, "SD", 5))
    assert r == 196


def test_poly_str_and_eval():
    q = q_poly(4, "D")
    assert str(q) == "t^3-2*t"
    assert q.eval_int(3) == 27 - 6
