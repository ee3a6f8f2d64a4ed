"""Tests for the enumeration oracle."""

import random

import pytest

from tadic.errors import BudgetError
from tadic.pointcount import exp_sum, exp_sum_report, oracle_lfun
from tadic.profile import PrecisionProfile
from tadic.splitting import TowerInput
from tadic.unramified import (
    UnramifiedApprox,
    default_modulus,
    teichmuller_lift,
    unramified_trace,
)
from tadic.xseries import Geometry
from tadic.zp import ZpApprox, one_plus_T_pow, teichmuller_int


def profile(p=2, a=6, b=8, smax=4, dmax=4):
    return PrecisionProfile.create(p, a, b, smax, dmax)


def test_exp_sum_zero_tower():
    prof = profile()
    t = TowerInput(2, Geometry.AFFINE_LINE, {})
    for d in (1, 2, 3):
        s = exp_sum(t, d, prof)
        assert s.vals[0] == 2 ** d
        assert all(v == 0 for v in s.vals[1:])


def test_exp_sum_two_points_by_hand():
    # f = x over F_2: points 0, 1 have traces 0, 1, so S = 2 + T
    prof = profile()
    t = TowerInput(2, Geometry.AFFINE_LINE, {1: 1})
    s = exp_sum(t, 1, prof)
    assert s.residues(prof.a) == (2, 1, 0, 0, 0, 0, 0, 0)


def test_exp_sum_degree_two_by_hand():
    # over F_4 the traces of the four points are 0, 2, -1, -1
    prof = profile()
    t = TowerInput(2, Geometry.AFFINE_LINE, {1: 1})
    s = exp_sum(t, 2, prof)
    assert s.residues(3)[:3] == (4 % 8, 0, 3)


def test_exp_sum_point_counts_mod_T():
    prof = profile(p=3, a=5, b=6)
    t = TowerInput(3, Geometry.TORUS, {1: 1, -1: 2})
    rep = exp_sum_report(t, prof, dmax=3)
    for d in range(1, 4):
        assert rep.sums[d - 1].vals[0] % 3 ** prof.a == (3 ** d - 1) % 3 ** prof.a
        assert rep.point_counts[d - 1] == 3 ** d - 1


def test_degree_one_direct_cross_check():
    # d = 1: the trace is the identity, so the sum can be recomputed with
    # plain Z_p arithmetic on Teichmuller lifts
    prof = profile(p=5, a=5, b=6)
    tower = TowerInput(5, Geometry.AFFINE_LINE, {2: 3, 1: 1})
    got = exp_sum(tower, 1, prof)
    acc = None
    for c in range(5):
        lift = teichmuller_int(c, 5, prof.work)
        value = ZpApprox(5, 0, prof.work)
        for u, cu in tower.f_coeffs.items():
            value = value + teichmuller_int(cu, 5, prof.work) * (lift ** u)
        term = one_plus_T_pow(value, prof)
        acc = term if acc is None else acc + term
    assert got.agrees_with(acc)


def test_galois_pairing_random_points():
    # Frobenius-conjugate points contribute identical summands
    prof = profile(p=3, a=5, b=6, dmax=3)
    tower = TowerInput(3, Geometry.AFFINE_LINE, {2: 1, 1: 2})
    d = 3
    m = default_modulus(3, d)
    rng = random.Random(4)
    for _ in range(5):
        coords = tuple(rng.randrange(3) for _ in range(d))
        x0 = UnramifiedApprox(3, m, coords, prof.work)
        conj = x0 ** 3
        vals = []
        for pt in (x0, conj):
            xhat = teichmuller_lift(pt, prof)
            tr = unramified_trace(tower.evaluate_teichmuller(xhat))
            vals.append(one_plus_T_pow(tr, prof))
        assert vals[0].agrees_with(vals[1])


def test_oracle_lfun_zero_towers():
    prof = profile(p=2, a=6, b=6)
    lf, _ = oracle_lfun(TowerInput(2, Geometry.AFFINE_LINE, {}), prof)
    assert lf.coeff(0).vals[0] == 1
    assert lf.coeff(1).reduced(4).residues(4)[0] == (-2) % 16
    for k in range(2, 5):
        assert lf.coeff(k).reduced(4).is_zero()
    prof3 = profile(p=3, a=5, b=6)
    lf, _ = oracle_lfun(TowerInput(3, Geometry.TORUS, {}), prof3)
    # (1 - 3s)/(1 - s): every coefficient past 0 is -2 as a constant
    for k in range(1, 5):
        assert lf.coeff(k).reduced(3).residues(3)[0] == (-2) % 27
        assert all(v == 0 for v in lf.coeff(k).reduced(3).residues(3)[1:])


def test_oracle_first_coefficient_is_minus_s1():
    prof = profile(p=2, a=6, b=8)
    tower = TowerInput(2, Geometry.AFFINE_LINE, {1: 1})
    lf, rep = oracle_lfun(tower, prof)
    minus_s1 = -rep.sums[0]
    assert lf.coeff(1).agrees_with(minus_s1)


def test_budget_guard():
    prof = PrecisionProfile.create(2, 4, 4, 2, 30, guard=10)
    tower = TowerInput(2, Geometry.AFFINE_LINE, {1: 1})
    with pytest.raises(BudgetError):
        exp_sum(tower, 30, prof)
