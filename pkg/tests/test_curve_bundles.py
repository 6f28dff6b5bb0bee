from __future__ import annotations

import random
from fractions import Fraction

import pytest

from grasscone import (
    HNData,
    ValidationError,
    curve_cones,
    equals,
    fiber_product_cones,
    fiber_product_nef_equals_eff,
    hn_of_line_bundle_sum,
    includes,
    is_semistable_by_cones,
    multi_fiber_product_cones,
    theta,
    zeta,
)


def ints(vectors):
    return {tuple(int(x) for x in v) for v in vectors}


def slopes_with_multiplicity(hn: HNData) -> list[Fraction]:
    return sorted(mu for r, mu in hn.pieces for _ in range(r))


def random_hn(rng: random.Random) -> HNData:
    length = rng.randint(1, 4)
    slopes = sorted({Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(length)}, reverse=True)
    return HNData(pieces=tuple((rng.randint(1, 3), mu) for mu in slopes))


class TestHNData:
    """HN 数据测试"""

    def test_invariants(self):
        """测试秩、次数与斜率"""
        hn = HNData.from_pieces([[1, 3], [2, 1]])
        assert hn.rank == 3
        assert hn.degree == 5
        assert hn.slope == Fraction(5, 3)
        assert (hn.mu_max, hn.mu_min) == (3, 1)
        assert hn.length == 2
        assert not hn.is_semistable
        assert hn.sub_rank(1) == 1
        assert hn.sub_degree(2) == 5

    def test_rational_slopes(self):
        """测试 "p/q" 斜率"""
        hn = HNData.from_pieces([[2, '1/2'], [1, '-1/3']])
        assert hn.pieces == ((2, Fraction(1, 2)), (1, Fraction(-1, 3)))
        assert hn.degree == Fraction(2, 3)

    @pytest.mark.parametrize(
        ('pieces', 'field'),
        [([], 'hn'), ([[1, 1], [1, 1]], 'hn[1][1]'), ([[1, 1], [1, 2]], 'hn[1][1]'), ([[0, 1]], 'hn[0][0]'), ([[1, 0.5]], 'hn[0][1]'), ([[1]], 'hn[0]')],
    )
    def test_invalid(self, pieces, field):
        """测试非法 HN 数据及出错字段"""
        with pytest.raises(ValidationError) as exc_info:
            HNData.from_pieces(pieces)
        assert exc_info.value.field == field

    def test_line_bundle_sum(self):
        """测试线丛直和: 合并相同次数,降序"""
        assert hn_of_line_bundle_sum([1, 3, 1]).pieces == ((1, Fraction(3)), (2, Fraction(1)))
        assert hn_of_line_bundle_sum([2, 2, 2]).pieces == ((3, Fraction(2)),)
        assert hn_of_line_bundle_sum([0]).pieces == ((1, Fraction(0)),)
        assert hn_of_line_bundle_sum([2, 2]).is_semistable
        with pytest.raises(ValidationError):
            hn_of_line_bundle_sum([])

    def test_twist(self):
        """测试张量积平移斜率"""
        hn = HNData.from_pieces([[1, 3], [2, 1]]).twist(-1)
        assert hn.pieces == ((1, Fraction(2)), (2, Fraction(0)))


class TestThetaZeta:
    """θ 与 ζ 测试"""

    @pytest.mark.parametrize(('k', 'expected'), [(1, (1, 3)), (2, (2, 4)), (3, (5, 5))])
    def test_example(self, k, expected):
        """测试 [(1,3),(2,1)] 的 θ 与 ζ"""
        hn = HNData.from_pieces([[1, 3], [2, 1]])
        assert (theta(hn, k), zeta(hn, k)) == expected

    def test_out_of_range(self):
        """测试 k 越界"""
        hn = HNData.from_pieces([[2, 0]])
        for k in (0, 3):
            with pytest.raises(ValidationError):
                theta(hn, k)
            with pytest.raises(ValidationError):
                zeta(hn, k)

    @pytest.mark.parametrize('seed', range(5))
    def test_sum_of_slopes(self, seed):
        """测试 θ 为最小 k 个斜率之和,ζ 为最大 k 个之和"""
        rng = random.Random(seed)
        counterexamples = []
        for _ in range(200):
            hn = random_hn(rng)
            slopes = slopes_with_multiplicity(hn)
            for k in range(1, hn.rank + 1):
                if theta(hn, k) != sum(slopes[:k]) or zeta(hn, k) != sum(slopes[-k:]):
                    counterexamples.append((hn.to_list(), k))
        assert counterexamples == []

    @pytest.mark.parametrize('seed', range(4))
    def test_semistable_identity(self, engine, seed):
        """测试半稳定时 θ = ζ = k·μ,且曲线上 Nef¹ = Eff¹"""
        rng = random.Random(100 + seed)
        counterexamples = []
        for _ in range(50):
            r = rng.randint(1, 6)
            mu = Fraction(rng.randint(-10, 10), rng.randint(1, 5))
            hn = HNData(pieces=((r, mu),))
            for k in range(1, r + 1):
                cones = curve_cones(hn, k, engine)
                if not theta(hn, k) == zeta(hn, k) == k * mu or not equals(cones.nef, cones.eff, engine):
                    counterexamples.append((hn.to_list(), k))
        assert counterexamples == []

    def test_full_rank(self):
        """测试 k = r 时 θ = ζ = deg(E)"""
        rng = random.Random(7)
        for _ in range(30):
            hn = random_hn(rng)
            assert theta(hn, hn.rank) == zeta(hn, hn.rank) == hn.degree

    def test_theta_not_above_zeta(self):
        """测试 θ <= ζ,多段 HN 数据仅在 k = r 时相等"""
        rng = random.Random(11)
        counterexamples = []
        for _ in range(1000):
            length = rng.randint(1, 4)
            slopes = sorted(rng.sample(range(-10, 11), length), reverse=True)
            hn = HNData.from_pieces([[rng.randint(1, 5), mu] for mu in slopes])
            for k in range(1, hn.rank + 1):
                t, z = theta(hn, k), zeta(hn, k)
                if t > z or (t == z and hn.length > 1 and k < hn.rank):
                    counterexamples.append((hn.to_list(), k))
        assert counterexamples == []

    def test_twist_shifts(self):
        """测试张量积使 θ 与 ζ 平移 k·t"""
        rng = random.Random(13)
        for _ in range(50):
            hn = random_hn(rng)
            t = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            twisted = hn.twist(t)
            for k in range(1, hn.rank + 1):
                assert theta(twisted, k) == theta(hn, k) + k * t
                assert zeta(twisted, k) == zeta(hn, k) + k * t

    def test_permutation_invariance(self):
        """测试线丛直和与次数顺序无关"""
        rng = random.Random(17)
        for _ in range(50):
            degrees = [rng.randint(-4, 4) for _ in range(rng.randint(1, 6))]
            shuffled = degrees[:]
            rng.shuffle(shuffled)
            a, b = hn_of_line_bundle_sum(degrees), hn_of_line_bundle_sum(shuffled)
            assert a == b
            for k in range(1, len(degrees) + 1):
                assert theta(a, k) == sum(sorted(degrees)[:k])


class TestCurveCones:
    """曲线上 Grassmann 丛的锥测试"""

    def test_cones(self, engine):
        """测试 Nef¹ 与 Eff¹ 的生成元"""
        cones = curve_cones(HNData.from_pieces([[1, 3], [2, 1]]), 2, engine)
        assert (cones.theta, cones.zeta) == (2, 4)
        assert ints(cones.nef.generators) == {(1, -2), (0, 1)}
        assert ints(cones.eff.generators) == {(1, -4), (0, 1)}
        assert includes(cones.eff, cones.nef, engine)
        assert not equals(cones.nef, cones.eff, engine)
        assert cones.basis == ('xi', 'f')

    def test_rational_theta(self, engine):
        """测试有理 θ 的生成元本原化"""
        cones = curve_cones(HNData.from_pieces([[2, '1/2']]), 1, engine)
        assert ints(cones.nef.generators) == {(2, -1), (0, 1)}
        assert equals(cones.nef, cones.eff, engine)

    def test_semistable_by_cones(self, engine):
        """测试通过锥相等判定半稳定"""
        assert is_semistable_by_cones(HNData.from_pieces([[3, 2]]), engine)
        assert not is_semistable_by_cones(HNData.from_pieces([[1, 3], [2, 1]]), engine)
        rng = random.Random(19)
        for _ in range(20):
            hn = random_hn(rng)
            assert is_semistable_by_cones(hn, engine) == hn.is_semistable


class TestFiberProduct:
    """纤维积测试"""

    def test_example(self, engine):
        """测试 Gr(2,E) ×_C Gr(1,E2) 的锥"""
        nef, eff = fiber_product_cones(HNData.from_pieces([[1, 3], [2, 1]]), 2, HNData.from_pieces([[2, 0]]), 1, engine)
        assert ints(nef.generators) == {(1, 0, -2), (0, 1, 0), (0, 0, 1)}
        assert ints(eff.generators) == {(1, 0, -4), (0, 1, 0), (0, 0, 1)}

    def test_equality(self, engine):
        """测试所有因子半稳定时 Nef¹ = Eff¹"""
        stable = [(HNData.from_pieces([[2, 1]]), 1), (HNData.from_pieces([[3, '1/3']]), 2)]
        assert fiber_product_nef_equals_eff(stable, engine)
        unstable = [*stable, (HNData.from_pieces([[1, 1], [1, 0]]), 1)]
        assert not fiber_product_nef_equals_eff(unstable, engine)

    @pytest.mark.parametrize('seed', range(5))
    def test_nef_inside_eff(self, engine, seed):
        """测试任意 HN 数据(含非半稳定)下纤维积的 Nef¹ ⊆ Eff¹"""
        rng = random.Random(200 + seed)
        counterexamples = []
        for _ in range(10):
            hn1, hn2 = random_hn(rng), random_hn(rng)
            k1, k2 = rng.randint(1, hn1.rank), rng.randint(1, hn2.rank)
            nef, eff = fiber_product_cones(hn1, k1, hn2, k2, engine)
            if not includes(eff, nef, engine) or not all(eff.contains(g, engine) for g in nef.generators):
                counterexamples.append((hn1.to_list(), k1, hn2.to_list(), k2))
        assert counterexamples == []

    def test_multi(self, engine):
        """测试多个因子时的维数"""
        nef, _ = multi_fiber_product_cones([(HNData.from_pieces([[1, 0]]), 1)] * 3, engine)
        assert nef.dim == 4
        assert len(nef.generators) == 4

    def test_invalid(self, engine):
        """测试空因子与 k2 越界"""
        with pytest.raises(ValidationError):
            multi_fiber_product_cones([], engine)
        with pytest.raises(ValidationError) as exc_info:
            fiber_product_cones(HNData.from_pieces([[2, 0]]), 1, HNData.from_pieces([[1, 0]]), 2, engine)
        assert exc_info.value.field == 'k2'
