from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

import pytest

from grasscone import Cone, PplConeEngine, ValidationError, canonical, contains, dual, equals, h_to_v, includes, v_to_h
from grasscone.linalg import dot


def ints(vectors):
    return {tuple(int(x) for x in v) for v in vectors}


def random_cone(rng: random.Random) -> Cone:
    dim = rng.randint(1, 6)
    count = rng.randint(1, 10)
    gens = [tuple(rng.randint(-5, 5) for _ in range(dim)) for _ in range(count)]
    return Cone.from_generators(gens, dim)


class TestConversions:
    """表示转换测试"""

    def test_v_to_h_orthant(self, engine):
        """测试第一象限自对偶"""
        cone = v_to_h(Cone.from_generators([(1, 0), (0, 1)]), engine)
        assert ints(cone.halfspaces) == {(1, 0), (0, 1)}
        assert cone.generators == ((1, 0), (0, 1))

    def test_v_to_h_wedge(self, engine):
        """测试 {(1,0),(1,1)} 的面法向量"""
        cone = v_to_h(Cone.from_generators([(1, 0), (1, 1)]), engine)
        assert ints(cone.halfspaces) == {(0, 1), (1, -1)}

    def test_round_trip_3d(self, engine):
        """测试三维锥的 H/V 往返"""
        cone = Cone.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
        back = h_to_v(Cone(dim=3, halfspaces=v_to_h(cone, engine).halfspaces), engine)
        assert equals(back, cone, engine)
        assert ints(back.generators) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)}

    @pytest.mark.parametrize(
        ('halfspaces', 'expected'),
        [
            ([(1, 0), (0, 1)], {(1, 0), (0, 1)}),
            ([(0, 1), (1, -1)], {(1, 0), (1, 1)}),
            ([(1, 0), (1, 1)], {(0, 1), (1, -1)}),
        ],
    )
    def test_h_to_v(self, engine, halfspaces, expected):
        """测试由半空间求生成元"""
        cone = h_to_v(Cone.from_halfspaces(halfspaces), engine)
        assert cone.canonical
        assert ints(cone.generators) == expected

    def test_zero_cone(self, engine):
        """测试零锥: 生成元为空"""
        cone = h_to_v(Cone.from_halfspaces([(1, 0), (0, 1), (-1, 0), (0, -1)]), engine)
        assert cone.generators == ()
        assert cone.contains((0, 0))
        assert not cone.contains((1, 0))

    def test_full_space(self, engine):
        """测试全空间: 线性空间以 ± 对给出"""
        cone = h_to_v(Cone.from_halfspaces([], dim=2), engine)
        assert ints(cone.generators) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
        assert cone.lineality_dim == 2
        assert not cone.is_pointed

    def test_half_plane(self, engine):
        """测试非尖锥: 射线沿线性空间正交投影"""
        cone = canonical(Cone.from_generators([(1, 0), (-1, 0), (3, 2)]), engine)
        assert cone.generators == ((-1, 0), (0, 1), (1, 0))

    def test_dimension_cap(self):
        """测试维数上限"""
        small = PplConeEngine(max_dim=3)
        with pytest.raises(ValidationError) as exc_info:
            v_to_h(Cone.from_generators([(1, 0, 0, 0)]), small)
        assert exc_info.value.field == 'dim'

    def test_zero_constraint(self, engine):
        """测试零约束不影响结果"""
        gens = engine.enumerate([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 0), (0, 0, 1), (1, 1, 0)], 3)
        assert ints(engine.canonicalize(gens)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


class TestDualityAndMembership:
    """对偶、成员与相等测试"""

    def test_dual_examples(self, engine):
        """测试对偶锥的例子"""
        assert ints(dual(Cone.from_generators([(1, 0), (0, 1)]), engine).generators) == {(1, 0), (0, 1)}
        assert ints(dual(Cone.from_generators([(1, 0), (1, 1)]), engine).generators) == {(0, 1), (1, -1)}

    def test_dual_of_h_cone(self, engine):
        """测试只有 H-表示时的对偶"""
        cone = Cone.from_halfspaces([(0, 1), (1, -1)])
        assert ints(dual(cone, engine).generators) == {(0, 1), (1, -1)}

    @pytest.mark.parametrize(('v', 'expected'), [((2, 1), True), ((0, -1), False), ((1, 0), True), ((1, 2), False)])
    def test_contains(self, engine, v, expected):
        """测试成员判定"""
        assert contains(Cone.from_generators([(1, 0), (1, 1)]), v, engine) is expected

    def test_contains_orthant(self, engine):
        """测试第一象限包含 (1,2)"""
        assert contains(Cone.from_generators([(1, 0), (0, 1)]), (1, 2), engine)

    def test_contains_dim_mismatch(self, engine):
        """测试维数不符"""
        with pytest.raises(ValidationError):
            contains(Cone.from_generators([(1, 0)]), (1, 0, 0), engine)

    def test_equals(self, engine):
        """测试相等判定"""
        assert equals(Cone.from_generators([(1, 0), (0, 1)]), Cone.from_generators([(0, 2), (3, 0)]), engine)
        assert not equals(Cone.from_generators([(1, 0), (1, 1)]), Cone.from_generators([(1, 0), (0, 1)]), engine)
        assert equals(Cone.from_generators([(1, 0), (1, 1), (1, 2)]), Cone.from_generators([(1, 0), (1, 2)]), engine)
        with pytest.raises(ValidationError):
            equals(Cone.from_generators([(1, 0)]), Cone.from_generators([(1, 0, 0)]), engine)

    def test_includes(self, engine):
        """测试包含关系"""
        outer = Cone.from_generators([(1, 0), (0, 1)])
        inner = Cone.from_generators([(1, 1), (2, 1)])
        assert includes(outer, inner, engine)
        assert not includes(inner, outer, engine)

    def test_rational_generators(self, engine):
        """测试有理生成元规范化为本原整向量"""
        cone = canonical(Cone.from_generators([('1/2', '1/3'), (0, '2/5')]), engine)
        assert ints(cone.generators) == {(3, 2), (0, 1)}


class TestConeValue:
    """锥值对象测试"""

    def test_requires_representation(self):
        """测试至少需要一种表示"""
        with pytest.raises(ValidationError):
            Cone(dim=2)

    def test_vector_length(self):
        """测试向量维数检查"""
        with pytest.raises(ValidationError):
            Cone(dim=2, generators=((1, 0), (1, 0, 0)))

    def test_float_rejected(self):
        """测试拒绝浮点数"""
        with pytest.raises(ValidationError):
            Cone.from_generators([(0.5, 1)])

    def test_structure(self):
        """测试结构性质"""
        orthant = Cone.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert orthant.is_pointed
        assert orthant.is_simplicial
        assert orthant.is_full_dimensional
        flat = Cone.from_generators([(1, 0, 0), (0, 1, 0), (1, 1, 0)])
        assert flat.dimension == 2
        assert not flat.is_full_dimensional
        assert flat.is_simplicial
        square = Cone.from_generators([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])
        assert square.is_pointed
        assert not square.is_simplicial

    def test_to_dict(self):
        """测试导出为字典"""
        data = Cone(dim=2, generators=((Fraction(1, 2), 0),)).to_dict()
        assert data['generators'] == [['1/2', '0']]
        assert data['halfspaces'] is None


class TestConeProperties:
    """随机锥上的性质测试"""

    @pytest.mark.parametrize('seed', range(10))
    def test_biduality_round_trip_membership(self, engine, seed):
        """测试双对偶、H/V 往返与成员一致性"""
        rng = random.Random(seed)
        for _ in range(50):
            cone = random_cone(rng)
            assert equals(dual(dual(cone, engine), engine), cone, engine)
            assert equals(h_to_v(Cone(dim=cone.dim, halfspaces=v_to_h(cone, engine).halfspaces), engine), cone, engine)
            dual_gens = dual(cone, engine).generators
            for g in cone.generators:
                assert contains(cone, g, engine)
            for _ in range(3):
                v = tuple(rng.randint(-5, 5) for _ in range(cone.dim))
                assert contains(cone, v, engine) == all(dot(y, v) >= 0 for y in dual_gens)

    @pytest.mark.parametrize('seed', range(10))
    def test_canonical_form(self, engine, seed):
        """测试规范形式: 幂等、本原整向量、有序、极射线"""
        rng = random.Random(1000 + seed)
        for _ in range(10):
            cone = random_cone(rng)
            first = canonical(cone, engine)
            again = canonical(Cone(dim=cone.dim, generators=first.generators), engine)
            assert again.generators == first.generators
            assert list(first.generators) == sorted(set(first.generators))
            for g in first.generators:
                assert all(x.denominator == 1 for x in g)
                assert gcd(*(int(x) for x in g)) == 1
            for i, g in enumerate(first.generators):
                rest = first.generators[:i] + first.generators[i + 1 :]
                assert not contains(Cone(dim=cone.dim, generators=rest), g, engine)
