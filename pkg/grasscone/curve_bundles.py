#!/usr/bin/env python3
"""
==============================================================
Description  : 曲线上的向量丛 - HN 数据、θ/ζ 阈值与 Grassmann 丛的锥
LastEditTime : 2026-10-18 12:00:00

本模块处理光滑曲线 C 上向量丛 E 的数值数据:
- HNData: HN 滤过的 (秩, 斜率) 序列,斜率严格递减
- hn_of_line_bundle_sum: 线丛直和的 HN 数据
- theta / zeta: Gr_C(k,E) 的 nef 边界与拟有效边界斜率
- curve_cones: (ξ, f) 基下的 Nef¹ 与 Eff¹
- fiber_product_cones / multi_fiber_product_cones: 纤维积 (ξ_1,…,ξ_l,F) 基下的锥
- is_semistable_by_cones / fiber_product_nef_equals_eff: 通过锥相等判定半稳定性

θ 等于最小的 k 个斜率(按秩计重数)之和,ζ 等于最大的 k 个之和。
==============================================================
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from xtlog import mylog

from .protocols import IConeEngine
from .ratcone import Cone, canonical, equals
from .types import to_rational
from .validators import ValidationError, validate_positive_int, validate_rank_index

CURVE_BASIS: tuple[str, str] = ('xi', 'f')


@dataclass(frozen=True)
class HNData:
    """HN 数据: 第 i 个分次商 E_i/E_{i-1} 的 (秩, 斜率)

    Example:
        >>> hn = HNData.from_pieces([[1, 3], [2, 1]])
        >>> hn.rank, hn.degree
        (3, Fraction(5, 1))
    """

    pieces: tuple[tuple[int, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise ValidationError('HN 数据不能为空', 'hn', [])
        normalized = []
        for i, piece in enumerate(self.pieces):
            if len(piece) != 2:
                raise ValidationError('HN 分量必须是 [秩, 斜率]', f'hn[{i}]', piece)
            rank, slope = piece
            validate_positive_int(rank, f'hn[{i}][0]')
            normalized.append((rank, to_rational(slope, f'hn[{i}][1]')))
        for i in range(1, len(normalized)):
            if normalized[i][1] >= normalized[i - 1][1]:
                raise ValidationError('HN 斜率必须严格递减', f'hn[{i}][1]', [[r, str(s)] for r, s in normalized])
        object.__setattr__(self, 'pieces', tuple(normalized))

    @classmethod
    def from_pieces(cls, pieces: Iterable[Sequence[Any]]) -> HNData:
        """由 [[秩, 斜率], ...] 构造,斜率可为 int / Fraction / "p/q" """
        try:
            items = [tuple(p) for p in pieces]
        except TypeError as e:
            raise ValidationError('HN 数据必须是 [秩, 斜率] 列表', 'hn', pieces) from e
        return cls(pieces=tuple(items))

    @property
    def rank(self) -> int:
        return sum(r for r, _ in self.pieces)

    @property
    def degree(self) -> Fraction:
        return sum((r * mu for r, mu in self.pieces), Fraction(0))

    @property
    def length(self) -> int:
        """HN 滤过长度 l"""
        return len(self.pieces)

    @property
    def mu_max(self) -> Fraction:
        return self.pieces[0][1]

    @property
    def mu_min(self) -> Fraction:
        return self.pieces[-1][1]

    @property
    def slope(self) -> Fraction:
        return self.degree / self.rank

    @property
    def is_semistable(self) -> bool:
        return self.length == 1

    def sub_rank(self, t: int) -> int:
        """rk(E_t),约定 rk(E_0) = 0"""
        return sum(r for r, _ in self.pieces[:t])

    def sub_degree(self, t: int) -> Fraction:
        """deg(E_t),约定 deg(E_0) = 0"""
        return sum((r * mu for r, mu in self.pieces[:t]), Fraction(0))

    def twist(self, t: Any) -> HNData:
        """与 t 次线丛做张量积: 所有斜率平移 t"""
        shift = to_rational(t, 't')
        return HNData(pieces=tuple((r, mu + shift) for r, mu in self.pieces))

    def to_list(self) -> list[list[Any]]:
        return [[r, mu] for r, mu in self.pieces]


@dataclass(frozen=True)
class CurveGrassmannCones:
    """Gr_C(k,E) 在 (ξ, f) 基下的 nef 锥与拟有效锥"""

    k: int
    theta: Fraction
    zeta: Fraction
    nef: Cone
    eff: Cone
    basis: tuple[str, ...] = CURVE_BASIS


def hn_of_line_bundle_sum(degrees: Iterable[Any]) -> HNData:
    """线丛直和的 HN 数据: 相同次数合并,按次数降序

    Example:
        >>> hn_of_line_bundle_sum([3, 1, 1]).pieces
        ((1, Fraction(3, 1)), (2, Fraction(1, 1)))
    """
    values = [to_rational(d, f'line_sum[{i}]') for i, d in enumerate(degrees)]
    if not values:
        raise ValidationError('线丛次数列表不能为空', 'line_sum', [])
    counts = Counter(values)
    return HNData(pieces=tuple((counts[d], d) for d in sorted(counts, reverse=True)))


def theta(hn: HNData, k: int) -> Fraction:
    """θ_{E,k} = (k - rk(E/E_t))·μ_t + deg(E/E_t)

    t 取满足 rk(E/E_t) < k 的最小值;由于 rk(E/E_l) = 0,这样的 t 总存在。

    Raises:
        ValidationError: k 越界
    """
    validate_rank_index(k, hn.rank)
    r, deg = hn.rank, hn.degree
    for t in range(1, hn.length + 1):
        quotient_rank = r - hn.sub_rank(t)
        if quotient_rank < k:
            mu_t = hn.pieces[t - 1][1]
            return (k - quotient_rank) * mu_t + (deg - hn.sub_degree(t))
    raise AssertionError('unreachable: rk(E/E_l) = 0 < k')


def zeta(hn: HNData, k: int) -> Fraction:
    """ζ_{E,k} = (k - rk(E_t))·μ_{t+1} + deg(E_t)

    t 取满足 rk(E_{t+1}) > k 的最小值;不存在时(k = r)取 t = l,此时系数为 0,ζ = deg(E)。

    Raises:
        ValidationError: k 越界
    """
    validate_rank_index(k, hn.rank)
    for t in range(hn.length):
        if hn.sub_rank(t + 1) > k:
            return (k - hn.sub_rank(t)) * hn.pieces[t][1] + hn.sub_degree(t)
    return hn.degree


def _boundary_cone(coefficients: Sequence[Fraction], engine: IConeEngine | None) -> Cone:
    """(ξ_1,…,ξ_l,F) 基下生成元为 ξ_i - c_i·F 与 F 的锥"""
    n = len(coefficients) + 1
    gens = [tuple(Fraction(1) if j == i else (-c if j == n - 1 else Fraction(0)) for j in range(n)) for i, c in enumerate(coefficients)]
    gens.append(tuple(Fraction(1 if j == n - 1 else 0) for j in range(n)))
    return canonical(Cone(dim=n, generators=tuple(gens)), engine)


def curve_cones(hn: HNData, k: int, engine: IConeEngine | None = None) -> CurveGrassmannCones:
    """Gr_C(k,E) 的 Nef¹ = cone{ξ - θf, f} 与 Eff¹ = cone{ξ - ζf, f}

    Raises:
        ValidationError: k 越界
    """
    th, ze = theta(hn, k), zeta(hn, k)
    mylog.debug(f'curve_bundles@curve_cones | k={k}: θ={th}, ζ={ze}')
    return CurveGrassmannCones(k=k, theta=th, zeta=ze, nef=_boundary_cone([th], engine), eff=_boundary_cone([ze], engine))


def multi_fiber_product_cones(factors: Sequence[tuple[HNData, int]], engine: IConeEngine | None = None) -> tuple[Cone, Cone]:
    """Gr(k_1,E_1) ×_C … ×_C Gr(k_l,E_l) 在 (ξ_1,…,ξ_l,F) 基下的 (nef, eff)

    Raises:
        ValidationError: 因子为空或某个 k 越界
    """
    if not factors:
        raise ValidationError('纤维积至少需要一个因子', 'factors', [])
    for i, (hn, k) in enumerate(factors):
        validate_rank_index(k, hn.rank, f'factors[{i}].k')
    thetas = [theta(hn, k) for hn, k in factors]
    zetas = [zeta(hn, k) for hn, k in factors]
    return _boundary_cone(thetas, engine), _boundary_cone(zetas, engine)


def fiber_product_cones(hn_e: HNData, k: int, hn_e2: HNData, k2: int, engine: IConeEngine | None = None) -> tuple[Cone, Cone]:
    """Gr(k,E) ×_C Gr(k2,E2) 在 (ξ, η, F) 基下的 (nef, eff)"""
    validate_rank_index(k, hn_e.rank, 'k')
    validate_rank_index(k2, hn_e2.rank, 'k2')
    return multi_fiber_product_cones([(hn_e, k), (hn_e2, k2)], engine)


def is_semistable_by_cones(hn: HNData, engine: IConeEngine | None = None) -> bool:
    """曲线上 E 半稳定当且仅当对所有 k 有 Nef¹ = Eff¹"""
    for k in range(1, hn.rank + 1):
        cones = curve_cones(hn, k, engine)
        if not equals(cones.nef, cones.eff, engine):
            return False
    return True


def fiber_product_nef_equals_eff(factors: Sequence[tuple[HNData, int]], engine: IConeEngine | None = None) -> bool:
    """纤维积上 Nef¹ = Eff¹ 是否成立"""
    nef, eff = multi_fiber_product_cones(factors, engine)
    return equals(nef, eff, engine)


__all__ = (
    'CURVE_BASIS',
    'CurveGrassmannCones',
    'HNData',
    'curve_cones',
    'fiber_product_cones',
    'fiber_product_nef_equals_eff',
    'hn_of_line_bundle_sum',
    'is_semistable_by_cones',
    'multi_fiber_product_cones',
    'theta',
    'zeta',
)
