#!/usr/bin/env python3
"""
==============================================================
Description  : Grassmann 丛的除子锥 - λ 类、Eff¹、Nef¹、相等性报告与塔
LastEditTime : 2026-10-18 13:00:00

本模块在 N¹(Gr_X(k,E)) 的坐标 (ξ, π*基) 下组装除子锥:
- lambda_class: λ_{E,k} = ξ - (k/r)·π*c1(E)
- eff_cone: Eff¹ = cone{λ} + π*Eff¹(X)(E 半稳定且判别式为零)
- nef_cone_surface: NE-bar(X) 为多面体时由不等式组求 Nef¹
- nef_cone_decomposable: Picard 数为一的底空间上可分解丛的 Nef¹,无需半稳定
- nef_eff_equality_report: 底空间与 Grassmann 丛上 Nef¹ = Eff¹ 的一致性
- tower_cones: 逐级纤维积的 Eff¹
- base_nef_cone / base_eff_cone: 底空间的锥

前提检查:
- 可分解丛: 关于丰富类检验半稳定性,计算判别式
- 仅有 (r, c1, c2): 必须由调用方声明 asserted_semistable,判别式仍在可计算时检验
- 前提不成立时抛出 PreconditionError,不会返回错误的锥
==============================================================
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any

from xtlog import mylog

from .curve_bundles import theta
from .linalg import Vector
from .protocols import IConeEngine
from .ratcone import Cone, canonical, equals, h_to_v
from .surface_geometry import SurfaceBundle, SurfaceLattice, check_bundle, discriminant, is_semistable_decomposable, restricted_hn, restricted_slope
from .types import to_vector, to_vectors
from .validators import PreconditionError, SemistabilityUndecidedError, ValidationError, validate_rank_index


@dataclass(frozen=True)
class GrassmannDivisorBasis:
    """N¹(Gr) 的命名基: ξ 坐标在前,其后为底空间基的拉回"""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels or not self.labels[0].startswith('xi'):
            raise ValidationError('第一个基标签必须是 xi', 'basis', list(self.labels))

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def for_lattice(cls, lattice: SurfaceLattice) -> GrassmannDivisorBasis:
        return cls(labels=('xi', *(f'pi*{label}' for label in lattice.basis_labels)))

    @classmethod
    def for_tower(cls, lattice: SurfaceLattice, stages: int) -> GrassmannDivisorBasis:
        """第 stages 级的基 (xi_l, …, xi_1, pi*基)"""
        xis = tuple(f'xi_{i}' for i in range(stages, 0, -1))
        return cls(labels=(*xis, *(f'pi*{label}' for label in lattice.basis_labels)))


@dataclass(frozen=True)
class LambdaClass:
    coefficients: Vector
    basis: tuple[str, ...]


@dataclass(frozen=True)
class EqualityReport:
    """Nef¹ = Eff¹ 在底空间与 Grassmann 丛上的判定

    consistent 为 False 表示两者不一致(与理论矛盾,通常意味着声明的假设不成立)。
    """

    base_equal: bool
    gr_equal: bool
    consistent: bool
    base_nef: Cone
    base_eff: Cone
    gr_nef: Cone
    gr_eff: Cone


def lambda_class(r: int, k: int, c1: Sequence[Any], labels: Sequence[str] | None = None) -> LambdaClass:
    """λ_{E,k} = ξ - (1/C(r,k))·π*c1(∧^k E) = ξ - (k/r)·π*c1(E)

    Raises:
        ValidationError: k 越界
        AssertionError: 二项式比值 C(r-1,k-1)/C(r,k) 与 k/r 不符

    Example:
        >>> lambda_class(2, 1, [2]).coefficients
        (Fraction(1, 1), Fraction(-1, 1))
    """
    validate_rank_index(k, r)
    c = to_vector(c1, 'bundle.c1')
    ratio = Fraction(comb(r - 1, k - 1), comb(r, k))
    if ratio != Fraction(k, r):
        raise AssertionError(f'binomial identity failed for r={r}, k={k}')
    coefficients = (Fraction(1), *(-ratio * x for x in c))
    basis = tuple(labels) if labels is not None else ('xi', *(f'pi*e{i + 1}' for i in range(len(c))))
    return LambdaClass(coefficients=coefficients, basis=basis)


def _require_hypotheses(lattice: SurfaceLattice, bundle: SurfaceBundle, k: int) -> None:
    """检验 E 半稳定且判别式为零

    Raises:
        ValidationError: 数据不一致或 k 越界
        PreconditionError: 假设不成立
        SemistabilityUndecidedError: 无法判定且未声明
    """
    check_bundle(lattice, bundle)
    validate_rank_index(k, bundle.rank)

    if lattice.base_dim >= 3:
        if not bundle.asserted_semistable:
            raise PreconditionError('高维底空间上半稳定性与判别式无法检验', '半稳定且判别式为零 (需 asserted_semistable)')
        mylog.warning(f'grassmann_cones@hypotheses | 底空间维数 {lattice.base_dim}: 半稳定性与判别式均由调用方声明')
        return

    if bundle.summands is not None:
        if lattice.ample_class is None:
            raise ValidationError('检验半稳定性需要丰富类', 'base.ample', None)
        if not is_semistable_decomposable(lattice, bundle, lattice.ample_class):
            raise PreconditionError('E 不是半稳定的 (直和项关于丰富类的次数不全相等)', 'E 关于丰富类半稳定')
    elif bundle.asserted_semistable:
        mylog.warning(f'grassmann_cones@hypotheses | 底空间 {lattice.name}: 半稳定性由调用方声明,未经检验')
    else:
        raise SemistabilityUndecidedError()

    disc = discriminant(lattice, bundle)
    if disc != 0:
        raise PreconditionError(f'判别式 = {disc} ≠ 0', '2r·c2(E) - (r-1)·c1(E)² = 0')


def base_eff_cone(lattice: SurfaceLattice, eff_generators: Sequence[Sequence[Any]] | None = None, engine: IConeEngine | None = None) -> Cone:
    """底空间 Eff¹ 的规范形式

    Raises:
        ValidationError: 没有 Eff¹ 生成元
    """
    gens = to_vectors(eff_generators, 'eff', lattice.rho) if eff_generators is not None else lattice.eff_generators
    if not gens:
        raise ValidationError('缺少底空间 Eff¹ 生成元', 'base.eff', None)
    return canonical(Cone(dim=lattice.rho, generators=gens), engine)


def base_nef_cone(lattice: SurfaceLattice, engine: IConeEngine | None = None) -> Cone:
    """底空间 Nef¹: 经相交形式与曲线锥对偶

    Raises:
        ValidationError: 没有曲线生成元,或 base_dim >= 3
    """
    if lattice.base_dim >= 3:
        raise ValidationError('Nef¹ 只对曲线与曲面底空间计算', 'base.base_dim', lattice.base_dim)
    if not lattice.curve_generators:
        raise ValidationError('缺少曲线生成元', 'base.curves', [])
    halfspaces = tuple(lattice.pairing_row(c) for c in lattice.curve_generators)
    return h_to_v(Cone(dim=lattice.rho, halfspaces=halfspaces), engine)


def eff_cone(
    lattice: SurfaceLattice,
    bundle: SurfaceBundle,
    k: int,
    eff_generators: Sequence[Sequence[Any]] | None = None,
    engine: IConeEngine | None = None,
) -> Cone:
    """Eff¹(Gr_X(k,E)) = cone{λ_{E,k}} + π*Eff¹(X)

    Args:
        lattice: 底空间
        bundle: 半稳定且判别式为零的丛
        k: 商的秩
        eff_generators: 底空间 Eff¹ 生成元,默认取 lattice.eff_generators

    Raises:
        ValidationError: 输入非法或缺少 Eff¹ 生成元
        PreconditionError: 半稳定性或判别式假设不成立
    """
    base = to_vectors(eff_generators, 'eff', lattice.rho) if eff_generators is not None else lattice.eff_generators
    if not base:
        raise ValidationError('缺少底空间 Eff¹ 生成元', 'base.eff', None)
    _require_hypotheses(lattice, bundle, k)
    lam = lambda_class(bundle.rank, k, bundle.c1).coefficients
    gens = (lam, *((Fraction(0), *e) for e in base))
    cone = canonical(Cone(dim=1 + lattice.rho, generators=gens), engine)
    mylog.debug(f'grassmann_cones@eff_cone | {lattice.name}, r={bundle.rank}, k={k}: 生成元 {len(cone.generators or ())} 个')
    return cone


def nef_halfspaces(lattice: SurfaceLattice, bundle: SurfaceBundle, k: int) -> tuple[Vector, ...]:
    """Nef¹ 的不等式组: y_0 >= 0 与 k·y_0·μ(E|_{C_j}) + γ·C_j >= 0"""
    zero = tuple(Fraction(0) for _ in range(lattice.rho))
    rows = [(Fraction(1), *zero)]
    for curve in lattice.curve_generators:
        rows.append((k * restricted_slope(lattice, bundle, curve), *lattice.pairing_row(curve)))
    return tuple(rows)


def nef_cone_surface(lattice: SurfaceLattice, bundle: SurfaceBundle, k: int, engine: IConeEngine | None = None) -> Cone:
    """NE-bar(X) 为多面体时的 Nef¹(Gr_X(k,E)),由不等式组经 h_to_v 得到

    Raises:
        ValidationError: 没有曲线生成元或 base_dim >= 3
        PreconditionError: 半稳定性或判别式假设不成立
    """
    if lattice.base_dim >= 3:
        raise ValidationError('Nef¹ 只对曲线与曲面底空间计算', 'base.base_dim', lattice.base_dim)
    if not lattice.curve_generators:
        raise ValidationError('缺少曲线生成元', 'base.curves', [])
    _require_hypotheses(lattice, bundle, k)
    return h_to_v(Cone(dim=1 + lattice.rho, halfspaces=nef_halfspaces(lattice, bundle, k)), engine)


def nef_cone_decomposable(lattice: SurfaceLattice, bundle: SurfaceBundle, k: int, engine: IConeEngine | None = None) -> Cone:
    """Picard 数为一的底空间上可完全分解丛的 Nef¹

    不等式组 {y_0 >= 0, y_0·θ_{E|C_0,k} + y_1·(L·C_0) >= 0},θ 由限制丛的 HN 数据计算,
    不要求 E 半稳定。

    Raises:
        ValidationError: rho != 1、没有曲线生成元或 k 越界
        PreconditionError: 丛没有直和项
    """
    if lattice.rho != 1:
        raise ValidationError('仅适用于 Picard 数为一的底空间', 'base.rho', lattice.rho)
    if lattice.base_dim >= 3 or not lattice.curve_generators:
        raise ValidationError('需要曲线或曲面底空间及其曲线生成元', 'base.curves', [])
    check_bundle(lattice, bundle)
    validate_rank_index(k, bundle.rank)
    c0 = lattice.curve_generators[0]
    th = theta(restricted_hn(lattice, bundle, c0), k)
    halfspaces = ((Fraction(1), Fraction(0)), (th, *lattice.pairing_row(c0)))
    mylog.debug(f'grassmann_cones@nef_cone_decomposable | θ(E|C_0, {k}) = {th}')
    return h_to_v(Cone(dim=2, halfspaces=halfspaces), engine)


def nef_eff_equality_report(
    lattice: SurfaceLattice,
    bundle: SurfaceBundle,
    k: int,
    eff_generators: Sequence[Sequence[Any]] | None = None,
    engine: IConeEngine | None = None,
) -> EqualityReport:
    """比较底空间与 Grassmann 丛上的 Nef¹ 与 Eff¹

    二者应同时相等或同时不等;不一致时记录错误日志并在报告中标记,不抛出异常。
    """
    base_eff = base_eff_cone(lattice, eff_generators, engine)
    base_nef = base_nef_cone(lattice, engine)
    gr_eff = eff_cone(lattice, bundle, k, eff_generators, engine)
    gr_nef = nef_cone_surface(lattice, bundle, k, engine)
    base_equal = equals(base_nef, base_eff, engine)
    gr_equal = equals(gr_nef, gr_eff, engine)
    consistent = base_equal == gr_equal
    if not consistent:
        mylog.error(f'grassmann_cones@nef_eff_equality_report | 一致性失败: base_equal={base_equal}, gr_equal={gr_equal} ({lattice.name}, k={k})')
    return EqualityReport(
        base_equal=base_equal,
        gr_equal=gr_equal,
        consistent=consistent,
        base_nef=base_nef,
        base_eff=base_eff,
        gr_nef=gr_nef,
        gr_eff=gr_eff,
    )


def tower_cones(
    lattice: SurfaceLattice,
    stages: Sequence[tuple[SurfaceBundle, int]],
    eff_generators: Sequence[Sequence[Any]] | None = None,
    engine: IConeEngine | None = None,
) -> list[Cone]:
    """逐级 Grassmann 丛的 Eff¹

    第 i 级的基为 (ξ_i, …, ξ_1, π*基),生成元为 λ_{E_i,k_i}(ξ_j 位置补零)
    与上一级生成元的拉回。

    Raises:
        ValidationError: 级数为空
        PreconditionError: 底空间 Nef¹ ≠ Eff¹,或某一级的丛不满足假设
    """
    if not stages:
        raise ValidationError('塔至少需要一级', 'query.stages', [])
    if lattice.base_dim >= 3:
        raise PreconditionError('高维底空间无法验证 Nef¹ = Eff¹', 'Nef¹(X) = Eff¹(X)')
    base_eff = base_eff_cone(lattice, eff_generators, engine)
    if not equals(base_nef_cone(lattice, engine), base_eff, engine):
        raise PreconditionError(f'底空间 {lattice.name} 的 Nef¹ 与 Eff¹ 不相等', 'Nef¹(X) = Eff¹(X)')

    cones: list[Cone] = []
    previous: tuple[Vector, ...] = base_eff.generators or ()
    for i, (bundle, k) in enumerate(stages):
        try:
            _require_hypotheses(lattice, bundle, k)
        except (ValidationError, PreconditionError) as e:
            mylog.error(f'grassmann_cones@tower_cones | 第 {i + 1} 级检查失败: {e}')
            raise
        lam = lambda_class(bundle.rank, k, bundle.c1).coefficients
        padded = (lam[0], *(Fraction(0) for _ in range(i)), *lam[1:])
        gens = (padded, *((Fraction(0), *g) for g in previous))
        cone = canonical(Cone(dim=i + 1 + lattice.rho, generators=gens), engine)
        cones.append(cone)
        previous = cone.generators or ()
    mylog.debug(f'grassmann_cones@tower_cones | {len(stages)} 级, 最终维数 {cones[-1].dim}')
    return cones


__all__ = (
    'EqualityReport',
    'GrassmannDivisorBasis',
    'LambdaClass',
    'base_eff_cone',
    'base_nef_cone',
    'eff_cone',
    'lambda_class',
    'nef_cone_decomposable',
    'nef_cone_surface',
    'nef_eff_equality_report',
    'nef_halfspaces',
    'tower_cones',
)
