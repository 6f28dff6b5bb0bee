#!/usr/bin/env python3
"""
==============================================================
Description  : 曲面上的数值相交理论 - 格、丛、判别式与半稳定性
LastEditTime : 2026-10-18 12:30:00

本模块提供底空间的数值数据与向量丛的数值不变量:

类型:
- SurfaceLattice: N¹ 的基、相交矩阵、有效曲线生成元、可选的丰富类/有效除子生成元/纤维类
- SurfaceBundle: 秩 + c1 + c2(数),或可完全分解丛的直和项

内置格:
- blowup_ruled_elliptic: 椭圆直纹面 ℙ(O⊕O) 在截面上一点的爆破
- ruled_elliptic: 未爆破的椭圆直纹面
- projective_plane: ℙ²
- curve_base: 曲线底空间(次数配对)

运算:
- intersect / restricted_degree / restricted_slope / restricted_hn / slope
- discriminant / is_semistable_decomposable
- twist / decomposable_bundle / asserted_bundle / pullback_from_base_curve

base_dim 约定:
- 1: 曲线,相交矩阵为次数配对,c2 恒为 0,判别式恒为 0
- 2: 曲面,相交矩阵对称
- >= 3: 相交矩阵为除子与曲线的配对,判别式无法计算,假设必须由调用方声明
==============================================================
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any

from xtlog import mylog

from .cfg import load_base_document
from .curve_bundles import HNData, hn_of_line_bundle_sum
from .linalg import Vector, add, dot, mat_vec, scale
from .types import to_rational, to_vector, to_vectors
from .validators import PreconditionError, SemistabilityUndecidedError, ValidationError, validate_positive_int, validate_symmetric


@dataclass(frozen=True)
class SurfaceLattice:
    """底空间的数值格

    Attributes:
        rho: Picard 数
        basis_labels: 基的标签
        gram: 相交矩阵(base_dim >= 3 时为除子-曲线配对)
        curve_generators: 生成 NE-bar 的曲线类
        ample_class: 丰富类(可选),须与所有曲线生成元正配对
        eff_generators: 底空间 Eff¹ 的生成元,base_dim <= 2 时默认取 curve_generators
        fiber_class: 底曲线上一点的拉回类(可选)
        base_dim: 底空间维数
        name: 名称,用于日志与报告
    """

    rho: int
    basis_labels: tuple[str, ...]
    gram: tuple[Vector, ...]
    curve_generators: tuple[Vector, ...]
    ample_class: Vector | None = None
    eff_generators: tuple[Vector, ...] | None = None
    fiber_class: Vector | None = None
    base_dim: int = 2
    name: str = 'custom'

    def __post_init__(self) -> None:
        validate_positive_int(self.rho, 'base.rho')
        validate_positive_int(self.base_dim, 'base.base_dim')
        if len(self.basis_labels) != self.rho:
            raise ValidationError(f'基标签个数应为 {self.rho}', 'base.basis', list(self.basis_labels))
        gram = to_vectors(self.gram, 'base.gram', self.rho)
        if len(gram) != self.rho:
            raise ValidationError(f'相交矩阵应为 {self.rho}×{self.rho}', 'base.gram', [list(r) for r in gram])
        if self.base_dim <= 2:
            validate_symmetric(gram, 'base.gram')
        object.__setattr__(self, 'gram', gram)
        object.__setattr__(self, 'basis_labels', tuple(self.basis_labels))
        object.__setattr__(self, 'curve_generators', to_vectors(self.curve_generators, 'base.curves', self.rho))
        if self.eff_generators is not None:
            object.__setattr__(self, 'eff_generators', to_vectors(self.eff_generators, 'base.eff', self.rho))
        elif self.base_dim <= 2:
            object.__setattr__(self, 'eff_generators', self.curve_generators)
        if self.fiber_class is not None:
            object.__setattr__(self, 'fiber_class', to_vector(self.fiber_class, 'base.fiber', self.rho))
        if self.ample_class is not None:
            ample = to_vector(self.ample_class, 'base.ample', self.rho)
            object.__setattr__(self, 'ample_class', ample)
            validate_polarization(self, ample, 'base.ample')

    @classmethod
    def create(
        cls,
        basis: Sequence[str],
        gram: Iterable[Iterable[Any]],
        curves: Iterable[Iterable[Any]],
        ample: Iterable[Any] | None = None,
        eff: Iterable[Iterable[Any]] | None = None,
        fiber: Iterable[Any] | None = None,
        base_dim: int = 2,
        name: str = 'custom',
    ) -> SurfaceLattice:
        """由原始列表构造格,rho 取基标签个数"""
        return cls(
            rho=len(basis),
            basis_labels=tuple(basis),
            gram=to_vectors(gram, 'base.gram'),
            curve_generators=to_vectors(curves, 'base.curves'),
            ample_class=None if ample is None else to_vector(ample, 'base.ample'),
            eff_generators=None if eff is None else to_vectors(eff, 'base.eff'),
            fiber_class=None if fiber is None else to_vector(fiber, 'base.fiber'),
            base_dim=base_dim,
            name=name,
        )

    def intersect(self, a: Sequence[Any], b: Sequence[Any]) -> Fraction:
        return intersect(self, a, b)

    def pairing_row(self, curve: Sequence[Any]) -> Vector:
        """gram·C: 与曲线 C 配对的线性函数的系数"""
        return mat_vec(self.gram, to_vector(curve, 'curve', self.rho))


@dataclass(frozen=True)
class SurfaceBundle:
    """底空间上向量丛的数值数据

    Attributes:
        rank: 秩 r
        c1: 第一陈类在格基下的坐标
        c2: 第二陈类的次数(0-闭链)
        summands: 可完全分解时的直和项线丛类 M_i
        asserted_semistable: 调用方声明 E 半稳定且判别式为零
    """

    rank: int
    c1: Vector
    c2: Fraction = Fraction(0)
    summands: tuple[Vector, ...] | None = None
    asserted_semistable: bool = False

    def __post_init__(self) -> None:
        validate_positive_int(self.rank, 'bundle.rank')
        object.__setattr__(self, 'c1', to_vector(self.c1, 'bundle.c1'))
        object.__setattr__(self, 'c2', to_rational(self.c2, 'bundle.c2'))
        if self.summands is not None:
            summands = to_vectors(self.summands, 'bundle.summands', len(self.c1))
            if len(summands) != self.rank:
                raise ValidationError(f'直和项个数应等于秩 {self.rank}', 'bundle.summands', len(summands))
            object.__setattr__(self, 'summands', summands)

    @property
    def is_decomposable(self) -> bool:
        return self.summands is not None


def intersect(lattice: SurfaceLattice, a: Sequence[Any], b: Sequence[Any]) -> Fraction:
    """相交数 aᵀ·gram·b

    Raises:
        ValidationError: 维数与 rho 不符

    Example:
        >>> intersect(projective_plane(), (2,), (3,))
        Fraction(6, 1)
    """
    va = to_vector(a, 'a', lattice.rho)
    vb = to_vector(b, 'b', lattice.rho)
    return dot(va, mat_vec(lattice.gram, vb))


def validate_polarization(lattice: SurfaceLattice, polarization: Sequence[Any], field: str = 'polarization') -> Vector:
    """验证极化类: 自交为正(base_dim <= 2)且与所有曲线生成元正配对

    Raises:
        ValidationError: 不满足条件
    """
    h = to_vector(polarization, field, lattice.rho)
    if lattice.base_dim <= 2 and intersect(lattice, h, h) <= 0:
        raise ValidationError('极化类的自交数必须为正', field, [str(x) for x in h])
    for j, curve in enumerate(lattice.curve_generators):
        if intersect(lattice, h, curve) <= 0:
            raise ValidationError(f'极化类与曲线生成元 C_{j + 1} 的相交数必须为正', field, [str(x) for x in h])
    return h


def check_bundle(lattice: SurfaceLattice, bundle: SurfaceBundle) -> SurfaceBundle:
    """检查丛数据与格一致: 维数,可分解时 c1 = ΣM_i 与 c2 = Σ_{i<j} M_i·M_j

    Raises:
        ValidationError: 不一致
    """
    to_vector(bundle.c1, 'bundle.c1', lattice.rho)
    if bundle.summands is None:
        return bundle
    to_vectors(bundle.summands, 'bundle.summands', lattice.rho)
    expected = decomposable_bundle(lattice, bundle.summands)
    if expected.c1 != bundle.c1:
        raise ValidationError('c1 必须等于直和项之和', 'bundle.c1', [str(x) for x in bundle.c1])
    if expected.c2 != bundle.c2:
        raise ValidationError(f'c2 必须等于 Σ_{{i<j}} M_i·M_j = {expected.c2}', 'bundle.c2', str(bundle.c2))
    return bundle


def _ruled_elliptic_gram(degW: int) -> tuple[Vector, ...]:
    # 基 (ζ, f): ζ² = deg W, ζ·f = 1, f² = 0
    return ((Fraction(degW), Fraction(1)), (Fraction(1), Fraction(0)))


def _check_degW(degW: Any) -> int:
    if isinstance(degW, bool) or not isinstance(degW, int):
        raise ValidationError('degW 必须是整数', 'degW', degW)
    if degW != 0:
        raise ValidationError('仅支持 W = O ⊕ O (degW = 0)', 'degW', degW)
    return degW


def ruled_elliptic(degW: int = 0) -> SurfaceLattice:
    """椭圆曲线上的直纹面 ℙ(O⊕O),基 (ζ, f)

    NE-bar 由截面类 ζ 与纤维 f 生成,Nef¹ = Eff¹ 为第一象限。

    Raises:
        ValidationError: degW != 0
    """
    _check_degW(degW)
    return SurfaceLattice(
        rho=2,
        basis_labels=('zeta', 'f'),
        gram=_ruled_elliptic_gram(degW),
        curve_generators=((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),
        ample_class=(Fraction(1), Fraction(1)),
        fiber_class=(Fraction(0), Fraction(1)),
        name='ruled_elliptic',
    )


def blowup_ruled_elliptic(degW: int = 0) -> SurfaceLattice:
    """椭圆直纹面在截面上一点 x 处的爆破

    基 (C_1, C_2, C_3) = (ρ*f - E_x, ρ*ζ - E_x, E_x),相交矩阵由 (ρ*ζ, ρ*f, E_x)
    下的相交形式经基变换得到。曲线生成元为三个基向量。

    Raises:
        ValidationError: degW != 0
    """
    _check_degW(degW)
    # (ρ*ζ, ρ*f, E_x) 下的相交形式: 拉回保持相交数,E_x² = -1,E_x 与拉回类正交
    base = _ruled_elliptic_gram(degW)
    old_gram = (
        (base[0][0], base[0][1], Fraction(0)),
        (base[1][0], base[1][1], Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(-1)),
    )
    # 列为新基在旧基下的坐标
    change = ((0, 1, 0), (1, 0, 0), (-1, -1, 1))
    columns = [tuple(Fraction(change[i][j]) for i in range(3)) for j in range(3)]
    gram = tuple(tuple(dot(ci, mat_vec(old_gram, cj)) for cj in columns) for ci in columns)
    units = tuple(tuple(Fraction(1 if i == j else 0) for i in range(3)) for j in range(3))
    lattice = SurfaceLattice(
        rho=3,
        basis_labels=('C1', 'C2', 'C3'),
        gram=gram,
        curve_generators=units,
        ample_class=(Fraction(2), Fraction(2), Fraction(3)),
        fiber_class=(Fraction(1), Fraction(0), Fraction(1)),
        name='blowup_ruled_elliptic',
    )
    mylog.debug(f'surface_geometry@blowup_ruled_elliptic | 相交矩阵: {[[str(x) for x in row] for row in gram]}')
    return lattice


def projective_plane() -> SurfaceLattice:
    """ℙ²: N¹ = Z·H,H² = 1"""
    return _lattice_from_document(load_base_document('p2'), 'p2')


def curve_base() -> SurfaceLattice:
    """曲线底空间: N¹ = Z·pt,除子与曲线的配对为次数"""
    return _lattice_from_document(load_base_document('curve'), 'curve')


_CONSTRUCTORS = {
    'ruled_elliptic': ruled_elliptic,
    'blowup_ruled_elliptic': blowup_ruled_elliptic,
}


def _lattice_from_document(doc: dict[str, Any], name: str) -> SurfaceLattice:
    kind = doc.get('kind')
    if kind == 'constructor':
        return _CONSTRUCTORS[doc['name']](degW=doc.get('degW', 0))
    return SurfaceLattice.create(
        basis=doc['basis'],
        gram=doc['gram'],
        curves=doc['curves'],
        ample=doc.get('ample'),
        eff=doc.get('eff'),
        fiber=doc.get('fiber'),
        base_dim=1 if kind == 'curve' else doc.get('base_dim', 2),
        name=name,
    )


def builtin_lattice(key: str) -> SurfaceLattice:
    """按名称取内置格

    Args:
        key: 'p2'、'builtin:blowup-ruled-elliptic' 等

    Raises:
        ValidationError: 名称不存在
    """
    name = key.removeprefix('builtin:').replace('-', '_')
    return _lattice_from_document(load_base_document(name), name)


def restricted_degree(lattice: SurfaceLattice, bundle: SurfaceBundle, curve: Sequence[Any]) -> Fraction:
    """deg(E|_C) = c1·C"""
    return intersect(lattice, bundle.c1, curve)


def restricted_slope(lattice: SurfaceLattice, bundle: SurfaceBundle, curve: Sequence[Any]) -> Fraction:
    """μ(E|_C) = c1·C / r"""
    return restricted_degree(lattice, bundle, curve) / bundle.rank


def restricted_hn(lattice: SurfaceLattice, bundle: SurfaceBundle, curve: Sequence[Any]) -> HNData:
    """可分解丛限制到曲线 C 上的 HN 数据: 各直和项的次数 M_i·C 分组

    Raises:
        PreconditionError: 丛没有直和项数据
    """
    if bundle.summands is None:
        raise PreconditionError('限制丛的 HN 数据需要直和项', 'E 可完全分解')
    return hn_of_line_bundle_sum(intersect(lattice, m, curve) for m in bundle.summands)


def slope(lattice: SurfaceLattice, bundle: SurfaceBundle, polarization: Sequence[Any]) -> Fraction:
    """μ_H(E) = c1·H / r

    base_dim <= 2 时 H 视为除子,与 c1 经相交形式配对。
    """
    h = validate_polarization(lattice, polarization)
    return intersect(lattice, bundle.c1, h) / bundle.rank


def discriminant(lattice: SurfaceLattice, bundle: SurfaceBundle) -> Fraction:
    """判别式 2r·c2 - (r-1)·c1²

    曲线底空间上恒为 0。

    Raises:
        ValidationError: base_dim >= 3

    Example:
        >>> p2 = projective_plane()
        >>> discriminant(p2, decomposable_bundle(p2, [[0], [2]]))
        Fraction(-4, 1)
    """
    if lattice.base_dim == 1:
        return Fraction(0)
    if lattice.base_dim >= 3:
        raise ValidationError('判别式只对曲线与曲面底空间有定义,高维底空间须声明假设', 'base.base_dim', lattice.base_dim)
    r = bundle.rank
    return 2 * r * bundle.c2 - (r - 1) * intersect(lattice, bundle.c1, bundle.c1)


def is_semistable_decomposable(lattice: SurfaceLattice, bundle: SurfaceBundle, polarization: Sequence[Any]) -> bool:
    """可分解丛关于极化 H 半稳定当且仅当所有 M_i·H 相等

    Raises:
        ValidationError: 极化类不合法
        SemistabilityUndecidedError: 没有直和项数据且调用方未声明半稳定
    """
    h = validate_polarization(lattice, polarization)
    if bundle.summands is None:
        if bundle.asserted_semistable:
            mylog.warning('surface_geometry@is_semistable_decomposable | 半稳定性由调用方声明,未经检验')
            return True
        raise SemistabilityUndecidedError()
    degrees = {intersect(lattice, m, h) for m in bundle.summands}
    return len(degrees) == 1


def decomposable_bundle(lattice: SurfaceLattice, summands: Iterable[Iterable[Any]]) -> SurfaceBundle:
    """E = M_1 ⊕ … ⊕ M_r,c1 = ΣM_i,c2 = Σ_{i<j} M_i·M_j(曲线与高维底空间取 0)

    Raises:
        ValidationError: 直和项为空或维数不符
    """
    ms = to_vectors(summands, 'bundle.summands', lattice.rho)
    if not ms:
        raise ValidationError('直和项不能为空', 'bundle.summands', [])
    c1 = tuple(sum((m[i] for m in ms), Fraction(0)) for i in range(lattice.rho))
    c2 = Fraction(0)
    if lattice.base_dim == 2:
        c2 = sum((intersect(lattice, ms[i], ms[j]) for i in range(len(ms)) for j in range(i + 1, len(ms))), Fraction(0))
    return SurfaceBundle(rank=len(ms), c1=c1, c2=c2, summands=ms)


def asserted_bundle(lattice: SurfaceLattice, rank: int, c1: Sequence[Any], c2: Any = 0) -> SurfaceBundle:
    """调用方声明半稳定且判别式为零的丛"""
    return SurfaceBundle(rank=rank, c1=to_vector(c1, 'bundle.c1', lattice.rho), c2=to_rational(c2, 'bundle.c2'), asserted_semistable=True)


def pullback_from_base_curve(lattice: SurfaceLattice, rank: int, degree: Any) -> SurfaceBundle:
    """底曲线上秩 r、次数 d 的半稳定丛的拉回: c1 = d·(纤维类),c2 = 0

    半稳定性在拉回下保持,因此标记为已声明。

    Raises:
        ValidationError: 格没有纤维类
    """
    if lattice.fiber_class is None:
        raise ValidationError('该底空间没有纤维类,无法构造拉回丛', 'base.fiber', None)
    d = to_rational(degree, 'bundle.degree')
    return SurfaceBundle(rank=validate_positive_int(rank, 'bundle.rank'), c1=scale(d, lattice.fiber_class), c2=Fraction(0), asserted_semistable=True)


def twist(lattice: SurfaceLattice, bundle: SurfaceBundle, line: Sequence[Any]) -> SurfaceBundle:
    """E ⊗ L: 直和项平移 L,c1 + rL,c2 + (r-1)c1·L + C(r,2)L²

    高维底空间上 c2 不参与计算,保持不变。
    """
    ell = to_vector(line, 'line', lattice.rho)
    r = bundle.rank
    c1 = add(bundle.c1, scale(r, ell))
    c2 = bundle.c2
    if lattice.base_dim == 2:
        c2 = bundle.c2 + (r - 1) * intersect(lattice, bundle.c1, ell) + comb(r, 2) * intersect(lattice, ell, ell)
    summands = None if bundle.summands is None else tuple(add(m, ell) for m in bundle.summands)
    return SurfaceBundle(rank=r, c1=c1, c2=c2, summands=summands, asserted_semistable=bundle.asserted_semistable)


__all__ = (
    'SurfaceBundle',
    'SurfaceLattice',
    'asserted_bundle',
    'blowup_ruled_elliptic',
    'builtin_lattice',
    'check_bundle',
    'curve_base',
    'decomposable_bundle',
    'discriminant',
    'intersect',
    'is_semistable_decomposable',
    'projective_plane',
    'pullback_from_base_curve',
    'restricted_degree',
    'restricted_hn',
    'restricted_slope',
    'ruled_elliptic',
    'slope',
    'twist',
    'validate_polarization',
)
