#!/usr/bin/env python3
"""
==============================================================
Description  : 有理多面体锥 - 值对象与锥运算
LastEditTime : 2026-10-18 11:30:00

本模块提供精确有理数上的多面体锥:
- Cone: 不可变值对象,携带 V-表示(生成元)和/或 H-表示(半空间)
- v_to_h / h_to_v: 表示转换
- dual: 对偶锥(规范 V-表示)
- canonical: 规范 V-表示(本原整向量、去冗余、字典序)
- contains / includes / equals: 成员、包含、相等判定

约定:
- 半空间向量 h 表示 {x : h·x >= 0}
- 零锥: 生成元为空; 全空间: 半空间为空
- 非尖锥的线性空间以 ± 生成元对给出
- 所有运算都可通过 engine 参数指定引擎,默认使用 factory.default_engine()
==============================================================
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from xtlog import mylog

from .factory import default_engine
from .linalg import Vector, dot, neg
from .protocols import ConeGenerators, IConeEngine
from .types import encode_vector, to_vector, to_vectors
from .validators import ValidationError, validate_positive_int


@dataclass(frozen=True)
class Cone:
    """有理多面体锥

    Attributes:
        dim: 环境维数
        generators: 生成元(V-表示),可为 None
        halfspaces: 半空间法向量(H-表示),可为 None
        canonical: 生成元是否为规范形式

    Example:
        >>> c = Cone.from_generators([(1, 0), (1, 1)])
        >>> c.contains((2, 1))
        True
    """

    dim: int
    generators: tuple[Vector, ...] | None = None
    halfspaces: tuple[Vector, ...] | None = None
    canonical: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        validate_positive_int(self.dim, 'dim')
        if self.generators is None and self.halfspaces is None:
            raise ValidationError('生成元与半空间至少提供一种', 'cone', None)
        if self.generators is not None:
            object.__setattr__(self, 'generators', to_vectors(self.generators, 'generators', self.dim))
        if self.halfspaces is not None:
            object.__setattr__(self, 'halfspaces', to_vectors(self.halfspaces, 'halfspaces', self.dim))
        if self.canonical:
            self._check_canonical()

    def _check_canonical(self) -> None:
        gens = self.generators
        if gens is None:
            raise ValidationError('规范锥必须带有生成元', 'generators', None)
        if list(gens) != sorted(set(gens)):
            raise ValidationError('规范生成元必须两两不同且按字典序排列', 'generators', [list(g) for g in gens])
        for i, g in enumerate(gens):
            if any(x.denominator != 1 for x in g):
                raise ValidationError('规范生成元必须是整向量', f'generators[{i}]', list(g))

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[Any]], dim: int | None = None) -> Cone:
        """由生成元构造锥

        Args:
            generators: 生成元组,元素为 int / Fraction / "p/q"
            dim: 环境维数,生成元为空时必须给出
        """
        gens = tuple(to_vector(g, f'generators[{i}]') for i, g in enumerate(generators))
        if dim is None:
            if not gens:
                raise ValidationError('生成元为空时必须给出 dim', 'dim', None)
            dim = len(gens[0])
        return cls(dim=dim, generators=gens)

    @classmethod
    def from_halfspaces(cls, halfspaces: Iterable[Sequence[Any]], dim: int | None = None) -> Cone:
        """由半空间构造锥,半空间为空时表示全空间"""
        hs = tuple(to_vector(h, f'halfspaces[{i}]') for i, h in enumerate(halfspaces))
        if dim is None:
            if not hs:
                raise ValidationError('半空间为空时必须给出 dim', 'dim', None)
            dim = len(hs[0])
        return cls(dim=dim, halfspaces=hs)

    # 以下结构性质基于默认引擎计算的规范形式
    @cached_property
    def canonical_generators(self) -> tuple[Vector, ...]:
        return canonical(self).generators or ()

    @cached_property
    def lineality_dim(self) -> int:
        gens = set(self.canonical_generators)
        return sum(1 for g in gens if neg(g) in gens) // 2

    @cached_property
    def dimension(self) -> int:
        """锥张成的线性子空间维数"""
        gens = self.canonical_generators
        return default_engine().span_dim(ConeGenerators(dim=self.dim, rays=gens, lines=())) if gens else 0

    @property
    def is_pointed(self) -> bool:
        return self.lineality_dim == 0

    @property
    def is_full_dimensional(self) -> bool:
        return self.dimension == self.dim

    @property
    def is_simplicial(self) -> bool:
        """尖锥且极射线个数等于维数"""
        return self.is_pointed and len(self.canonical_generators) == self.dimension

    def contains(self, v: Sequence[Any], engine: IConeEngine | None = None) -> bool:
        return contains(self, v, engine)

    def to_dict(self) -> dict[str, Any]:
        """导出为字典,有理数编码为 "p/q" """
        return {
            'dim': self.dim,
            'generators': None if self.generators is None else [encode_vector(g) for g in self.generators],
            'halfspaces': None if self.halfspaces is None else [encode_vector(h) for h in self.halfspaces],
            'canonical': self.canonical,
        }


def _engine(engine: IConeEngine | None) -> IConeEngine:
    return engine if engine is not None else default_engine()


def _check_same_dim(a: Cone, b: Cone) -> None:
    if a.dim != b.dim:
        raise ValidationError(f'维数不匹配: {a.dim} 与 {b.dim}', 'cone', (a.dim, b.dim))


def v_to_h(cone: Cone, engine: IConeEngine | None = None) -> Cone:
    """由生成元计算半空间表示

    生成元组 G 的对偶锥 {h : h·g >= 0} 的生成元即 cone(G) 的面法向量;
    等式约束以 ± 对给出。

    Args:
        cone: 带生成元的锥
        engine: 锥转换引擎

    Returns:
        Cone: 保留原生成元并附带规范半空间的新锥

    Raises:
        ValidationError: 缺少生成元
    """
    if cone.generators is None:
        raise ValidationError('v_to_h 需要生成元', 'generators', None)
    eng = _engine(engine)
    halfspaces = eng.canonicalize(eng.enumerate(cone.generators, cone.dim))
    mylog.debug(f'ratcone@v_to_h | 生成元 {len(cone.generators)} 个 -> 半空间 {len(halfspaces)} 个')
    return Cone(dim=cone.dim, generators=cone.generators, halfspaces=halfspaces, canonical=cone.canonical)


def h_to_v(cone: Cone, engine: IConeEngine | None = None) -> Cone:
    """由半空间计算规范生成元

    Raises:
        ValidationError: 缺少半空间
    """
    if cone.halfspaces is None:
        raise ValidationError('h_to_v 需要半空间', 'halfspaces', None)
    eng = _engine(engine)
    generators = eng.canonicalize(eng.enumerate(cone.halfspaces, cone.dim))
    mylog.debug(f'ratcone@h_to_v | 半空间 {len(cone.halfspaces)} 个 -> 生成元 {len(generators)} 个')
    return Cone(dim=cone.dim, generators=generators, halfspaces=cone.halfspaces, canonical=True)


def canonical(cone: Cone, engine: IConeEngine | None = None) -> Cone:
    """规范 V-表示

    V-表示的锥先求面法向量再求回生成元,以去掉冗余生成元。
    已规范的锥原样返回。
    """
    if cone.canonical:
        return cone
    if cone.generators is None:
        return h_to_v(cone, engine)
    eng = _engine(engine)
    facets = eng.enumerate(cone.generators, cone.dim)
    generators = eng.canonicalize(eng.enumerate(facets.as_constraints(), cone.dim))
    return Cone(dim=cone.dim, generators=generators, halfspaces=cone.halfspaces, canonical=True)


def dual(cone: Cone, engine: IConeEngine | None = None) -> Cone:
    """对偶锥 {y : y·x >= 0, x ∈ cone},规范 V-表示

    Example:
        >>> dual(Cone.from_generators([(1, 0), (1, 1)])).generators
        ((Fraction(0, 1), Fraction(1, 1)), (Fraction(1, 1), Fraction(-1, 1)))
    """
    eng = _engine(engine)
    if cone.generators is not None:
        generators = eng.canonicalize(eng.enumerate(cone.generators, cone.dim))
        return Cone(dim=cone.dim, generators=generators, halfspaces=cone.generators, canonical=True)
    # 仅有 H-表示时对偶锥就是半空间法向量张成的锥
    return canonical(Cone(dim=cone.dim, generators=cone.halfspaces), eng)


def _halfspaces_of(cone: Cone, engine: IConeEngine | None) -> tuple[Vector, ...]:
    if cone.halfspaces is not None:
        return cone.halfspaces
    return v_to_h(cone, engine).halfspaces or ()


def contains(cone: Cone, v: Sequence[Any], engine: IConeEngine | None = None) -> bool:
    """v 是否属于锥(等价于满足全部半空间)

    Raises:
        ValidationError: 维数不符
    """
    vec = to_vector(v, 'v', cone.dim)
    return all(dot(h, vec) >= 0 for h in _halfspaces_of(cone, engine))


def includes(outer: Cone, inner: Cone, engine: IConeEngine | None = None) -> bool:
    """inner 的每个生成元都属于 outer"""
    _check_same_dim(outer, inner)
    halfspaces = _halfspaces_of(outer, engine)
    inner_gens = inner.generators if inner.generators is not None else canonical(inner, engine).generators or ()
    return all(all(dot(h, g) >= 0 for h in halfspaces) for g in inner_gens)


def equals(a: Cone, b: Cone, engine: IConeEngine | None = None) -> bool:
    """通过规范形式判定两锥相等

    Raises:
        ValidationError: 维数不同
    """
    _check_same_dim(a, b)
    return canonical(a, engine).generators == canonical(b, engine).generators


__all__ = ('Cone', 'canonical', 'contains', 'dual', 'equals', 'h_to_v', 'includes', 'v_to_h')
