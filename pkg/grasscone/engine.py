#!/usr/bin/env python3
"""
==============================================================
Description  : 锥转换引擎 - 基于 PPL 的精确双描述
LastEditTime : 2026-10-19 09:40:00

本模块提供锥的表示转换引擎:
- PplConeEngine: IConeEngine 的实现

做法:
- 约束按行清分母后写成 ppl.Linear_Expression,加入全空间 C_Polyhedron
- minimized_generators() 给出极射线与线性空间基,原点(point)丢弃
- 规范化时先用 PPL 去掉冗余生成元,再用 sympy 求线性空间的行最简基,
  射线沿线性空间正交投影后本原化

职责边界:
✅ 负责: 生成元枚举、规范化、维数上限
❌ 不负责: Cone 值对象、对偶/包含等高层语义(见 ratcone)
==============================================================
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

import ppl
from sympy import Matrix, Rational
from xtlog import mylog

from .linalg import Vector, is_zero, leading_sign, neg, primitive
from .protocols import ConeGenerators, IConeEngine
from .validators import ValidationError, validate_dim, validate_positive_int


def _expression(v: Sequence[Fraction]) -> ppl.Linear_Expression:
    return ppl.Linear_Expression([int(x) for x in primitive(v)], 0)


def _coefficients(generator: ppl.Generator, dim: int) -> Vector:
    coeffs = [Fraction(int(c)) for c in generator.coefficients()]
    return tuple(coeffs + [Fraction(0)] * (dim - len(coeffs)))


def _to_matrix(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return Matrix([[Rational(x.numerator, x.denominator) for x in row] for row in rows])


def _to_vector(column: Matrix) -> Vector:
    return tuple(Fraction(int(x.p), int(x.q)) for x in column)


def _split(polyhedron: ppl.C_Polyhedron, dim: int) -> ConeGenerators:
    rays: list[Vector] = []
    lines: list[Vector] = []
    for g in polyhedron.minimized_generators():
        if g.is_ray():
            rays.append(_coefficients(g, dim))
        elif g.is_line():
            lines.append(_coefficients(g, dim))
    return ConeGenerators(dim=dim, rays=tuple(rays), lines=tuple(lines))


class PplConeEngine(IConeEngine):
    """PPL 双描述引擎

    Example:
        >>> engine = PplConeEngine(max_dim=12)
        >>> gens = engine.enumerate([(1, 0), (1, 1)], dim=2)
        >>> engine.canonicalize(gens)
        ((Fraction(0, 1), Fraction(1, 1)), (Fraction(1, 1), Fraction(-1, 1)))
    """

    def __init__(self, max_dim: int = 12):
        """初始化引擎

        Args:
            max_dim: 允许的最大环境维数,默认12
        """
        self._max_dim = validate_positive_int(max_dim, 'max_dim')
        mylog.success(f'PplConeEngine | 引擎已初始化: max_dim={self._max_dim}')

    def __str__(self) -> str:
        return f'PplConeEngine(max_dim={self._max_dim})'

    def __repr__(self) -> str:
        return f'PplConeEngine(max_dim={self._max_dim!r})'

    @property
    def max_dim(self) -> int:
        return self._max_dim

    def _check_dim(self, dim: int) -> int:
        validate_positive_int(dim, 'dim')
        if dim > self._max_dim:
            raise ValidationError(f'锥维数超过上限 {self._max_dim} (GRASSCONE_MAX_DIM)', 'dim', dim)
        return dim

    def _check_input(self, constraints: Sequence[Sequence[Fraction]], dim: int) -> list[Vector]:
        self._check_dim(dim)
        return [tuple(Fraction(x) for x in validate_dim(a, dim, f'constraints[{i}]')) for i, a in enumerate(constraints)]

    def enumerate(self, constraints: Sequence[Sequence[Fraction]], dim: int) -> ConeGenerators:
        """枚举 {x : a·x >= 0} 的极射线与线性空间基

        Args:
            constraints: 半空间法向量组
            dim: 环境维数

        Returns:
            ConeGenerators: 极射线(模线性空间)与直线基

        Raises:
            ValidationError: 维数不符或超过上限
        """
        rows = self._check_input(constraints, dim)
        polyhedron = ppl.C_Polyhedron(dim, 'universe')
        for a in rows:
            # 零约束恒成立
            if not is_zero(a):
                polyhedron.add_constraint(_expression(a) >= 0)

        result = _split(polyhedron, dim)
        mylog.debug(f'PplConeEngine@enumerate | 约束 {len(rows)} 条, 维数 {dim}: 射线 {len(result.rays)} 条, 直线 {len(result.lines)} 条')
        return result

    def minimize(self, generators: ConeGenerators) -> ConeGenerators:
        """去掉冗余生成元: 射线只保留极射线(模线性空间),直线取一组基"""
        dim = self._check_dim(generators.dim)
        polyhedron = ppl.C_Polyhedron(dim, 'empty')
        polyhedron.add_generator(ppl.point())
        for r in generators.rays:
            if not is_zero(r):
                polyhedron.add_generator(ppl.ray(_expression(r)))
        for line in generators.lines:
            if not is_zero(line):
                polyhedron.add_generator(ppl.line(_expression(line)))
        return _split(polyhedron, dim)

    def span_dim(self, generators: ConeGenerators) -> int:
        """生成元张成的线性子空间维数"""
        basis = self.minimize(generators)
        vectors = basis.rays + basis.lines
        return _to_matrix(vectors).rank() if vectors else 0

    def canonicalize(self, generators: ConeGenerators) -> tuple[Vector, ...]:
        """规范化生成元

        - 直线: 取线性空间的行最简基,本原化(首个非零分量为正),以 (l, -l) 成对输出
        - 射线: 沿线性空间正交投影,本原化,去重;方向保持不变
        - 全部按字典序排列

        Returns:
            tuple: 规范生成元
        """
        minimal = self.minimize(generators)
        line_vectors: list[Vector] = []
        basis: Matrix | None = None
        if minimal.lines:
            reduced, pivots = _to_matrix(minimal.lines).rref()
            basis = reduced[: len(pivots), :]
            for i in range(basis.rows):
                line = primitive(_to_vector(basis.row(i)))
                if leading_sign(line) < 0:
                    line = neg(line)
                line_vectors.extend((line, neg(line)))

        ray_vectors: set[Vector] = set()
        for ray in minimal.rays:
            column = _to_matrix([ray]).T
            if basis is not None:
                # r - Lᵀ(L Lᵀ)⁻¹ L r
                column = column - basis.T * (basis * basis.T).inv() * (basis * column)
            projected = _to_vector(column)
            if not is_zero(projected):
                ray_vectors.add(primitive(projected))

        return tuple(sorted(set(line_vectors) | ray_vectors))


__all__ = ('PplConeEngine',)
