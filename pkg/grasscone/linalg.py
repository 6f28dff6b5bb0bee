#!/usr/bin/env python3
"""
==============================================================
Description  : 精确有理向量运算
LastEditTime : 2026-10-19 09:30:00

本模块在 Fraction 上提供锥运算与相交数所需的向量工具:
- dot / add / scale / neg: 向量运算
- mat_vec: 矩阵乘向量
- primitive: 清分母、除以 gcd,得到本原整向量(保持方向)
- leading_sign: 首个非零分量的符号

矩阵分解(行最简形、秩、投影)交给 engine 中的 sympy。
==============================================================
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

type Vector = tuple[Fraction, ...]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """标准内积"""
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def scale(c: Fraction | int, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def neg(a: Sequence[Fraction]) -> Vector:
    return tuple(-x for x in a)


def is_zero(a: Sequence[Fraction]) -> bool:
    return not any(a)


def mat_vec(matrix: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    """矩阵乘列向量"""
    return tuple(dot(row, v) for row in matrix)


def primitive(v: Sequence[Fraction]) -> Vector:
    """正数倍缩放为本原整向量(分量为整数且 gcd 为 1),方向不变

    零向量原样返回。
    """
    if is_zero(v):
        return tuple(Fraction(0) for _ in v)
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    return tuple(Fraction(x // g) for x in ints)


def leading_sign(v: Sequence[Fraction]) -> int:
    """第一个非零分量的符号,零向量返回 0"""
    for x in v:
        if x:
            return 1 if x > 0 else -1
    return 0


__all__ = (
    'Vector',
    'add',
    'dot',
    'is_zero',
    'leading_sign',
    'mat_vec',
    'neg',
    'primitive',
    'scale',
)
