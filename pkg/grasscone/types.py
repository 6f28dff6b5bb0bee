#!/usr/bin/env python3
"""
==============================================================
Description  : 有理数标量与向量的类型定义及编解码
LastEditTime : 2026-10-18 10:00:00

本模块提供grasscone核心唯一的标量类型及其序列化规则:
- Rational: 精确有理数(fractions.Fraction)
- RationalVector: 有理数元组,表示某组命名基下的除子类坐标
- to_rational / to_vector: 从 int / "p/q" 字符串 / Fraction 解析
- encode_rational / encode_vector: 输出为规范的 "p/q" 字符串
- encode_integer_vector: 输出本原整向量(规范生成元)

浮点数一律拒绝: 边界上的锥成员判定不允许舍入误差。
==============================================================
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Any

from .validators import ValidationError

type Rational = Fraction
type RationalVector = tuple[Fraction, ...]

_RATIONAL_PATTERN = re.compile(r'^\s*[+-]?\d+\s*(/\s*\d+\s*)?$')
_WHITESPACE = re.compile(r'\s+')


def to_rational(value: Any, field: str | None = None) -> Fraction:
    """将输入值解析为精确有理数

    Args:
        value: int、Fraction 或形如 "p/q" / "p" 的字符串
        field: 字段名(用于错误消息)

    Returns:
        Fraction: 解析后的有理数

    Raises:
        ValidationError: 值为浮点数、布尔值、格式非法或分母为零

    Example:
        >>> to_rational('3/6')
        Fraction(1, 2)
        >>> to_rational(4)
        Fraction(4, 1)
    """
    if isinstance(value, bool):
        raise ValidationError('布尔值不是有理数', field, value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_PATTERN.match(value):
            raise ValidationError('有理数格式无效,应为 "p/q"', field, value)
        try:
            return Fraction(_WHITESPACE.sub('', value))
        except ZeroDivisionError as e:
            raise ValidationError('分母不能为零', field, value) from e
        except ValueError as e:
            raise ValidationError('有理数格式无效,应为 "p/q"', field, value) from e
    if isinstance(value, float):
        raise ValidationError('不接受浮点数,请使用 "p/q" 字符串', field, value)
    raise ValidationError(f'无法解析为有理数的类型: {type(value).__name__}', field, value)


def to_vector(values: Iterable[Any], field: str | None = None, dim: int | None = None) -> RationalVector:
    """将序列解析为有理向量

    Args:
        values: 元素可被 to_rational 接受的序列
        field: 字段名(用于错误消息)
        dim: 期望的维数(可选)

    Returns:
        RationalVector: 有理数元组

    Raises:
        ValidationError: 元素非法或维数不符
    """
    if isinstance(values, (str, bytes)):
        raise ValidationError('向量必须是序列', field, values)
    try:
        items = list(values)
    except TypeError as e:
        raise ValidationError('向量必须是序列', field, values) from e
    vector = tuple(to_rational(v, f'{field}[{i}]' if field else f'[{i}]') for i, v in enumerate(items))
    if dim is not None and len(vector) != dim:
        raise ValidationError(f'向量维数应为 {dim},实际为 {len(vector)}', field, values)
    return vector


def to_vectors(rows: Iterable[Iterable[Any]], field: str | None = None, dim: int | None = None) -> tuple[RationalVector, ...]:
    """将二维序列解析为有理向量元组,所有向量维数必须一致"""
    vectors = tuple(to_vector(row, f'{field}[{i}]' if field else f'[{i}]') for i, row in enumerate(rows))
    expected = dim if dim is not None else (len(vectors[0]) if vectors else None)
    for i, vec in enumerate(vectors):
        if len(vec) != expected:
            raise ValidationError(f'向量维数应为 {expected},实际为 {len(vec)}', f'{field}[{i}]' if field else f'[{i}]', list(vec))
    return vectors


def encode_rational(value: Fraction | int) -> str:
    """将有理数编码为规范字符串: 整数为 "p",否则为 "p/q" """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def encode_vector(vector: Sequence[Fraction | int]) -> list[str]:
    """将有理向量编码为 "p/q" 字符串列表"""
    return [encode_rational(v) for v in vector]


def encode_integer_vector(vector: Sequence[Fraction | int]) -> list[int]:
    """将整值有理向量编码为 int 列表

    Raises:
        ValidationError: 向量含非整数分量
    """
    result = []
    for v in vector:
        v = Fraction(v)
        if v.denominator != 1:
            raise ValidationError('规范生成元必须是整向量', None, list(vector))
        result.append(v.numerator)
    return result


__all__ = (
    'Rational',
    'RationalVector',
    'encode_integer_vector',
    'encode_rational',
    'encode_vector',
    'to_rational',
    'to_vector',
    'to_vectors',
)
