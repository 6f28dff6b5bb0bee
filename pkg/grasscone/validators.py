#!/usr/bin/env python3
"""
==============================================================
Description  : 异常类型与输入校验工具
LastEditTime : 2026-10-18 10:10:00

本模块提供grasscone所有层共用的异常与校验函数:

异常:
- ValidationError: 输入数据非法(维数不符、k越界、格式错误等)
- PreconditionError: 定理假设不成立(半稳定性、判别式为零、底空间 nef=eff)
- SemistabilityUndecidedError: 无法由数值数据判定半稳定性,需调用方声明

校验函数:
- validate_rank_index: 1 <= k <= r
- validate_dim: 向量维数
- validate_positive_int: 正整数
- validate_symmetric: 对称矩阵
- validate_choice: 已注册名称(内置底空间等)
==============================================================
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Any


class ValidationError(Exception):
    """验证错误异常类

    当输入数据验证失败时抛出,包含详细的错误信息和验证失败的字段路径。
    命令行中对应退出码 2。
    """

    def __init__(self, message: str, field: str | None = None, value: Any = None) -> None:
        """初始化验证错误

        Args:
            message: 错误消息
            field: 验证失败的字段路径(可选),如 'bundle.summands[1]'
            value: 验证失败的值(可选)
        """
        self.message = message
        self.field = field
        self.value = value
        super().__init__(message)

    def __str__(self) -> str:
        """格式化错误信息"""
        if self.field:
            return f"字段 '{self.field}' 验证失败: {self.message} (值: {self.value})"
        return f'验证失败: {self.message}'


class PreconditionError(Exception):
    """定理假设不成立

    输入本身合法,但不满足所调用公式的数学前提(例如判别式非零)。
    结果不会被静默计算,命令行中对应退出码 3。
    """

    def __init__(self, message: str, hypothesis: str) -> None:
        """初始化前提错误

        Args:
            message: 错误消息
            hypothesis: 被违反的假设的简短描述
        """
        self.message = message
        self.hypothesis = hypothesis
        super().__init__(message)

    def __str__(self) -> str:
        return f'{self.message}; 违反假设: {self.hypothesis}'


class SemistabilityUndecidedError(PreconditionError):
    """半稳定性无法由 (r, c1, c2) 判定

    仅对可完全分解的丛可以检验半稳定性;其余情形必须由调用方声明
    (asserted_semistable=True)。
    """

    def __init__(self, message: str = '缺少直和项数据,半稳定性必须由调用方声明') -> None:
        super().__init__(message, 'E 半稳定 (需 asserted_semistable)')


def validate_positive_int(value: Any, field: str | None = None) -> int:
    """验证正整数

    Raises:
        ValidationError: 不是 int 或不大于 0
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError('必须是整数', field, value)
    if value < 1:
        raise ValidationError('必须是正整数', field, value)
    return value


def validate_rank_index(k: Any, r: int, field: str | None = 'k') -> int:
    """验证 Grassmann 商的秩 k 满足 1 <= k <= r

    Args:
        k: 待验证的整数
        r: 丛的秩
        field: 字段名(用于错误消息)

    Returns:
        int: 验证通过的 k

    Raises:
        ValidationError: k 不是整数或越界
    """
    if isinstance(k, bool) or not isinstance(k, int):
        raise ValidationError('k 必须是整数', field, k)
    if not 1 <= k <= r:
        raise ValidationError(f'k 必须满足 1 <= k <= {r}', field, k)
    return k


def validate_dim(vector: Sequence[Any], dim: int, field: str | None = None) -> Sequence[Any]:
    """验证向量维数

    Raises:
        ValidationError: 维数不符
    """
    if len(vector) != dim:
        raise ValidationError(f'维数不匹配: 期望 {dim},实际 {len(vector)}', field, list(vector))
    return vector


def validate_symmetric(matrix: Sequence[Sequence[Any]], field: str | None = None) -> Sequence[Sequence[Any]]:
    """验证方阵且对称

    Raises:
        ValidationError: 非方阵或不对称
    """
    n = len(matrix)
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValidationError(f'第 {i} 行长度应为 {n}', field, [list(r) for r in matrix])
    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] != matrix[j][i]:
                raise ValidationError(f'矩阵不对称: 位置 ({i},{j}) 与 ({j},{i}) 不等', field, [list(r) for r in matrix])
    return matrix


def validate_choice(name: str, choices: Sequence[str], label: str, field: str | None = None, raw: Any = None) -> str:
    """验证名称属于已注册的选项

    Args:
        name: 规范化后的名称
        choices: 已注册的名称
        label: 出错时显示的类别,如 "内置底空间"
        field: 字段名
        raw: 用户输入的原始写法,默认为 name

    Raises:
        ValidationError: 名称未注册
    """
    if name not in choices:
        raise ValidationError(f'未知的{label},可选: {sorted(choices)}', field, name if raw is None else raw)
    return name


__all__ = (
    'PreconditionError',
    'SemistabilityUndecidedError',
    'ValidationError',
    'validate_dim',
    'validate_choice',
    'validate_positive_int',
    'validate_rank_index',
    'validate_symmetric',
)
