#!/usr/bin/env python3
"""
==============================================================
Description  : 配置模块 - 内置底空间文档与运行参数
LastEditTime : 2026-10-18 10:30:00

本模块提供以下核心功能:
- BASE_CFG: 内置底空间文档枚举类,集中管理随包发布的格数据
- GrassconeSettings: 运行参数(锥维数上限、批处理并发数),从环境变量读取
- get_settings: 读取当前环境下的运行参数
- load_base_document: 按名称取出内置底空间文档

环境变量:
- GRASSCONE_MAX_DIM: 锥维数上限,默认 12,限制双描述的组合爆炸
- GRASSCONE_BATCH_WORKERS: 批处理进程数,默认 CPU 核数
==============================================================
"""

from __future__ import annotations

import copy
import os
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from .validators import ValidationError, validate_choice


class BASE_CFG(Enum):  # noqa
    """内置底空间文档枚举类

    每个值是包含文档字典的元组(与 InputDocument.base 同构)。
    'constructor' 类型的文档由 surface_geometry 中的同名构造函数生成。
    """

    p2 = (
        {
            'kind': 'surface-lattice',
            'basis': ['H'],
            'gram': [[1]],
            'curves': [[1]],
            'ample': [1],
        },
    )
    curve = (
        {
            'kind': 'curve',
            'basis': ['pt'],
            'gram': [[1]],
            'curves': [[1]],
            'ample': [1],
            'fiber': [1],
        },
    )
    ruled_elliptic = ({'kind': 'constructor', 'name': 'ruled_elliptic', 'degW': 0},)
    blowup_ruled_elliptic = ({'kind': 'constructor', 'name': 'blowup_ruled_elliptic', 'degW': 0},)

    default = p2


class GrassconeSettings(BaseModel):
    """运行参数"""

    model_config = ConfigDict(frozen=True)

    max_dim: int = Field(default=12, ge=1, description='锥的最大环境维数')
    batch_workers: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1, description='批处理并发进程数')


def get_settings(environ: dict[str, str] | None = None) -> GrassconeSettings:
    """从环境变量读取运行参数

    Args:
        environ: 环境变量字典,默认 os.environ

    Returns:
        GrassconeSettings: 运行参数

    Raises:
        ValidationError: 环境变量不是合法的正整数

    Example:
        >>> get_settings({'GRASSCONE_MAX_DIM': '8'}).max_dim
        8
    """
    env = os.environ if environ is None else environ
    values: dict[str, Any] = {}
    for key, name in (('max_dim', 'GRASSCONE_MAX_DIM'), ('batch_workers', 'GRASSCONE_BATCH_WORKERS')):
        raw = env.get(name)
        if raw is None or raw == '':
            continue
        try:
            values[key] = int(raw)
        except ValueError as e:
            raise ValidationError('环境变量必须是整数', name, raw) from e
    if values.get('max_dim', 1) < 1 or values.get('batch_workers', 1) < 1:
        raise ValidationError('环境变量必须是正整数', 'GRASSCONE_MAX_DIM/GRASSCONE_BATCH_WORKERS', values)
    return GrassconeSettings(**values)


def load_base_document(key: str = 'default') -> dict[str, Any]:
    """取出内置底空间文档的副本

    Args:
        key: 文档名,接受 'p2'、'builtin:p2'、'blowup-ruled-elliptic' 等写法

    Returns:
        dict: 文档字典副本

    Raises:
        ValidationError: 名称不存在

    Example:
        >>> load_base_document('builtin:p2')['gram']
        [[1]]
    """
    name = key.removeprefix('builtin:').replace('-', '_')
    validate_choice(name, tuple(BASE_CFG.__members__), '内置底空间', 'base', key)
    return copy.deepcopy(BASE_CFG[name].value[0])


__all__ = ('BASE_CFG', 'GrassconeSettings', 'get_settings', 'load_base_document')
