#!/usr/bin/env python3
"""
==============================================================
Description  : 工厂函数模块 - 提供便捷的对象创建接口
LastEditTime : 2026-10-18 11:10:00

本模块提供工厂函数,简化对象创建流程:
- create_cone_engine: 创建锥转换引擎
- default_engine: 进程内共享的默认引擎(按当前环境变量配置)
- create_operations: 创建文档执行器

设计理念:
- 简化创建流程
- 统一参数接口
- 引擎无状态,可安全共享
==============================================================
"""

from __future__ import annotations

from functools import lru_cache
from typing import TYPE_CHECKING

from .cfg import get_settings
from .engine import PplConeEngine

if TYPE_CHECKING:
    from .operations import GrassconeOperations
    from .protocols import IConeEngine


def create_cone_engine(max_dim: int | None = None) -> PplConeEngine:
    """创建锥转换引擎

    Args:
        max_dim: 最大环境维数,为None时读取 GRASSCONE_MAX_DIM(默认12)

    Returns:
        PplConeEngine: 引擎实例

    Example:
        >>> engine = create_cone_engine()
        >>> small = create_cone_engine(max_dim=4)
    """
    if max_dim is None:
        max_dim = get_settings().max_dim
    return PplConeEngine(max_dim=max_dim)


@lru_cache(maxsize=1)
def default_engine() -> PplConeEngine:
    """进程内共享的默认引擎

    引擎不持有可变状态,共享是安全的。
    调用 default_engine.cache_clear() 可在修改环境变量后重新读取配置。
    """
    return create_cone_engine()


def create_operations(engine: IConeEngine | None = None) -> GrassconeOperations:
    """创建文档执行器

    Args:
        engine: 锥转换引擎,为None时使用默认引擎

    Returns:
        GrassconeOperations: 执行器实例

    Example:
        >>> ops = create_operations()
        >>> report = ops.execute({'version': '1', 'query': {'command': 'theta', 'k': 2}, 'bundle': {'hn': [[1, 3], [2, 1]]}})
    """
    from .operations import GrassconeOperations

    return GrassconeOperations(engine or default_engine())


# 简短别名
create_engine = create_cone_engine
create_ops = create_operations

__all__ = ('create_cone_engine', 'create_engine', 'create_operations', 'create_ops', 'default_engine')
