#!/usr/bin/env python3
"""
==============================================================
Description  : 抽象接口定义 - 锥转换引擎的契约
LastEditTime : 2026-10-18 10:40:00

本模块定义grasscone的核心抽象接口,遵循依赖倒置原则:
- IConeEngine: 半空间 <-> 生成元转换引擎接口
- ConeGenerators: 引擎输出(射线 + 直线基)

ratcone 中的所有锥运算只依赖 IConeEngine,
具体实现见 engine.PplConeEngine。
==============================================================
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vector


@dataclass(frozen=True)
class ConeGenerators:
    """{x : a·x >= 0} 的生成元

    Attributes:
        dim: 环境维数
        rays: 极射线(模去线性空间)
        lines: 线性空间的基
    """

    dim: int
    rays: tuple[Vector, ...]
    lines: tuple[Vector, ...]

    def as_constraints(self) -> tuple[Vector, ...]:
        """把直线展开为 ± 对,得到可直接作为半空间组使用的向量"""
        return self.rays + self.lines + tuple(tuple(-x for x in line) for line in self.lines)


class IConeEngine(ABC):
    """锥转换引擎接口

    职责:
    - 由半空间组枚举生成元(射线 + 直线)
    - 将生成元整理为规范形式

    同一例程既做 H->V 也做 V->H: 生成元组 G 的对偶锥 {h : h·g >= 0}
    的生成元恰好就是 cone(G) 的面法向量。

    实现类: PplConeEngine
    """

    @property
    @abstractmethod
    def max_dim(self) -> int:
        """允许的最大环境维数"""
        pass

    @abstractmethod
    def enumerate(self, constraints: Sequence[Sequence[Fraction]], dim: int) -> ConeGenerators:
        """枚举 {x : a·x >= 0 对所有 a} 的生成元

        Args:
            constraints: 半空间法向量组
            dim: 环境维数

        Returns:
            ConeGenerators: 极射线与线性空间基
        """
        pass

    @abstractmethod
    def span_dim(self, generators: ConeGenerators) -> int:
        """生成元张成的线性子空间维数"""
        pass

    @abstractmethod
    def canonicalize(self, generators: ConeGenerators) -> tuple[Vector, ...]:
        """规范化生成元

        Returns:
            tuple: 本原整向量、两两不同、字典序排列、均为极射线;直线以 ± 对给出
        """
        pass


__all__ = ('ConeGenerators', 'IConeEngine')
