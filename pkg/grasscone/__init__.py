#!/usr/bin/env python3
"""
==============================================================
Description  : grasscone 主模块初始化
LastEditTime : 2026-10-18 15:00:00

grasscone 用精确有理数计算 Grassmann 丛 Gr(k,E) 的 nef 锥与拟有效锥,
并提供通用的有理多面体锥引擎,采用扁平化架构设计

核心架构:
- protocols / engine: 锥转换引擎接口与基于 PPL 的实现
- ratcone: 锥值对象与对偶、包含、相等运算
- curve_bundles: 曲线上的 HN 数据与 θ/ζ
- surface_geometry: 曲面相交理论、判别式与半稳定性
- grassmann_cones: λ 类、Eff¹、Nef¹、相等性报告与塔
- schema / operations / cli: 输入文档、执行器与命令行

设计原则:
- 只用 Fraction,不用浮点
- 定理假设不成立时报错,不返回错误结果
- 所有值对象不可变,运算为纯函数
==============================================================
"""

from __future__ import annotations

__version__ = '0.1.0'

# ============ 配置 ============
from .cfg import BASE_CFG, GrassconeSettings, get_settings, load_base_document

# ============ 曲线上的丛 ============
from .curve_bundles import (
    CurveGrassmannCones,
    HNData,
    curve_cones,
    fiber_product_cones,
    fiber_product_nef_equals_eff,
    hn_of_line_bundle_sum,
    is_semistable_by_cones,
    multi_fiber_product_cones,
    theta,
    zeta,
)

# ============ 核心架构组件 ============
from .engine import PplConeEngine

# ============ 工厂函数 ============
from .factory import create_cone_engine, create_engine, create_operations, create_ops, default_engine

# ============ Grassmann 丛的锥 ============
from .grassmann_cones import (
    EqualityReport,
    GrassmannDivisorBasis,
    LambdaClass,
    base_eff_cone,
    base_nef_cone,
    eff_cone,
    lambda_class,
    nef_cone_decomposable,
    nef_cone_surface,
    nef_eff_equality_report,
    tower_cones,
)

# ============ 文档执行 ============
from .operations import GrassconeOperations, Report, execute_batch, summary_dataframe
from .protocols import ConeGenerators, IConeEngine

# ============ 锥运算 ============
from .ratcone import Cone, canonical, contains, dual, equals, h_to_v, includes, v_to_h
from .schema import InputDocument, parse_document

# ============ 曲面几何 ============
from .surface_geometry import (
    SurfaceBundle,
    SurfaceLattice,
    asserted_bundle,
    blowup_ruled_elliptic,
    builtin_lattice,
    curve_base,
    decomposable_bundle,
    discriminant,
    intersect,
    is_semistable_decomposable,
    projective_plane,
    pullback_from_base_curve,
    restricted_degree,
    restricted_hn,
    restricted_slope,
    ruled_elliptic,
    slope,
    twist,
)

# ============ 类型与异常 ============
from .types import Rational, RationalVector, encode_rational, encode_vector, to_rational, to_vector
from .validators import PreconditionError, SemistabilityUndecidedError, ValidationError

__all__ = (
    # ============ 版本信息 ============
    '__version__',
    # ============ 配置 ============
    'BASE_CFG',
    'GrassconeSettings',
    'get_settings',
    'load_base_document',
    # ============ 引擎与工厂 ============
    'IConeEngine',
    'ConeGenerators',
    'PplConeEngine',
    'create_cone_engine',
    'create_engine',
    'create_operations',
    'create_ops',
    'default_engine',
    # ============ 锥运算 ============
    'Cone',
    'canonical',
    'contains',
    'dual',
    'equals',
    'h_to_v',
    'includes',
    'v_to_h',
    # ============ 曲线上的丛 ============
    'CurveGrassmannCones',
    'HNData',
    'curve_cones',
    'fiber_product_cones',
    'fiber_product_nef_equals_eff',
    'hn_of_line_bundle_sum',
    'is_semistable_by_cones',
    'multi_fiber_product_cones',
    'theta',
    'zeta',
    # ============ 曲面几何 ============
    'SurfaceBundle',
    'SurfaceLattice',
    'asserted_bundle',
    'blowup_ruled_elliptic',
    'builtin_lattice',
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
    # ============ Grassmann 丛的锥 ============
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
    'tower_cones',
    # ============ 文档执行 ============
    'GrassconeOperations',
    'InputDocument',
    'Report',
    'execute_batch',
    'parse_document',
    'summary_dataframe',
    # ============ 类型与异常 ============
    'PreconditionError',
    'Rational',
    'RationalVector',
    'SemistabilityUndecidedError',
    'ValidationError',
    'encode_rational',
    'encode_vector',
    'to_rational',
    'to_vector',
)
