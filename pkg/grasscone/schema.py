#!/usr/bin/env python3
"""
==============================================================
Description  : 输入文档模型 - Pydantic 校验与领域对象转换
LastEditTime : 2026-10-18 13:30:00

本模块定义命令行与批处理共用的 JSON 输入文档:
- InputDocument: 顶层文档 {version, base, bundle, query}
- BaseSpec: 底空间(curve / surface-lattice / builtin)
- BundleSpec: 丛(hn / line_sum / surface / summands / asserted 五选一)
- QuerySpec: 命令与参数
- parse_document: 校验并把 pydantic 错误转换为 grasscone.ValidationError

有理数一律以 int 或 "p/q" 字符串给出,浮点数被拒绝。
==============================================================
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any, Literal

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, StrictBool, StrictInt, StrictStr, model_validator
from pydantic import ValidationError as PydanticValidationError

from .curve_bundles import HNData, hn_of_line_bundle_sum
from .surface_geometry import SurfaceBundle, SurfaceLattice, asserted_bundle, builtin_lattice, decomposable_bundle, pullback_from_base_curve
from .types import to_rational
from .validators import PreconditionError, ValidationError

RationalInput = StrictInt | StrictStr
RationalRow = list[RationalInput]

SCHEMA_VERSION = '1'

COMMANDS: tuple[str, ...] = (
    'hn',
    'theta',
    'zeta',
    'curve-cones',
    'eff',
    'nef',
    'equality',
    'fiber-product',
    'tower',
    'discriminant',
    'semistable',
    'dualize',
    'contains',
)


class _Strict(BaseModel):
    model_config = ConfigDict(extra='forbid', populate_by_name=True)


class BaseSpec(_Strict):
    """底空间描述"""

    kind: Literal['curve', 'surface-lattice', 'builtin']
    name: StrictStr | None = None
    basis: list[StrictStr] | None = None
    gram: list[RationalRow] | None = None
    curves: list[RationalRow] | None = None
    ample: RationalRow | None = None
    eff: list[RationalRow] | None = None
    fiber: RationalRow | None = None
    base_dim: StrictInt = Field(default=2, ge=1)

    @model_validator(mode='after')
    def _check_fields(self) -> BaseSpec:
        if self.kind == 'builtin' and not self.name:
            raise ValueError("builtin 底空间需要 name, 如 'p2'")
        if self.kind == 'surface-lattice':
            missing = [f for f in ('basis', 'gram', 'curves') if getattr(self, f) is None]
            if missing:
                raise ValueError(f'surface-lattice 缺少字段: {missing}')
        return self

    def to_lattice(self) -> SurfaceLattice:
        if self.kind == 'builtin':
            return builtin_lattice(self.name or '')
        if self.kind == 'curve':
            return SurfaceLattice.create(
                basis=self.basis or ['pt'],
                gram=self.gram or [[1]],
                curves=self.curves or [[1]],
                ample=self.ample or [1],
                eff=self.eff,
                fiber=self.fiber or [1],
                base_dim=1,
                name=self.name or 'curve',
            )
        return SurfaceLattice.create(
            basis=self.basis or [],
            gram=self.gram or [],
            curves=self.curves or [],
            ample=self.ample,
            eff=self.eff,
            fiber=self.fiber,
            base_dim=self.base_dim,
            name=self.name or 'custom',
        )


class SurfaceBundleSpec(_Strict):
    rank: StrictInt = Field(ge=1)
    c1: RationalRow
    c2: RationalInput = 0


class AssertedSpec(_Strict):
    """底曲线上秩 rank、次数 degree 的半稳定丛(的拉回)"""

    rank: StrictInt = Field(ge=1)
    degree: RationalInput


class BundleSpec(_Strict):
    """丛描述,五种形式恰好给出一种"""

    hn: list[tuple[StrictInt, RationalInput]] | None = None
    line_sum: RationalRow | None = Field(default=None, validation_alias=AliasChoices('line_sum', 'line-sum'))
    surface: SurfaceBundleSpec | None = None
    summands: list[RationalRow] | None = None
    asserted: AssertedSpec | None = None
    asserted_semistable: StrictBool = False

    @model_validator(mode='after')
    def _exactly_one_form(self) -> BundleSpec:
        present = [f for f in ('hn', 'line_sum', 'surface', 'summands', 'asserted') if getattr(self, f) is not None]
        if len(present) != 1:
            raise ValueError(f'hn / line_sum / surface / summands / asserted 必须恰好给出一种,实际: {present}')
        return self

    @property
    def form(self) -> str:
        return next(f for f in ('hn', 'line_sum', 'surface', 'summands', 'asserted') if getattr(self, f) is not None)

    def to_hn(self) -> HNData:
        """曲线上的 HN 数据

        Raises:
            ValidationError: 丛形式无法给出 HN 数据
        """
        if self.hn is not None:
            return HNData.from_pieces(self.hn)
        if self.line_sum is not None:
            return hn_of_line_bundle_sum(self.line_sum)
        if self.summands is not None and all(len(m) == 1 for m in self.summands):
            return hn_of_line_bundle_sum(m[0] for m in self.summands)
        if self.asserted is not None:
            degree = to_rational(self.asserted.degree, 'bundle.asserted.degree')
            return HNData(pieces=((self.asserted.rank, degree / self.asserted.rank),))
        raise ValidationError('该丛形式不能转换为曲线上的 HN 数据', 'bundle', self.form)

    def to_surface_bundle(self, lattice: SurfaceLattice) -> SurfaceBundle:
        """底空间上的丛

        Raises:
            ValidationError: 数据与格不符
            PreconditionError: 曲线上的 HN 数据不止一段(不半稳定)
        """
        if self.summands is not None:
            bundle = decomposable_bundle(lattice, self.summands)
            return SurfaceBundle(rank=bundle.rank, c1=bundle.c1, c2=bundle.c2, summands=bundle.summands, asserted_semistable=self.asserted_semistable)
        if self.surface is not None:
            return SurfaceBundle(
                rank=self.surface.rank,
                c1=self.surface.c1,
                c2=self.surface.c2,
                asserted_semistable=self.asserted_semistable,
            )
        if self.asserted is not None:
            return pullback_from_base_curve(lattice, self.asserted.rank, self.asserted.degree)
        if self.line_sum is not None:
            if lattice.base_dim != 1:
                raise ValidationError('line_sum 只能用于曲线底空间', 'bundle.line_sum', self.line_sum)
            return decomposable_bundle(lattice, [[d] for d in self.line_sum])
        # hn 形式: 单段 HN 数据在曲线上即半稳定
        hn = self.to_hn()
        if lattice.base_dim != 1:
            raise ValidationError('hn 只能用于曲线底空间', 'bundle.hn', self.hn)
        if not hn.is_semistable:
            raise PreconditionError('HN 数据不止一段,E 不是半稳定的', 'E 半稳定')
        return asserted_bundle(lattice, hn.rank, [hn.degree], 0)


class StageSpec(_Strict):
    bundle: BundleSpec
    k: StrictInt


class QuerySpec(_Strict):
    """命令与参数"""

    command: Literal[COMMANDS]  # type: ignore[valid-type]
    k: StrictInt | None = None
    k2: StrictInt | None = None
    hn2: list[tuple[StrictInt, RationalInput]] | None = None
    stages: list[StageSpec] | None = None
    vector: RationalRow | None = None
    generators: list[RationalRow] | None = None
    halfspaces: list[RationalRow] | None = None
    polarization: RationalRow | None = None
    dim: StrictInt | None = Field(default=None, ge=1)
    decomposable: StrictBool = False


class InputDocument(_Strict):
    """顶层输入文档

    Example:
        >>> doc = parse_document({'version': '1', 'bundle': {'hn': [[1, 3], [2, 1]]}, 'query': {'command': 'theta', 'k': 2}})
        >>> doc.query.command
        'theta'
    """

    version: Literal['1']
    base: BaseSpec | None = None
    bundle: BundleSpec | None = None
    query: QuerySpec


def _loc_to_path(loc: tuple[Any, ...]) -> str:
    path = ''
    for part in loc:
        if isinstance(part, int):
            path += f'[{part}]'
        else:
            path += f'.{part}' if path else str(part)
    return path


def parse_document(data: Mapping[str, Any] | InputDocument) -> InputDocument:
    """校验输入文档

    Raises:
        ValidationError: 文档不合法,field 为出错位置的路径(如 'bundle.hn[0]')
    """
    if isinstance(data, InputDocument):
        return data
    try:
        return InputDocument.model_validate(data)
    except PydanticValidationError as e:
        first = e.errors()[0]
        raise ValidationError(first.get('msg', '文档不合法'), _loc_to_path(tuple(first.get('loc', ()))) or 'document', first.get('input')) from e


__all__ = (
    'COMMANDS',
    'SCHEMA_VERSION',
    'AssertedSpec',
    'BaseSpec',
    'BundleSpec',
    'InputDocument',
    'QuerySpec',
    'StageSpec',
    'SurfaceBundleSpec',
    'parse_document',
)
