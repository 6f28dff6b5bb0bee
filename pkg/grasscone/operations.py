#!/usr/bin/env python3
"""
==============================================================
Description  : 文档执行器 - 按查询命令调度各模块并生成报告
LastEditTime : 2026-10-18 14:00:00

本模块提供输入文档的执行层:
- Report: 单个文档的结果 {basis, generators, halfspaces, flags, values}
- GrassconeOperations: 校验文档、调度到 curve_bundles / surface_geometry /
  grassmann_cones / ratcone,并产出 Report
- execute_batch: 以进程池并行执行目录下的所有文档
- summary_dataframe: 批处理结果汇总为 Pandas DataFrame

输出约定:
- generators: 规范生成元,本原整向量
- halfspaces: "p/q" 字符串编码
- values: 标量以 "p/q" 字符串编码,次要的锥以整向量列表给出
==============================================================
"""

from __future__ import annotations

import json
from collections.abc import Callable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import pandas as pd
from xtlog import mylog

from .cfg import get_settings
from .curve_bundles import CURVE_BASIS, HNData, curve_cones, fiber_product_cones, is_semistable_by_cones, theta, zeta
from .factory import create_operations
from .grassmann_cones import GrassmannDivisorBasis, eff_cone, lambda_class, nef_cone_decomposable, nef_cone_surface, nef_eff_equality_report, tower_cones
from .protocols import IConeEngine
from .ratcone import Cone, contains, dual, equals, v_to_h
from .schema import InputDocument, QuerySpec, parse_document
from .surface_geometry import SurfaceBundle, SurfaceLattice, curve_base, discriminant, intersect, is_semistable_decomposable
from .types import encode_integer_vector, encode_rational, encode_vector, to_vector
from .validators import PreconditionError, ValidationError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRECONDITION = 3


@dataclass
class Report:
    """单个文档的执行结果"""

    command: str
    basis: list[str] | None = None
    generators: list[list[int]] | None = None
    halfspaces: list[list[str]] | None = None
    flags: dict[str, bool] = field(default_factory=dict)
    values: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """JSON 输出字段 {basis, generators, halfspaces, flags, values}"""
        data = asdict(self)
        data.pop('command')
        return data


def _gens(cone: Cone) -> list[list[int]]:
    return [encode_integer_vector(g) for g in cone.generators or ()]


def _halfspaces(cone: Cone) -> list[list[str]]:
    return [encode_vector(h) for h in cone.halfspaces or ()]


class GrassconeOperations:
    """输入文档执行器

    Example:
        >>> ops = create_operations()
        >>> ops.execute({'version': '1', 'bundle': {'hn': [[1, 3], [2, 1]]}, 'query': {'command': 'theta', 'k': 2}}).values
        {'theta': '2'}
    """

    def __init__(self, engine: IConeEngine):
        """初始化执行器

        Args:
            engine: 锥转换引擎
        """
        self._engine = engine
        self._handlers: dict[str, Callable[[InputDocument], Report]] = {
            'hn': self._hn,
            'theta': self._theta,
            'zeta': self._zeta,
            'curve-cones': self._curve_cones,
            'eff': self._eff,
            'nef': self._nef,
            'equality': self._equality,
            'fiber-product': self._fiber_product,
            'tower': self._tower,
            'discriminant': self._discriminant,
            'semistable': self._semistable,
            'dualize': self._dualize,
            'contains': self._contains,
        }
        mylog.success(f'GrassconeOperations | 执行器已初始化: {engine}')

    @property
    def engine(self) -> IConeEngine:
        return self._engine

    def execute(self, document: Mapping[str, Any] | InputDocument) -> Report:
        """校验并执行文档

        Raises:
            ValidationError: 文档或数据不合法
            PreconditionError: 定理假设不成立
        """
        doc = parse_document(document)
        command = doc.query.command
        try:
            report = self._handlers[command](doc)
        except (ValidationError, PreconditionError) as e:
            mylog.error(f'GrassconeOperations@execute | 命令 {command} 失败: {e}')
            raise
        mylog.debug(f'GrassconeOperations@execute | 命令 {command} 完成')
        return report

    # ============ 文档访问 ============

    @staticmethod
    def _k(query: QuerySpec, name: str = 'k') -> int:
        value = getattr(query, name)
        if value is None:
            raise ValidationError(f'缺少参数 {name}', f'query.{name}', None)
        return value

    @staticmethod
    def _lattice(doc: InputDocument) -> SurfaceLattice:
        if doc.base is None:
            raise ValidationError('缺少底空间', 'base', None)
        return doc.base.to_lattice()

    @staticmethod
    def _hn_data(doc: InputDocument) -> HNData:
        if doc.bundle is None:
            raise ValidationError('缺少丛数据', 'bundle', None)
        return doc.bundle.to_hn()

    def _surface_input(self, doc: InputDocument) -> tuple[SurfaceLattice, SurfaceBundle]:
        lattice = self._lattice(doc)
        if doc.bundle is None:
            raise ValidationError('缺少丛数据', 'bundle', None)
        return lattice, doc.bundle.to_surface_bundle(lattice)

    def _query_cone(self, query: QuerySpec) -> Cone:
        if query.generators is not None:
            return Cone.from_generators(query.generators, query.dim)
        if query.halfspaces is not None:
            return Cone.from_halfspaces(query.halfspaces, query.dim)
        raise ValidationError('需要 generators 或 halfspaces', 'query.generators', None)

    # ============ 曲线上的命令 ============

    def _hn(self, doc: InputDocument) -> Report:
        hn = self._hn_data(doc)
        return Report(
            command='hn',
            flags={'semistable': hn.is_semistable},
            values={
                'hn': [[r, encode_rational(mu)] for r, mu in hn.pieces],
                'rank': hn.rank,
                'degree': encode_rational(hn.degree),
                'slope': encode_rational(hn.slope),
                'mu_max': encode_rational(hn.mu_max),
                'mu_min': encode_rational(hn.mu_min),
            },
        )

    def _theta(self, doc: InputDocument) -> Report:
        return Report(command='theta', values={'theta': encode_rational(theta(self._hn_data(doc), self._k(doc.query)))})

    def _zeta(self, doc: InputDocument) -> Report:
        return Report(command='zeta', values={'zeta': encode_rational(zeta(self._hn_data(doc), self._k(doc.query)))})

    def _curve_cones(self, doc: InputDocument) -> Report:
        cones = curve_cones(self._hn_data(doc), self._k(doc.query), self._engine)
        nef = v_to_h(cones.nef, self._engine)
        return Report(
            command='curve-cones',
            basis=list(CURVE_BASIS),
            generators=_gens(nef),
            halfspaces=_halfspaces(nef),
            flags={'nef_equals_eff': equals(cones.nef, cones.eff, self._engine)},
            values={'theta': encode_rational(cones.theta), 'zeta': encode_rational(cones.zeta), 'eff': _gens(cones.eff)},
        )

    def _fiber_product(self, doc: InputDocument) -> Report:
        query = doc.query
        if query.hn2 is None:
            raise ValidationError('缺少第二个因子的 HN 数据', 'query.hn2', None)
        hn_e, hn_e2 = self._hn_data(doc), HNData.from_pieces(query.hn2)
        k, k2 = self._k(query), self._k(query, 'k2')
        nef, eff = fiber_product_cones(hn_e, k, hn_e2, k2, self._engine)
        nef = v_to_h(nef, self._engine)
        return Report(
            command='fiber-product',
            basis=['xi', 'eta', 'F'],
            generators=_gens(nef),
            halfspaces=_halfspaces(nef),
            flags={'nef_equals_eff': equals(nef, eff, self._engine)},
            values={
                'theta': [encode_rational(theta(hn_e, k)), encode_rational(theta(hn_e2, k2))],
                'zeta': [encode_rational(zeta(hn_e, k)), encode_rational(zeta(hn_e2, k2))],
                'eff': _gens(eff),
            },
        )

    # ============ 底空间上的命令 ============

    def _eff(self, doc: InputDocument) -> Report:
        lattice, bundle = self._surface_input(doc)
        k = self._k(doc.query)
        cone = v_to_h(eff_cone(lattice, bundle, k, engine=self._engine), self._engine)
        lam = lambda_class(bundle.rank, k, bundle.c1).coefficients
        return Report(
            command='eff',
            basis=list(GrassmannDivisorBasis.for_lattice(lattice).labels),
            generators=_gens(cone),
            halfspaces=_halfspaces(cone),
            values={'lambda': encode_vector(lam)},
        )

    def _nef(self, doc: InputDocument) -> Report:
        lattice, bundle = self._surface_input(doc)
        k = self._k(doc.query)
        if doc.query.decomposable:
            cone = nef_cone_decomposable(lattice, bundle, k, self._engine)
        else:
            cone = nef_cone_surface(lattice, bundle, k, self._engine)
        return Report(
            command='nef',
            basis=list(GrassmannDivisorBasis.for_lattice(lattice).labels),
            generators=_gens(cone),
            halfspaces=_halfspaces(cone),
        )

    def _equality(self, doc: InputDocument) -> Report:
        lattice, bundle = self._surface_input(doc)
        report = nef_eff_equality_report(lattice, bundle, self._k(doc.query), engine=self._engine)
        return Report(
            command='equality',
            basis=list(GrassmannDivisorBasis.for_lattice(lattice).labels),
            generators=_gens(report.gr_nef),
            halfspaces=_halfspaces(report.gr_nef),
            flags={'base_equal': report.base_equal, 'gr_equal': report.gr_equal, 'consistent': report.consistent},
            values={'gr_eff': _gens(report.gr_eff), 'base_nef': _gens(report.base_nef), 'base_eff': _gens(report.base_eff)},
        )

    def _tower(self, doc: InputDocument) -> Report:
        query = doc.query
        if not query.stages:
            raise ValidationError('缺少塔的各级数据', 'query.stages', None)
        lattice = self._lattice(doc) if doc.base is not None else curve_base()
        stages = [(stage.bundle.to_surface_bundle(lattice), stage.k) for stage in query.stages]
        cones = tower_cones(lattice, stages, engine=self._engine)
        last = v_to_h(cones[-1], self._engine)
        return Report(
            command='tower',
            basis=list(GrassmannDivisorBasis.for_tower(lattice, len(cones)).labels),
            generators=_gens(last),
            halfspaces=_halfspaces(last),
            values={'stages': [_gens(c) for c in cones]},
        )

    def _discriminant(self, doc: InputDocument) -> Report:
        lattice, bundle = self._surface_input(doc)
        disc = discriminant(lattice, bundle)
        values = {'discriminant': encode_rational(disc), 'c2': encode_rational(bundle.c2)}
        if lattice.base_dim == 2:
            values['c1_squared'] = encode_rational(intersect(lattice, bundle.c1, bundle.c1))
        return Report(command='discriminant', flags={'vanishes': disc == 0}, values=values)

    def _semistable(self, doc: InputDocument) -> Report:
        if doc.base is None:
            hn = self._hn_data(doc)
            return Report(command='semistable', flags={'semistable': is_semistable_by_cones(hn, self._engine), 'asserted': False})
        lattice, bundle = self._surface_input(doc)
        polarization = doc.query.polarization if doc.query.polarization is not None else lattice.ample_class
        if polarization is None:
            raise ValidationError('需要极化类 (query.polarization 或 base.ample)', 'query.polarization', None)
        polarization = to_vector(polarization, 'query.polarization', lattice.rho)
        semistable = is_semistable_decomposable(lattice, bundle, polarization)
        return Report(
            command='semistable',
            flags={'semistable': semistable, 'asserted': bundle.summands is None},
            values={'polarization': encode_vector(polarization)},
        )

    # ============ 通用锥命令 ============

    def _dualize(self, doc: InputDocument) -> Report:
        cone = dual(self._query_cone(doc.query), self._engine)
        return Report(command='dualize', generators=_gens(cone))

    def _contains(self, doc: InputDocument) -> Report:
        query = doc.query
        if query.vector is None:
            raise ValidationError('缺少待判定向量', 'query.vector', None)
        cone = self._query_cone(query)
        return Report(command='contains', flags={'contains': contains(cone, query.vector, self._engine)}, values={'vector': encode_vector(to_vector(query.vector))})


# ============ 批处理 ============


def execute_file(path: str | Path) -> dict[str, Any]:
    """执行单个文档文件,返回汇总行(进程池工作函数,需可序列化)"""
    path = Path(path)
    row: dict[str, Any] = {'file': path.name, 'command': None, 'status': 'ok', 'exit_code': EXIT_OK, 'generators': None, 'message': ''}
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
        query = data.get('query') if isinstance(data, dict) else None
        row['command'] = query.get('command') if isinstance(query, dict) else None
        report = create_operations().execute(data)
        row['generators'] = None if report.generators is None else len(report.generators)
        row['message'] = json.dumps(report.to_dict(), ensure_ascii=False)
    except json.JSONDecodeError as e:
        row.update(status='validation', exit_code=EXIT_VALIDATION, message=f'JSON 解析失败: {e}')
    except (OSError, UnicodeDecodeError) as e:
        row.update(status='validation', exit_code=EXIT_VALIDATION, message=f'无法读取文档: {e}')
    except ValidationError as e:
        row.update(status='validation', exit_code=EXIT_VALIDATION, message=str(e))
    except PreconditionError as e:
        row.update(status='precondition', exit_code=EXIT_PRECONDITION, message=str(e))
    except (AttributeError, TypeError, ValueError) as e:
        # 单个文档的结构错误不中断整个批处理
        mylog.error(f'execute_file | 文档结构无法处理: {path.name}: {e!r}')
        row.update(status='validation', exit_code=EXIT_VALIDATION, message=f'文档结构非法: {e}')
    return row


def execute_batch(paths: Sequence[str | Path], workers: int | None = None) -> list[dict[str, Any]]:
    """以进程池并行执行多个文档

    Args:
        paths: 文档路径
        workers: 进程数,默认读取 GRASSCONE_BATCH_WORKERS

    Returns:
        list: 与 paths 顺序一致的汇总行
    """
    if workers is None:
        workers = get_settings().batch_workers
    if not paths:
        return []
    with ProcessPoolExecutor(max_workers=min(workers, len(paths))) as pool:
        rows = list(pool.map(execute_file, paths))
    failed = sum(1 for r in rows if r['exit_code'] != EXIT_OK)
    mylog.info(f'execute_batch | 共 {len(rows)} 个文档, 失败 {failed} 个')
    return rows


def summary_dataframe(rows: Sequence[Mapping[str, Any]]) -> pd.DataFrame:
    """批处理结果汇总为 DataFrame

    Example:
        >>> df = summary_dataframe(execute_batch(sorted(Path('docs/examples').glob('*.json'))))
        >>> df.to_csv('summary.csv', index=False)
    """
    columns = ['file', 'command', 'status', 'exit_code', 'generators', 'message']
    return pd.DataFrame(list(rows), columns=columns)


__all__ = (
    'EXIT_OK',
    'EXIT_PRECONDITION',
    'EXIT_VALIDATION',
    'GrassconeOperations',
    'Report',
    'execute_batch',
    'execute_file',
    'summary_dataframe',
)
