#!/usr/bin/env python3
"""
==============================================================
Description  : 命令行入口 - 解析参数、构造输入文档、输出锥的描述
LastEditTime : 2026-10-18 14:30:00

用法:
    grasscone theta --hn "[[1,3],[2,1]]" -k 2
    grasscone nef --base builtin:blowup-ruled-elliptic --bundle asserted:r=2,d=1 -k 1
    grasscone dualize --gens "[[1,0],[1,1]]"
    grasscone --json eff --base builtin:p2 --bundle "summands:[[1],[1]]" -k 1
    grasscone doc input.json
    grasscone --batch docs/examples --csv summary.csv

简写:
    --bundle asserted:r=2,d=1 | summands:[[1],[1]] | line-sum:[3,1,1] | hn:[[1,3],[2,1]]
             surface:r=2,c1=[2],c2=1 | @bundle.json
    --base   builtin:p2 | p2 | curve | @base.json
    --stage  "<bundle 简写>;k=<k>",可重复

退出码: 0 成功, 2 输入不合法, 3 定理假设不成立
==============================================================
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from .cfg import BASE_CFG, get_settings
from .factory import create_operations
from .operations import EXIT_OK, EXIT_PRECONDITION, EXIT_VALIDATION, Report, execute_batch, summary_dataframe
from .schema import COMMANDS, SCHEMA_VERSION
from .types import to_rational
from .validators import PreconditionError, ValidationError

_FRACTION_TOKEN = re.compile(r'(?<!["\w/])(-?\d+\s*/\s*\d+)(?!["\w/])')
_KEY_VALUE = re.compile(r'(\w+)=(\[[^=]*\](?=,\w+=|$)|[^,]+)')
_WHITESPACE = re.compile(r'\s+')


# ============ 简写解析 ============


def _load_json_text(text: str, field: str) -> Any:
    """解析 JSON,允许未加引号的 p/q 有理数"""
    try:
        return json.loads(_FRACTION_TOKEN.sub(lambda m: f'"{_WHITESPACE.sub("", m.group(1))}"', text))
    except json.JSONDecodeError as e:
        raise ValidationError(f'JSON 解析失败: {e.msg}', field, text) from e


def _load_json_file(path: str, field: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as e:
        raise ValidationError(f'无法读取文件: {e.strerror}', field, path) from e
    except UnicodeDecodeError as e:
        raise ValidationError('文件不是 UTF-8 编码', field, path) from e
    except json.JSONDecodeError as e:
        raise ValidationError(f'JSON 解析失败: {e.msg}', field, path) from e


def _key_values(text: str, field: str) -> dict[str, str]:
    pairs = dict(_KEY_VALUE.findall(text))
    if not pairs:
        raise ValidationError('应为 key=value 列表', field, text)
    return pairs


def _int_value(pairs: dict[str, str], key: str, field: str) -> int:
    if key not in pairs:
        raise ValidationError(f'缺少 {key}=', field, pairs)
    try:
        return int(pairs[key])
    except ValueError as e:
        raise ValidationError(f'{key} 必须是整数', f'{field}.{key}', pairs[key]) from e


def _rational_text(value: str, field: str) -> int | str:
    """保持 JSON 语义: 整数为 int,分数为 "p/q" 字符串"""
    q = to_rational(value.strip(), field)
    return q.numerator if q.denominator == 1 else f'{q.numerator}/{q.denominator}'


def parse_bundle_option(text: str) -> dict[str, Any]:
    """解析 --bundle 简写为 BundleSpec 字典

    Raises:
        ValidationError: 简写格式非法

    Example:
        >>> parse_bundle_option('asserted:r=2,d=1')
        {'asserted': {'rank': 2, 'degree': 1}}
    """
    if text.startswith('@'):
        return _load_json_file(text[1:], 'bundle')
    form, sep, payload = text.partition(':')
    if not sep:
        raise ValidationError('丛简写应为 <形式>:<数据>', 'bundle', text)
    field = f'bundle.{form}'
    match form:
        case 'asserted':
            pairs = _key_values(payload, field)
            degree = pairs.get('d', pairs.get('degree'))
            if degree is None:
                raise ValidationError('缺少 d=', field, payload)
            rank = _int_value(pairs, 'r' if 'r' in pairs else 'rank', field)
            return {'asserted': {'rank': rank, 'degree': _rational_text(degree, f'{field}.d')}}
        case 'summands' | 'hn':
            return {form: _load_json_text(payload, field)}
        case 'line-sum' | 'line_sum':
            return {'line_sum': _load_json_text(payload, field)}
        case 'surface':
            pairs = _key_values(payload, field)
            if 'c1' not in pairs:
                raise ValidationError('缺少 c1=', field, payload)
            spec: dict[str, Any] = {
                'rank': _int_value(pairs, 'r' if 'r' in pairs else 'rank', field),
                'c1': _load_json_text(pairs['c1'], f'{field}.c1'),
            }
            if 'c2' in pairs:
                spec['c2'] = _rational_text(pairs['c2'], f'{field}.c2')
            return {'surface': spec}
        case _:
            raise ValidationError('未知的丛形式,可选: asserted / summands / line-sum / hn / surface', 'bundle', form)


def parse_base_option(text: str) -> dict[str, Any]:
    """解析 --base 简写为 BaseSpec 字典

    Example:
        >>> parse_base_option('builtin:p2')
        {'kind': 'builtin', 'name': 'p2'}
    """
    if text.startswith('@'):
        return _load_json_file(text[1:], 'base')
    if text.lstrip().startswith('{'):
        return _load_json_text(text, 'base')
    name = text.removeprefix('builtin:')
    if name == 'curve':
        return {'kind': 'curve'}
    if name.replace('-', '_') in BASE_CFG.__members__:
        return {'kind': 'builtin', 'name': name}
    raise ValidationError(f'未知的底空间,可选: {[m for m in BASE_CFG.__members__ if m != "default"]}', 'base', text)


def parse_stage_option(text: str) -> dict[str, Any]:
    """解析 --stage "<bundle 简写>;k=<k>" """
    bundle_text, sep, k_text = text.rpartition(';k=')
    if not sep:
        raise ValidationError('塔的级应写为 "<bundle 简写>;k=<k>"', 'query.stages', text)
    try:
        k = int(k_text)
    except ValueError as e:
        raise ValidationError('k 必须是整数', 'query.stages.k', k_text) from e
    return {'bundle': parse_bundle_option(bundle_text), 'k': k}


def build_document(args: argparse.Namespace) -> dict[str, Any]:
    """由命令行参数构造 InputDocument 字典"""
    query: dict[str, Any] = {'command': args.command}
    for name in ('k', 'k2', 'dim'):
        if getattr(args, name) is not None:
            query[name] = getattr(args, name)
    for name, option in (('hn2', 'hn2'), ('generators', 'gens'), ('halfspaces', 'halfspaces'), ('vector', 'vector'), ('polarization', 'polarization')):
        text = getattr(args, option)
        if text is not None:
            query[name] = _load_json_text(text, f'query.{name}')
    if args.stage:
        query['stages'] = [parse_stage_option(s) for s in args.stage]
    if args.decomposable:
        query['decomposable'] = True

    document: dict[str, Any] = {'version': SCHEMA_VERSION, 'query': query}
    if args.base is not None:
        document['base'] = parse_base_option(args.base)
    bundle: dict[str, Any] | None = None
    if args.hn is not None:
        bundle = {'hn': _load_json_text(args.hn, 'bundle.hn')}
    elif args.bundle is not None:
        bundle = parse_bundle_option(args.bundle)
    if bundle is not None:
        if args.asserted_semistable:
            bundle['asserted_semistable'] = True
        document['bundle'] = bundle
    return document


# ============ 输出 ============


def format_inequality(h: Sequence[str], variables: Sequence[str] | None = None) -> str:
    """把半空间 h 渲染为 "c0*y0 + c1*y1 >= 0" """
    names = list(variables) if variables is not None else [f'y{i}' for i in range(len(h))]
    terms: list[str] = []
    for coef, name in zip(h, names, strict=True):
        if coef == '0':
            continue
        negative = coef.startswith('-')
        magnitude = coef.lstrip('-')
        body = name if magnitude == '1' else f'{magnitude}*{name}'
        if not terms:
            terms.append(f'-{body}' if negative else body)
        else:
            terms.append(f'- {body}' if negative else f'+ {body}')
    return f'{" ".join(terms) or "0"} >= 0'


def _compact(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(',', ':'))


def render_text(report: Report) -> str:
    """人类可读输出: 基标签头、不等式组、每行一个规范生成元、标志与数值"""
    lines: list[str] = []
    if report.basis is not None:
        lines.append(f'# basis: {", ".join(report.basis)}')
    if report.halfspaces:
        lines.append('# halfspaces:')
        lines.extend(format_inequality(h) for h in report.halfspaces)
    if report.generators is not None:
        lines.append('# generators:')
        lines.extend(_compact(g) for g in report.generators)
    for name, flag in report.flags.items():
        lines.append(f'{name} = {"true" if flag else "false"}')
    for name, value in report.values.items():
        lines.append(f'{name} = {value if isinstance(value, str) else _compact(value)}')
    return '\n'.join(lines)


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), ensure_ascii=False, indent=2)


# ============ 参数解析 ============


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='grasscone', description='Grassmann 丛的 nef 锥与拟有效锥(精确有理数计算)')
    parser.add_argument('--json', action='store_true', help='输出 JSON {basis, generators, halfspaces, flags, values}')
    parser.add_argument('--batch', metavar='DIR', help='并行执行目录下所有 *.json 文档')
    parser.add_argument('--csv', metavar='PATH', help='批处理汇总导出为 CSV')
    parser.add_argument('--workers', type=int, help='批处理进程数,默认 GRASSCONE_BATCH_WORKERS')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--base', help='底空间: builtin:p2 / curve / @base.json')
    common.add_argument('--bundle', help='丛: asserted:r=2,d=1 / summands:[[1],[1]] / line-sum:[3,1,1] / surface:r=2,c1=[2],c2=1')
    common.add_argument('--hn', help='HN 数据 [[秩, 斜率], ...]')
    common.add_argument('--asserted-semistable', action='store_true', help='声明丛半稳定且判别式为零')
    common.add_argument('-k', type=int, help='商的秩 k')
    common.add_argument('--k2', type=int, help='第二个因子的 k')
    common.add_argument('--hn2', help='第二个因子的 HN 数据')
    common.add_argument('--stage', action='append', help='塔的一级 "<bundle 简写>;k=<k>",可重复')
    common.add_argument('--gens', help='生成元 [[...], ...]')
    common.add_argument('--halfspaces', help='半空间 [[...], ...]')
    common.add_argument('--vector', help='待判定的向量')
    common.add_argument('--polarization', help='极化类')
    common.add_argument('--dim', type=int, help='环境维数(生成元为空时)')
    common.add_argument('--decomposable', action='store_true', help='nef: 使用可分解丛的 θ 公式(Picard 数为一)')
    common.add_argument('--json', action='store_true', default=argparse.SUPPRESS, help='输出 JSON')

    sub = parser.add_subparsers(dest='command')
    for command in COMMANDS:
        sub.add_parser(command, parents=[common])
    doc = sub.add_parser('doc', help='执行 JSON 输入文档')
    doc.add_argument('path', help='文档路径')
    doc.add_argument('--json', action='store_true', default=argparse.SUPPRESS, help='输出 JSON')
    return parser


def _run_batch(args: argparse.Namespace) -> int:
    directory = Path(args.batch)
    if not directory.is_dir():
        raise ValidationError('批处理路径必须是目录', 'batch', args.batch)
    paths = sorted(directory.glob('*.json'))
    workers = args.workers if args.workers is not None else get_settings().batch_workers
    rows = execute_batch(paths, workers)
    frame = summary_dataframe(rows)
    print(frame.drop(columns=['message']).to_string(index=False))
    if args.csv:
        frame.to_csv(args.csv, index=False)
    return max((int(r['exit_code']) for r in rows), default=EXIT_OK)


def run(argv: Sequence[str] | None = None) -> int:
    """命令行主流程

    Returns:
        int: 退出码 0 / 2 / 3
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        if args.batch:
            return _run_batch(args)
        if args.command is None:
            parser.print_usage(sys.stderr)
            print('error: 需要子命令或 --batch', file=sys.stderr)
            return EXIT_VALIDATION
        document = _load_json_file(args.path, 'doc') if args.command == 'doc' else build_document(args)
        report = create_operations().execute(document)
    except ValidationError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_VALIDATION
    except PreconditionError as e:
        print(f'precondition failed: {e}', file=sys.stderr)
        return EXIT_PRECONDITION

    print(render_json(report) if args.json else render_text(report))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


__all__ = ('build_document', 'build_parser', 'format_inequality', 'main', 'parse_base_option', 'parse_bundle_option', 'parse_stage_option', 'render_json', 'render_text', 'run')
