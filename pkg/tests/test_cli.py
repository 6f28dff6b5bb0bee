from __future__ import annotations

import json

import pytest

from grasscone import Cone, canonical, equals
from grasscone.cli import build_document, build_parser, format_inequality, parse_base_option, parse_bundle_option, parse_stage_option, run
from grasscone.types import encode_integer_vector
from grasscone.validators import ValidationError


def json_output(out: str) -> dict:
    # 日志可能与结果共用标准输出
    data, _ = json.JSONDecoder().raw_decode(out[out.index('{\n') :])
    return data


class TestShorthand:
    """命令行简写解析测试"""

    def test_bundle_forms(self):
        """测试各种丛简写"""
        assert parse_bundle_option('asserted:r=2,d=1/2') == {'asserted': {'rank': 2, 'degree': '1/2'}}
        assert parse_bundle_option('summands:[[1],[1]]') == {'summands': [[1], [1]]}
        assert parse_bundle_option('line-sum:[3,1,1]') == {'line_sum': [3, 1, 1]}
        assert parse_bundle_option('hn:[[1,3],[2,1/2]]') == {'hn': [[1, 3], [2, '1/2']]}
        assert parse_bundle_option('surface:r=2,c1=[2,1],c2=1') == {'surface': {'rank': 2, 'c1': [2, 1], 'c2': 1}}

    @pytest.mark.parametrize('text', ['foo:1', 'asserted', 'asserted:r=2', 'asserted:r=x,d=1', 'surface:r=2', 'hn:[[1,'])
    def test_bundle_invalid(self, text):
        """测试非法的丛简写"""
        with pytest.raises(ValidationError):
            parse_bundle_option(text)

    def test_bundle_file(self, tmp_path):
        """测试从文件读取丛"""
        path = tmp_path / 'bundle.json'
        path.write_text('{"summands": [[1], [1]]}', encoding='utf-8')
        assert parse_bundle_option(f'@{path}') == {'summands': [[1], [1]]}
        with pytest.raises(ValidationError):
            parse_bundle_option(f'@{tmp_path / "missing.json"}')

    def test_base(self):
        """测试底空间简写"""
        assert parse_base_option('builtin:p2') == {'kind': 'builtin', 'name': 'p2'}
        assert parse_base_option('blowup-ruled-elliptic') == {'kind': 'builtin', 'name': 'blowup-ruled-elliptic'}
        assert parse_base_option('curve') == {'kind': 'curve'}
        assert parse_base_option('{"kind": "surface-lattice", "basis": ["H"], "gram": [[1]], "curves": [[1]]}')['kind'] == 'surface-lattice'
        with pytest.raises(ValidationError):
            parse_base_option('p3')

    def test_stage(self):
        """测试塔的级简写"""
        assert parse_stage_option('asserted:r=2,d=1;k=1') == {'bundle': {'asserted': {'rank': 2, 'degree': 1}}, 'k': 1}
        for bad in ('asserted:r=2,d=1', 'asserted:r=2,d=1;k=x'):
            with pytest.raises(ValidationError):
                parse_stage_option(bad)

    def test_format_inequality(self):
        """测试不等式渲染"""
        assert format_inequality(['0', '-1', '0', '1']) == '-y1 + y3 >= 0'
        assert format_inequality(['1/2', '0', '-1', '1']) == '1/2*y0 - y2 + y3 >= 0'
        assert format_inequality(['-3', '2']) == '-3*y0 + 2*y1 >= 0'
        assert format_inequality(['0', '0']) == '0 >= 0'
        assert format_inequality(['1', '-1'], ['a', 'b']) == 'a - b >= 0'


class TestRun:
    """命令行主流程测试"""

    def test_theta(self, capsys):
        """测试 θ 文本输出"""
        assert run(['theta', '--hn', '[[1,3],[2,1]]', '-k', '2']) == 0
        assert 'theta = 2' in capsys.readouterr().out

    def test_nef_blowup(self, capsys):
        """测试爆破上 Nef¹ 的不等式与生成元输出"""
        code = run(['nef', '--base', 'builtin:blowup-ruled-elliptic', '--bundle', 'asserted:r=2,d=1', '-k', '1'])
        out = capsys.readouterr().out
        assert code == 0
        assert '# basis: xi, pi*C1, pi*C2, pi*C3' in out
        for line in ('y0 >= 0', '-y1 + y3 >= 0', '1/2*y0 - y2 + y3 >= 0', 'y1 + y2 - y3 >= 0', '[2,-1,0,-1]', '[0,1,1,1]'):
            assert line in out

    def test_dualize(self, capsys):
        """测试对偶输出"""
        assert run(['dualize', '--gens', '[[1,0],[1,1]]']) == 0
        lines = capsys.readouterr().out.splitlines()
        assert '[0,1]' in lines
        assert '[1,-1]' in lines

    @pytest.mark.parametrize(
        'argv',
        [
            ['--json', 'theta', '--hn', '[[1,3],[2,1]]', '-k', '2'],
            ['theta', '--json', '--hn', '[[1,3],[2,1]]', '-k', '2'],
        ],
    )
    def test_json(self, capsys, argv):
        """测试 --json 在子命令前后均可"""
        assert run(argv) == 0
        data = json_output(capsys.readouterr().out)
        assert data['values'] == {'theta': '2'}
        assert set(data) == {'basis', 'generators', 'halfspaces', 'flags', 'values'}

    def test_json_eff(self, capsys):
        """测试 ℙ² 上 Eff¹ 的 JSON 输出"""
        assert run(['--json', 'eff', '--base', 'builtin:p2', '--bundle', 'summands:[[1],[1]]', '-k', '1']) == 0
        data = json_output(capsys.readouterr().out)
        assert data['basis'] == ['xi', 'pi*H']
        assert data['generators'] == [[0, 1], [1, -1]]

    def test_validation_exit(self, capsys):
        """测试非法输入返回 2"""
        assert run(['theta', '--hn', '[[1,0.5]]', '-k', '1']) == 2
        assert 'error:' in capsys.readouterr().err

    def test_precondition_exit(self, capsys):
        """测试假设不成立返回 3"""
        assert run(['eff', '--base', 'p2', '--bundle', 'summands:[[0],[1]]', '-k', '1']) == 3
        assert 'precondition failed' in capsys.readouterr().err

    def test_usage_errors(self, capsys):
        """测试缺少子命令与未知参数"""
        assert run([]) == 2
        assert run(['theta', '--bogus']) == 2
        capsys.readouterr()

    def test_tower(self, capsys):
        """测试塔的多级输入"""
        stage = 'hn:[[2,1/2]];k=1'
        assert run(['tower', '--stage', stage, '--stage', stage]) == 0
        out = capsys.readouterr().out
        assert '# basis: xi_2, xi_1, pi*pt' in out
        assert '[2,0,-1]' in out

    def test_doc(self, capsys, tmp_path):
        """测试执行 JSON 文档"""
        path = tmp_path / 'theta.json'
        path.write_text(json.dumps({'version': '1', 'bundle': {'hn': [[1, 3], [2, 1]]}, 'query': {'command': 'zeta', 'k': 1}}), encoding='utf-8')
        assert run(['doc', str(path)]) == 0
        assert 'zeta = 3' in capsys.readouterr().out

    def test_batch(self, capsys, tmp_path):
        """测试批处理与 CSV 导出"""
        docs = tmp_path / 'docs'
        docs.mkdir()
        (docs / 'ok.json').write_text(json.dumps({'version': '1', 'bundle': {'hn': [[2, 1]]}, 'query': {'command': 'theta', 'k': 1}}), encoding='utf-8')
        csv_path = tmp_path / 'summary.csv'
        assert run(['--batch', str(docs), '--csv', str(csv_path), '--workers', '1']) == 0
        assert csv_path.read_text(encoding='utf-8').startswith('file,command,status,exit_code,generators,message')
        (docs / 'unstable.json').write_text(
            json.dumps({'version': '1', 'base': {'kind': 'builtin', 'name': 'p2'}, 'bundle': {'summands': [[0], [1]]}, 'query': {'command': 'eff', 'k': 1}}),
            encoding='utf-8',
        )
        assert run(['--batch', str(docs), '--workers', '1']) == 3
        capsys.readouterr()

    def test_batch_not_directory(self, capsys, tmp_path):
        """测试批处理路径不是目录"""
        assert run(['--batch', str(tmp_path / 'none')]) == 2
        capsys.readouterr()


def text_generators(out: str) -> list[list[int]]:
    lines = out.splitlines()
    start = lines.index('# generators:') + 1
    gens = []
    for line in lines[start:]:
        if not line.startswith('['):
            break
        gens.append(json.loads(line))
    return gens


NEF_BLOWUP = ['nef', '--base', 'builtin:blowup-ruled-elliptic', '--bundle', 'asserted:r=2,d=1', '-k', '1']
EFF_P2 = ['eff', '--base', 'builtin:p2', '--bundle', 'summands:[[1],[1]]', '-k', '1']
CURVE_CONES = ['curve-cones', '--hn', '[[1,3],[2,1]]', '-k', '2']


class TestOutputConsistency:
    """输出稳定性测试"""

    @pytest.mark.parametrize('argv', [NEF_BLOWUP, EFF_P2, CURVE_CONES])
    def test_json_reemitted_through_doc(self, capsys, tmp_path, argv):
        """测试 JSON 输出经文档重新执行后逐字节一致,且生成元已是规范形式"""
        assert run(['--json', *argv]) == 0
        out = capsys.readouterr().out
        first = out[out.index('{\n') :]
        data = json_output(out)
        again = canonical(Cone.from_generators(data['generators']))
        assert [encode_integer_vector(g) for g in again.generators] == data['generators']

        path = tmp_path / 'query.json'
        path.write_text(json.dumps(build_document(build_parser().parse_args(argv))), encoding='utf-8')
        assert run(['--json', 'doc', str(path)]) == 0
        out = capsys.readouterr().out
        assert out[out.index('{\n') :] == first

    def test_dualize_twice(self, capsys, tmp_path):
        """测试 JSON 生成元对偶两次回到自身"""
        assert run(['--json', *NEF_BLOWUP]) == 0
        gens = json_output(capsys.readouterr().out)['generators']
        current = gens
        for name in ('d1.json', 'd2.json'):
            path = tmp_path / name
            path.write_text(json.dumps({'version': '1', 'query': {'command': 'dualize', 'generators': current}}), encoding='utf-8')
            assert run(['--json', 'doc', str(path)]) == 0
            current = json_output(capsys.readouterr().out)['generators']
        assert current == gens

    @pytest.mark.parametrize('argv', [NEF_BLOWUP, EFF_P2, CURVE_CONES])
    def test_text_and_json_agree(self, capsys, argv):
        """测试文本输出与 JSON 输出描述同一个锥"""
        assert run(argv) == 0
        text_cone = Cone.from_generators(text_generators(capsys.readouterr().out))
        assert run(['--json', *argv]) == 0
        data = json_output(capsys.readouterr().out)
        json_cone = Cone.from_generators(data['generators'])
        assert equals(text_cone, json_cone)
        if data['halfspaces']:
            assert equals(Cone.from_halfspaces(data['halfspaces']), json_cone)
