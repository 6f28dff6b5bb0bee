from __future__ import annotations

import pytest

from grasscone import PplConeEngine, blowup_ruled_elliptic, curve_base, projective_plane


@pytest.fixture(scope='session')
def engine():
    """测试共用的锥转换引擎"""
    return PplConeEngine(max_dim=12)


@pytest.fixture
def p2():
    """ℙ² 的格"""
    return projective_plane()


@pytest.fixture
def blowup():
    """椭圆直纹面一点爆破的格"""
    return blowup_ruled_elliptic()


@pytest.fixture
def curve():
    """曲线底空间"""
    return curve_base()
