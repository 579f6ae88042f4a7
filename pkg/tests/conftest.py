"""共享测试夹具"""
import numpy as np
import pytest

from bstruct.core.settings import Settings, apply_settings, settings
from bstruct.services.magma import MagmaTable
from bstruct.services.tensorops import FieldSpec
from bstruct.services.zlinalg import AbelianGroup


@pytest.fixture(autouse=True)
def paranoid_settings():
    """每个测试都打开逐次复核，结束后恢复全局设置"""
    snapshot = Settings.model_validate(settings.model_dump())
    apply_settings(PARANOID_CHECKS=True)
    yield settings
    apply_settings(snapshot)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def z2():
    return MagmaTable.cyclic_group(2)


@pytest.fixture
def z3():
    return MagmaTable.cyclic_group(3)


@pytest.fixture
def b_z2():
    return AbelianGroup((2,))


@pytest.fixture
def b_z4():
    return AbelianGroup((4,))


@pytest.fixture
def f2():
    return FieldSpec(2)


@pytest.fixture
def f5():
    return FieldSpec(5)


@pytest.fixture
def q_field():
    return FieldSpec.rationals()
