import pytest

from hwtune.hardware import load_profile
from hwtune.kerneltune import find_kernel, load_kernels
from hwtune.services import register_services
from hwtune.shared.di import injector
from hwtune.space import load_preset


@pytest.fixture(autouse=True)
def reset_di():
    injector.provider_map = {}
    injector.named_map = {}


@pytest.fixture()
def services(reset_di):
    register_services()
    yield


@pytest.fixture()
def resnet_space():
    yield load_preset("resnet_appendix_d")


@pytest.fixture()
def a6000():
    yield load_profile("a6000")


@pytest.fixture()
def adreno740():
    yield load_profile("adreno740")


@pytest.fixture()
def benchmark_kernels():
    yield load_kernels("benchmark_kernels")


@pytest.fixture()
def softmax_spec(benchmark_kernels):
    yield find_kernel(benchmark_kernels, "softmax_1024x1x32")
