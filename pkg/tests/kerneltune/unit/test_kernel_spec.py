import pytest

from hwtune.kerneltune import (
    MAX_BLOCK_THREADS,
    KernelConfig,
    KernelSpec,
    KernelSpecError,
    assignment_from_config,
    config_from_assignment,
    kernel_space,
    kernel_to_prompt_json,
    list_kernel_files,
    load_kernels_text,
    precision_of,
    project_config,
)
from hwtune.shared.util import SchemaError
from hwtune.space import validate
from tests import benchmark_kernels, reset_di, softmax_spec  # noqa


def softmax(**overrides):
    fields = dict(
        kernel="softmax",
        tensor_type="float32",
        src_shapes=[(1024, 1, 32, 1)],
        out_shape=(1024, 1, 32, 1),
        default_grid=(32, 1, 1),
        default_block=(64, 1, 1),
        default_unroll=2,
    )
    fields.update(overrides)
    return KernelSpec(**fields)


def test_benchmark_kernels(benchmark_kernels):
    assert len(benchmark_kernels) == 15
    assert [s.kernel for s in benchmark_kernels[::3]] == [
        "softmax",
        "silu",
        "rmsnorm",
        "rope",
        "matmul",
    ]
    assert list_kernel_files() == ["benchmark_kernels", "softmax_example"]


def test_softmax_fixture(softmax_spec):
    assert softmax_spec.label == "softmax_1024x1x32"
    assert softmax_spec.precision == "FP32"
    assert softmax_spec.input_size == (1024, 1, 32)
    assert softmax_spec.output_elements == 32768
    assert softmax_spec.flops == 5 * 32768
    assert softmax_spec.default_config() == KernelConfig((32, 1, 1), (64, 1, 1), 1, 2)


def test_matmul_flops(benchmark_kernels):
    matmul = benchmark_kernels[-1]

    assert matmul.label == "matmul_2048x128x2048"
    assert matmul.flops == 2 * 2048 * matmul.output_elements


def test_unknown_kernel():
    with pytest.raises(KernelSpecError):
        softmax(kernel="conv2d")


def test_unknown_tensor_type():
    with pytest.raises(KernelSpecError):
        softmax(tensor_type="bfloat8")


def test_output_shape_mismatch():
    with pytest.raises(KernelSpecError):
        softmax(out_shape=(1024, 1, 16, 1))


def test_matmul_inner_dimension():
    with pytest.raises(KernelSpecError):
        KernelSpec(
            kernel="matmul",
            tensor_type="float16",
            src_shapes=[(64, 8, 1, 1), (32, 8, 1, 1)],
            out_shape=(8, 8, 1, 1),
            default_grid=(1, 1, 1),
            default_block=(8, 1, 1),
            default_unroll=1,
        )


def test_invalid_default_config():
    with pytest.raises(KernelSpecError) as e:
        softmax(default_block=(256, 8, 1))
    assert "exceeds 1024" in e.value.msg


def test_zero_dimension():
    with pytest.raises(KernelSpecError):
        softmax(default_grid=(0, 1, 1))


@pytest.mark.parametrize(
    "tensor_type,precision",
    [("f16", "FP16"), ("Q8_0", "INT8"), ("int4", "INT4"), ("float32", "FP32")],
)
def test_precision_of(tensor_type, precision):
    assert precision_of(tensor_type) == precision


def test_config_violations():
    config = KernelConfig((300, 1, 1), (64, 1, 1), tiling=3, unroll=17)

    problems = config.violations()

    assert len(problems) == 3
    assert not config.is_valid


def test_config_wrong_arity():
    assert KernelConfig((1, 1), (1, 1, 1)).violations() == [
        "griddim has to be three integers, got (1, 1)"
    ]


def test_config_json():
    config = KernelConfig((32, 1, 1), (128, 1, 1), 4, 4, code_changed=True)

    assert config.to_json_dict() == {
        "griddim": [32, 1, 1],
        "blockdim": [128, 1, 1],
        "tiling size": 4,
        "unroll size": 4,
        "code changed": True,
    }


def test_prompt_json(softmax_spec):
    assert kernel_to_prompt_json(softmax_spec) == {
        "kernel": "softmax",
        "tensor type": "float32",
        "src0 tensor shape": [1024, 1, 32, 1],
        "output tensor shape": [1024, 1, 32, 1],
        "default gridDim": [32, 1, 1],
        "default blockDim": [64, 1, 1],
        "unroll size": 2,
    }


def test_kernel_document_schema():
    with pytest.raises(SchemaError):
        load_kernels_text("kernels:\n  - kernel: softmax\n")


def test_kernel_space(softmax_spec):
    space = kernel_space(softmax_spec)
    default = assignment_from_config(softmax_spec, softmax_spec.default_config())

    assert space.names == ["grid_x", "block_x", "tiling", "unroll"]
    assert validate(space, default).is_valid
    assert config_from_assignment(softmax_spec, default) == (
        softmax_spec.default_config()
    )


def test_block_x_projection():
    spec = softmax(default_block=(64, 16, 1))
    assignment = assignment_from_config(spec, spec.default_config()).with_value(
        "block_x", 256
    )

    config = config_from_assignment(spec, assignment)

    assert config.block == (64, 16, 1)
    assert config.block_threads <= MAX_BLOCK_THREADS


def test_project_config():
    broken = KernelConfig((0, 512, 1), (128, 16, 1), tiling=100, unroll=40, code="x")

    repaired = project_config(broken)

    assert repaired.grid == (1, 256, 1)
    assert repaired.block == (64, 16, 1)
    assert repaired.tiling == 64
    assert repaired.unroll == 16
    assert repaired.code == "x"
    assert repaired.is_valid
