from pathlib import Path
from typing import Any, Dict, List

from hwtune.shared.util import (
    DocumentNotFound,
    check_schema,
    compile_schema,
    load_document,
)

from .kernel_spec import KERNELS, KernelSpec


KERNEL_DIR = Path(__file__).parent / "kernels"

int_list = {"type": "array", "items": {"type": "integer", "minimum": 1}}
shape = {**int_list, "minItems": 4, "maxItems": 4}
dim3 = {**int_list, "minItems": 3, "maxItems": 3}

kernel_entry_schema = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "input size": int_list,
        "kernel": {"type": "string", "enum": list(KERNELS)},
        "tensor type": {"type": "string"},
        "src0 tensor shape": shape,
        "src1 tensor shape": shape,
        "output tensor shape": shape,
        "default gridDim": dim3,
        "default blockDim": dim3,
        "unroll size": {"type": "integer", "minimum": 1},
        "default tiling size": {"type": "integer", "minimum": 1},
        "kernel code": {"type": "string"},
    },
    "required": [
        "kernel",
        "tensor type",
        "src0 tensor shape",
        "output tensor shape",
        "default gridDim",
        "default blockDim",
        "unroll size",
    ],
    "additionalProperties": False,
}

kernels_schema = compile_schema(
    {
        "type": "object",
        "properties": {"kernels": {"type": "array", "items": kernel_entry_schema}},
        "required": ["kernels"],
    }
)


def kernel_from_dict(entry: Dict[str, Any]) -> KernelSpec:
    src_shapes = [tuple(entry["src0 tensor shape"])]
    if "src1 tensor shape" in entry:
        src_shapes.append(tuple(entry["src1 tensor shape"]))
    input_size = entry.get("input size")
    return KernelSpec(
        kernel=entry["kernel"],
        tensor_type=entry["tensor type"],
        src_shapes=src_shapes,
        out_shape=tuple(entry["output tensor shape"]),
        default_grid=tuple(entry["default gridDim"]),
        default_block=tuple(entry["default blockDim"]),
        default_unroll=entry["unroll size"],
        # no default tiling is published for these kernels
        default_tiling=entry.get("default tiling size", 1),
        name=entry.get("name"),
        input_size=tuple(input_size) if input_size else None,
    )


def kernel_to_prompt_json(spec: KernelSpec) -> Dict[str, Any]:
    data: Dict[str, Any] = {"kernel": spec.kernel, "tensor type": spec.tensor_type}
    for index, src in enumerate(spec.src_shapes):
        data[f"src{index} tensor shape"] = list(src)
    data["output tensor shape"] = list(spec.out_shape)
    data["default gridDim"] = list(spec.default_grid)
    data["default blockDim"] = list(spec.default_block)
    data["unroll size"] = spec.default_unroll
    return data


def load_kernels_text(text: str) -> List[KernelSpec]:
    data = load_document(text, "kernel spec")
    check_schema(kernels_schema, data, "kernel spec")
    return [kernel_from_dict(entry) for entry in data["kernels"]]


def list_kernel_files() -> List[str]:
    return sorted(p.stem for p in KERNEL_DIR.glob("*.yaml"))


def load_kernels(name_or_path: str) -> List[KernelSpec]:
    path = Path(name_or_path)
    if not path.is_file():
        path = KERNEL_DIR / f"{name_or_path}.yaml"
    if not path.is_file():
        raise DocumentNotFound("kernel spec file", str(name_or_path))
    return load_kernels_text(path.read_text())


def find_kernel(specs: List[KernelSpec], label: str) -> KernelSpec:
    for spec in specs:
        if spec.label == label:
            return spec
    raise DocumentNotFound("kernel", label)
