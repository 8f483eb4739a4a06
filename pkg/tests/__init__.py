from .fixtures import (  # noqa
    a6000,
    adreno740,
    benchmark_kernels,
    reset_di,
    resnet_space,
    services,
    softmax_spec,
)
from .util import agent_reply, float_space, proposal, sphere_value  # noqa
