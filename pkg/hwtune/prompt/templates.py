SYSTEM_FINETUNE = (
    "You are an expert assistant specialized in optimizing hyperparameters for "
    "neural networks. Your goal is to help improve the performance of neural "
    "networks by providing optimized hyperparameter configurations."
)

SYSTEM_DEPLOYMENT = (
    "You are an expert assistant specialized in optimizing the deployment of "
    "neural networks. Your goal is to help improve the inference speed of the "
    "network by providing optimized kernel execution configurations and code."
)

SYSTEM_JOINT = (
    "You are an expert assistant specialized in optimizing hyperparameters for "
    "both fine-tuning and deployment of a certain neural network. Your goal is to "
    "help improve the accuracy and inference speed of the network by providing "
    "optimized hyperparameter configurations and code."
)

REACT_DIRECTIVE = (
    "Before making a decision, always generate a reasoning step (Thought) to "
    "analyze the current context, considering previous results and constraints. "
    "Then, take an appropriate action (Action) based on your reasoning. After the "
    "action, observe (Observation) the outcomes we feedback to you and adjust your "
    "approach accordingly. Identify missing information, potential errors, and "
    "formulate a strategy before taking any action.\n"
    "Each trial's configuration and results should be taken into account for a "
    "**comprehensive** analysis of the optimization process. Please review the "
    "history and consider your next steps before proceeding."
)

REACT_REMINDER = "Finishing tasks with interleaving Thought, Action, Observation steps."

BUDGET_LINE = (
    "Note that there are {rounds_left} rounds left, please try to make effective "
    "attempts."
)

OPTIMIZE_REQUEST = "Please optimize and provide a set of optimized configurations."

FIRST_ROUND_REQUEST = "Please provide the configuration for the first round."

CURRENT_CONFIG = "The current configuration is: {config}"
CURRENT_KERNEL_CONFIG = "The current execution configuration is: {config}"
RESULT_LINE = "The result based on this configuration: {metrics}"
LOSS_TRACE = "List of recent training losses(avg loss per epoch): {losses}"

SUMMARY_HEADER = "Summary of earlier rounds:"

HARDWARE = (
    "I plan to deploy the model on {description}. Here's more details about the "
    "hardware: {sheet}. The memory limit is {memory:g}GB, Please choose an "
    "appropriate quantization bit width that satisfies the memory limitations and "
    "achieves better performance on such hardware."
)

FINETUNE_INTRO = (
    "You are assisting in optimizing the hyperparameters for {method} of {model}.\n"
    "Using [{precision}] Quantization\n"
    "The dataset is {dataset}.\n"
    "Code is based on {framework}.\n"
    "Below is the hyperparameter search space:"
)

FINETUNE_RULES = (
    "You will receive accuracy results after each attempt. The goal is to find a "
    "configuration that minimizes the error rate within the given budget.\n"
    "If the loss remains unchanged, explore different parts of the search space.\n"
    "You should provide only **one set of configurations per iteration**. Once I "
    "provide the training results, you will return an optimized configuration.\n"
    "**Make sure that all hyperparameters remain within the defined range**.\n"
    "For the **first round**, it is recommended to use the **default parameters** "
    "for training."
)

DEPLOYMENT_INTRO = (
    "Deployment:\n"
    "The {model} model consists of various kernels, including {kernels}. Please "
    "optimize the execution configuration of these kernels. The kernel information "
    "and the default execution configuration are provided below, and the deployment "
    "latency results will be fed back to you. Find the optimal kernel execution "
    "parameters, including the computation block size for parallelization, tiling "
    "size and loop unrolling. All grid and block dimensions have to stay within "
    "[1, 256], the block may hold at most 1024 threads, the tiling size is a power "
    "of two and the unroll size stays within [1, 16].\n"
    "Please provide the execution configuration parameters in the following JSON "
    "format:"
)

KERNEL_RESPONSE_SCHEMA = (
    "{\n"
    '    "griddim":[x,y,z],\n'
    '    "blockdim":[a,b,c],\n'
    '    "tiling size": t,\n'
    '    "unroll size": u,\n'
    '    "code changed": false,\n'
    '    "code": ""\n'
    "}"
)

KERNEL_INTRO = (
    "Kernel {index} to optimize is [{name}], this is the execution information "
    "about this kernel:"
)

RESPONSE_FORMAT = "Please provide the configuration in **JSON format**. For example:"

PLACEHOLDERS = "xyzwvpabcdefghijklmnoqrstu"
