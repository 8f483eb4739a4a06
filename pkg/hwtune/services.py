def register_services():
    from hwtune.agent import setup_di as agent_setup_di
    from hwtune.harness import setup_di as harness_setup_di
    from hwtune.optimizers import setup_di as optimizers_setup_di
    from hwtune.shared.services import setup_di as util_setup_di

    util_setup_di()
    agent_setup_di()
    optimizers_setup_di()
    harness_setup_di()
