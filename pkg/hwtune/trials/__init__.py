from .trial_log import (  # noqa
    TIMINGS_FILE,
    TRIALS_FILE,
    TrialLog,
    dump_record,
    first_difference,
    read_trials,
)
from .trial_record import TrialRecord, kernel_config_from_json  # noqa
