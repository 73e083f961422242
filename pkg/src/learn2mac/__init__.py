"""Learn2MAC: online-learning uncoordinated multiple access for URLLC traffic."""

from .baselines import (
    AlohaParams,
    PeriodicAlohaParams,
    TdmaSchedule,
    aloha_pattern,
    calibrate_energy_matched_q,
    periodic_q,
    tdma_pattern,
)
from .harness import (
    Aloha,
    Learn2MAC,
    PeriodicAlohaBackground,
    RunResult,
    ScenarioConfig,
    TdmaBackground,
    baseline_arm,
    load_config,
    preset,
    run_paired,
    run_preset,
    run_scenario,
    run_sweep,
)
from .learner import (
    Learn2MACDevice,
    counterfactual_rewards,
    default_learning_rate,
    eg_update,
    sample_pattern,
    subgradient,
)
from .medium import FrameResolution, SlotOutcome, frame_success, free_slots_for, resolve_frame
from .metrics import DeviceTrace, RegretTracker, regret, running_urllc_throughput, utility
from .patterns import Dictionary, DictionaryConfig, generate_dictionary, pattern_weight

__version__ = "0.1.0"
