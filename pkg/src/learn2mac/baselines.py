"""Non-learning transmitters: slotted ALOHA variants and fixed TDMA background."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AlohaParams:
    q: float

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q must lie in [0, 1], got {self.q}")


@dataclass(frozen=True)
class PeriodicAlohaParams:
    """Per-slot access probability q0 + A sin(2 pi t / P)."""

    q0: float = 0.25
    A: float = 0.15
    P: int = 2000

    def __post_init__(self):
        if self.q0 - self.A < 0.0 or self.q0 + self.A > 1.0:
            raise ValueError(f"q0 +/- A must stay in [0, 1], got q0={self.q0}, A={self.A}")
        if self.P < 1:
            raise ValueError(f"period must be >= 1, got {self.P}")


@dataclass(frozen=True)
class TdmaSchedule:
    occupied: frozenset

    def __init__(self, occupied=()):
        object.__setattr__(self, "occupied", frozenset(int(n) for n in occupied))

    def check(self, N: int) -> None:
        bad = [n for n in self.occupied if not 0 <= n < N]
        if bad:
            raise ValueError(f"TDMA slots {sorted(bad)} outside 0..{N - 1}")


def aloha_pattern(params: AlohaParams, N: int, rng: np.random.Generator) -> np.ndarray:
    """Each slot transmitted independently with probability q."""
    return (rng.random(N) < params.q).astype(np.uint8)


def periodic_q(t, params: PeriodicAlohaParams):
    """Access probability in frame ``t`` (scalar or array of frame indices)."""
    q = params.q0 + params.A * np.sin(2.0 * np.pi * np.asarray(t, dtype=np.float64) / params.P)
    q = np.clip(q, 0.0, 1.0)
    return float(q) if q.ndim == 0 else q


def tdma_pattern(schedule: TdmaSchedule, N: int) -> np.ndarray:
    schedule.check(N)
    out = np.zeros(N, dtype=np.uint8)
    out[sorted(schedule.occupied)] = 1
    return out


def calibrate_energy_matched_q(mean_energy: float, N: int) -> float:
    """Per-slot probability giving ``mean_energy`` expected transmissions per frame."""
    if not 0.0 <= mean_energy <= N:
        raise ValueError(f"mean energy {mean_energy} outside [0, {N}]")
    return mean_energy / N
