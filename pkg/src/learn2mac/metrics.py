"""Utility, latent throughput, energy and regret bookkeeping."""

from dataclasses import dataclass, field

import numpy as np


def utility(R, weight, eta):
    """Frame utility: URLLC success minus eta per transmission."""
    return R - eta * weight


def running_urllc_throughput(trace, t: int | None = None) -> float:
    """Fraction of the first ``t`` frames that met the URLLC criterion.

    ``trace`` is a DeviceTrace or a plain sequence of 0/1 frame outcomes.
    """
    R = np.asarray(trace.success if isinstance(trace, DeviceTrace) else trace)
    if t is None:
        t = len(R)
    if not 1 <= t <= len(R):
        raise ValueError(f"t={t} outside recorded frames 1..{len(R)}")
    return float(R[:t].sum()) / t


def running_average(R) -> np.ndarray:
    """Running URLLC throughput after every frame."""
    R = np.asarray(R, dtype=np.float64)
    return np.cumsum(R) / np.arange(1, len(R) + 1)


class RegretTracker:
    """Cumulative utilities for regret against the best fixed pattern in hindsight.

    Holds, per device, the running total utility of every dictionary
    pattern plus the algorithm's expected and realized totals.  A leading
    device axis is supported: pass ``shape=(K, d)``.
    """

    def __init__(self, shape):
        shape = (shape,) if np.ndim(shape) == 0 else tuple(shape)
        self.pattern_utility = np.zeros(shape)
        self.expected_utility = np.zeros(shape[:-1])
        self.realized_utility = np.zeros(shape[:-1])
        self.last_expected = np.zeros(shape[:-1])
        self.frames = 0

    def update(self, v, p, chosen=None):
        """Add one frame: ``v`` pattern utilities, ``p`` the distribution played."""
        v = np.asarray(v, dtype=np.float64)
        self.pattern_utility += v
        self.last_expected = np.sum(np.asarray(p) * v, axis=-1)
        self.expected_utility += self.last_expected
        if chosen is not None:
            self.realized_utility += np.take_along_axis(v, np.asarray(chosen)[..., None], axis=-1)[..., 0]
        self.frames += 1

    def best(self):
        """Hindsight-best index (lowest index on ties) and its cumulative utility."""
        idx = np.argmax(self.pattern_utility, axis=-1)
        val = np.take_along_axis(self.pattern_utility, np.asarray(idx)[..., None], axis=-1)[..., 0]
        return idx, val

    def regret(self):
        idx, val = self.best()
        return val - self.expected_utility

    def realized_regret(self):
        return self.best()[1] - self.realized_utility


def regret(tracker: RegretTracker):
    """Expected-utility regret and the hindsight-best pattern index.

    Expected utility is linear in p, so the best static distribution is a
    point mass on the pattern with the largest cumulative utility.
    """
    idx, val = tracker.best()
    r = val - tracker.expected_utility
    if np.ndim(r) == 0:
        return float(r), int(idx)
    return r, idx


@dataclass
class DeviceTrace:
    """Per-frame record of one traced device.

    Baseline devices leave ``chosen_index`` at -1 and the utility and
    regret columns at NaN.
    """

    device_id: int
    kind: str
    chosen_index: np.ndarray
    success: np.ndarray
    energy: np.ndarray
    expected_utility: np.ndarray
    cumulative_regret: np.ndarray
    probabilities: np.ndarray | None = None
    rewards: np.ndarray | None = None
    summary: dict = field(default_factory=dict)

    @property
    def frames(self) -> int:
        return len(self.success)

    @property
    def total_energy(self) -> int:
        return int(self.energy.sum())

    @property
    def mean_energy(self) -> float:
        return float(self.energy.mean())

    def throughput(self, t: int | None = None) -> float:
        return running_urllc_throughput(self, t)

    def window_throughput(self, last: int) -> float:
        return float(self.success[-last:].mean())

    def running_throughput(self) -> np.ndarray:
        return running_average(self.success)

    def modal_index(self, last: int | None = None) -> int:
        """Most frequently played dictionary index (lowest on ties)."""
        idx = self.chosen_index if last is None else self.chosen_index[-last:]
        return int(np.argmax(np.bincount(idx)))
