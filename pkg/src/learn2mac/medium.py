"""Collision channel: resolves one frame under hard interference.

A slot carried by exactly one transmitter is a success; two or more
transmitters destroy each other.  After the frame every device hears the
per-slot occupancy (idle / success / collision), without learning who
succeeded.
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class SlotOutcome(IntEnum):
    IDLE = 0
    SUCCESS = 1
    COLLISION = 2


_CODES = "ISC"


@dataclass(frozen=True, eq=False)
class FrameResolution:
    feedback: np.ndarray  # (N,) SlotOutcome codes
    success: np.ndarray  # (K, N) s_{k,n}

    @property
    def success_counts(self) -> np.ndarray:
        return self.success.sum(axis=-1)


def feedback_to_str(feedback) -> str:
    """Serialize as a string over {I, S, C}."""
    return "".join(_CODES[int(o)] for o in feedback)


def feedback_from_str(text: str) -> np.ndarray:
    try:
        return np.array([_CODES.index(c) for c in text], dtype=np.uint8)
    except ValueError:
        raise ValueError(f"feedback string must use I/S/C only: {text!r}") from None


def resolve_frame(profiles) -> FrameResolution:
    """Resolve the patterns played by K devices in one frame.

    ``profiles`` is a (K, N) 0/1 matrix or a list of K equal-length
    patterns.  Extra leading axes are treated as independent frames.
    """
    if not isinstance(profiles, np.ndarray):
        lengths = {len(p) for p in profiles}
        if len(lengths) > 1:
            raise ValueError(f"patterns have mismatched lengths {sorted(lengths)}")
    mat = np.asarray(profiles, dtype=np.uint8)
    if mat.ndim < 2:
        raise ValueError("profiles must form a (K, N) matrix")
    load = mat.sum(axis=-2, dtype=np.int64)
    feedback = np.minimum(load, 2).astype(np.uint8)
    success = mat * (load == 1)[..., None, :]
    return FrameResolution(feedback=feedback, success=success)


def frame_success(success_count, L: int):
    """URLLC frame criterion: at least L collision-free transmissions."""
    hit = np.asarray(success_count) >= L
    return int(hit) if hit.ndim == 0 else hit.astype(np.int8)


def free_slots_for(feedback, own) -> np.ndarray:
    """Slots that no *other* device used, as seen by the device that played ``own``.

    A success slot is free only if the success was the device's own
    transmission; a collision slot is never free.  Broadcasts over a
    leading device axis when ``own`` is (K, N).
    """
    feedback = np.asarray(feedback)
    own = np.asarray(own)
    idle = feedback == SlotOutcome.IDLE
    mine = (feedback == SlotOutcome.SUCCESS) & (own != 0)
    return (idle | mine).astype(np.uint8)
