"""Learn2MAC device: exponentiated-gradient learning over a pattern dictionary.

After each frame the device rebuilds, from the occupancy feedback and its
own pattern, which slots were free of other transmitters.  That is enough
to score *every* dictionary pattern counterfactually, so the update is a
full-information multiplicative-weights step on the simplex.

All functions accept an optional leading device axis so one call can
advance a whole population of learners.
"""

import math

import numpy as np

from .medium import free_slots_for
from .patterns import Dictionary


def _matrix(dictionary) -> np.ndarray:
    return dictionary.patterns if isinstance(dictionary, Dictionary) else np.asarray(dictionary)


def counterfactual_rewards(avail, dictionary, L: int) -> np.ndarray:
    """1 for each pattern that would have met the L-success criterion given ``avail``.

    ``avail`` is (N,) or (K, N); ``dictionary`` is a Dictionary, a (d, N)
    matrix, or a (K, d, N) stack.
    """
    mat = _matrix(dictionary)
    hits = np.matmul(mat, np.asarray(avail, dtype=np.float64)[..., None])[..., 0]
    return (hits >= L).astype(np.int8)


def subgradient(rewards, dictionary, eta) -> np.ndarray:
    """Marginal utility of each pattern: reward minus eta times its energy."""
    weights = _matrix(dictionary).sum(axis=-1)
    return np.asarray(rewards, dtype=np.float64) - np.asarray(eta, dtype=np.float64)[..., None] * weights


def eg_update(p, v, alpha) -> np.ndarray:
    """Multiplicative-weights ascent: p_i <- p_i exp(alpha v_i) / normalizer.

    Larger utility means larger probability.  The exponent is shifted by its
    maximum so nothing overflows.
    """
    p = np.asarray(p, dtype=np.float64)
    z = np.asarray(alpha, dtype=np.float64)[..., None] * np.asarray(v, dtype=np.float64)
    z -= z.max(axis=-1, keepdims=True)
    w = p * np.exp(z)
    return w / w.sum(axis=-1, keepdims=True)


def sample_pattern(p, u):
    """Inverse-CDF draw: smallest i with cumsum(p)[i] > u.

    If rounding leaves the total mass at or below ``u``, the last index
    with positive mass is returned.
    """
    p = np.asarray(p, dtype=np.float64)
    cdf = np.cumsum(p, axis=-1)
    u = np.asarray(u, dtype=np.float64)
    above = cdf > u[..., None]
    idx = np.argmax(above, axis=-1)
    overflow = ~above.any(axis=-1)
    if np.any(overflow):
        last = p.shape[-1] - 1 - np.argmax((p > 0)[..., ::-1], axis=-1)
        idx = np.where(overflow, last, idx)
    return int(idx) if idx.ndim == 0 else idx


def default_learning_rate(T: int, eta: float, N: int) -> float:
    """Horizon-tuned rate sqrt(2) / (G sqrt(T)), with G = max(1, eta N)."""
    if T < 1:
        raise ValueError(f"horizon must be >= 1, got {T}")
    G = max(1.0, eta * N)
    return math.sqrt(2.0) / (G * math.sqrt(T))


class Learn2MACDevice:
    """One learning transmitter.

    Use :meth:`choose` at the start of a frame and :meth:`observe` with the
    broadcast feedback at its end.  The first frame samples from the
    uniform start without an update.
    """

    def __init__(self, dictionary: Dictionary, L: int, eta: float = 0.05, alpha: float | None = None, T: int | None = None):
        if eta <= 0:
            raise ValueError("eta must be positive")
        if alpha is None:
            if T is None:
                raise ValueError("give either alpha or the horizon T")
            alpha = default_learning_rate(T, eta, dictionary.N)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        self.dictionary = dictionary
        self.L = L
        self.eta = eta
        self.alpha = alpha
        self.p = np.full(dictionary.d, 1.0 / dictionary.d)
        self.last_v = None
        self.last_index = None

    @property
    def G(self) -> float:
        return max(1.0, self.eta * self.dictionary.N)

    def choose(self, u: float) -> int:
        if self.last_v is not None:
            self.p = eg_update(self.p, self.last_v, self.alpha)
        self.last_index = sample_pattern(self.p, u)
        return self.last_index

    @property
    def pattern(self) -> np.ndarray:
        return self.dictionary[self.last_index]

    def observe(self, feedback) -> np.ndarray:
        """Score every pattern on the frame just played; returns the rewards."""
        avail = free_slots_for(feedback, self.pattern)
        rewards = counterfactual_rewards(avail, self.dictionary, self.L)
        self.last_v = subgradient(rewards, self.dictionary, self.eta)
        return rewards
