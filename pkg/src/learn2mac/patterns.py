"""Transmission patterns and randomized pattern dictionaries.

A pattern is a length-N 0/1 vector (``numpy.uint8``); entry n is 1 when
the device transmits in slot n of the frame.  A dictionary stacks d
patterns into a ``(d, N)`` matrix whose row 0 is always the silent
(all-zero) pattern.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .rng import make_rng


def pattern_weight(pattern) -> int:
    """Number of transmissions in a pattern."""
    return int(np.count_nonzero(pattern))


def pattern_to_str(pattern) -> str:
    """Serialize as a string of '0'/'1', slot 0 leftmost."""
    return "".join("1" if b else "0" for b in np.asarray(pattern).ravel())


def pattern_from_str(text: str) -> np.ndarray:
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a 0/1 pattern string: {text!r}")
    return np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")


def admissible_count(N: int, L: int) -> int:
    """Number of distinct patterns a dictionary can hold (zero pattern included)."""
    return 1 + sum(comb(N, ell) for ell in range(L, N + 1))


@dataclass(frozen=True)
class DictionaryConfig:
    N: int
    L: int
    d: int = 100
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.L <= self.N:
            raise ValueError(f"need 1 <= L <= N, got L={self.L}, N={self.N}")
        if self.d < 1:
            raise ValueError(f"dictionary size must be >= 1, got {self.d}")
        cap = admissible_count(self.N, self.L)
        if self.d > cap:
            raise ValueError(
                f"d={self.d} exceeds the {cap} admissible patterns for N={self.N}, L={self.L}"
            )


@dataclass(frozen=True, eq=False)
class Dictionary:
    """Ordered pattern set; ``patterns[i]`` is pattern i, ``patterns[0]`` is silence."""

    patterns: np.ndarray

    def __post_init__(self):
        mat = np.ascontiguousarray(self.patterns, dtype=np.uint8)
        if mat.ndim != 2:
            raise ValueError("dictionary must be a (d, N) matrix")
        mat.setflags(write=False)
        object.__setattr__(self, "patterns", mat)

    @property
    def d(self) -> int:
        return self.patterns.shape[0]

    @property
    def N(self) -> int:
        return self.patterns.shape[1]

    @property
    def weights(self) -> np.ndarray:
        return self.patterns.sum(axis=1, dtype=np.int64)

    def __len__(self):
        return self.d

    def __getitem__(self, i):
        return self.patterns[i]

    def __eq__(self, other):
        if not isinstance(other, Dictionary):
            return NotImplemented
        return np.array_equal(self.patterns, other.patterns)

    def validate(self, L: int) -> None:
        """Raise ``ValueError`` if any dictionary invariant is broken."""
        w = self.weights
        if self.d == 0 or w[0] != 0:
            raise ValueError("index 0 must hold the zero pattern")
        if np.any(w[1:] == 0):
            raise ValueError("zero pattern appears more than once")
        if np.any(w[1:] < L):
            raise ValueError(f"nonzero pattern with fewer than L={L} transmissions")
        if len(np.unique(self.patterns, axis=0)) != self.d:
            raise ValueError("duplicate patterns")

    def to_strings(self) -> list[str]:
        return [pattern_to_str(p) for p in self.patterns]

    @classmethod
    def from_strings(cls, rows) -> "Dictionary":
        return cls(np.stack([pattern_from_str(r) for r in rows]))


def random_weight_pattern(rng: np.random.Generator, N: int, ell: int) -> np.ndarray:
    """Uniform draw among the C(N, ell) patterns with exactly ``ell`` ones."""
    out = np.zeros(N, dtype=np.uint8)
    out[rng.permutation(N)[:ell]] = 1
    return out


def draw_candidate(rng: np.random.Generator, N: int, L: int) -> np.ndarray:
    """Weight uniform in {L, ..., N}, then a uniform pattern of that weight."""
    ell = int(rng.integers(L, N + 1))
    return random_weight_pattern(rng, N, ell)


def generate_dictionary(cfg: DictionaryConfig) -> Dictionary:
    """Randomized dictionary: silence plus d-1 distinct patterns of weight >= L.

    Each candidate draws its weight uniformly from {L, ..., N} and then a
    uniform pattern of that weight; duplicates are discarded and redrawn.
    """
    rng = make_rng(cfg.seed)
    rows = [np.zeros(cfg.N, dtype=np.uint8)]
    seen = {rows[0].tobytes()}
    while len(rows) < cfg.d:
        cand = draw_candidate(rng, cfg.N, cfg.L)
        key = cand.tobytes()
        if key not in seen:
            seen.add(key)
            rows.append(cand)
    return Dictionary(np.stack(rows))
