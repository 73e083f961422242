"""Scenario configuration and the frame loop.

One run advances every device frame by frame: learners update from the
previous frame's feedback and sample a pattern, baselines emit theirs,
the channel resolves the frame and the metrics accumulate.  All learners
in a run are stepped together along a leading device axis.
"""

import csv
import json
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import rng as rngmod
from .baselines import (
    AlohaParams,
    PeriodicAlohaParams,
    TdmaSchedule,
    calibrate_energy_matched_q,
    periodic_q,
    tdma_pattern,
)
from .learner import counterfactual_rewards, default_learning_rate, eg_update, sample_pattern
from .medium import free_slots_for, resolve_frame
from .metrics import DeviceTrace, RegretTracker
from .patterns import DictionaryConfig, generate_dictionary, pattern_to_str

SCHEMA_VERSION = "1"

TRACE_COLUMNS = (
    "frame",
    "device_id",
    "chosen_index",
    "energy",
    "success",
    "running_urllc_throughput",
    "expected_utility",
    "cumulative_regret",
)


@dataclass(frozen=True)
class Learn2MAC:
    d: int = 100
    eta: float = 0.05
    alpha: float | str = "auto"
    kind = "learn2mac"


@dataclass(frozen=True)
class Aloha:
    q: float = 0.2
    kind = "aloha"


@dataclass(frozen=True)
class PeriodicAlohaBackground:
    q0: float = 0.25
    A: float = 0.15
    P: int = 2000
    count: int = 1
    kind = "periodic_aloha_background"


@dataclass(frozen=True)
class TdmaBackground:
    occupied: tuple = tuple(range(10))
    kind = "tdma_background"


_SPECS = {cls.kind: cls for cls in (Learn2MAC, Aloha, PeriodicAlohaBackground, TdmaBackground)}


@dataclass(frozen=True)
class ScenarioConfig:
    N: int = 20
    L: int = 2
    T: int = 30000
    master_seed: int = 0
    devices: tuple = ()
    trace_probabilities: bool = False
    trace_rewards: bool = False
    name: str = ""

    def validate(self) -> None:
        if not 1 <= self.L <= self.N:
            raise ValueError(f"need 1 <= L <= N, got L={self.L}, N={self.N}")
        if self.T < 1:
            raise ValueError(f"T must be >= 1, got {self.T}")
        if not self.devices:
            raise ValueError("scenario needs at least one device")
        for dev in self.devices:
            if isinstance(dev, Learn2MAC):
                DictionaryConfig(self.N, self.L, dev.d)
                if dev.eta <= 0:
                    raise ValueError("eta must be positive")
                if dev.alpha != "auto" and not float(dev.alpha) > 0:
                    raise ValueError(f"alpha must be positive or 'auto', got {dev.alpha!r}")
            elif isinstance(dev, Aloha):
                AlohaParams(dev.q)
            elif isinstance(dev, PeriodicAlohaBackground):
                PeriodicAlohaParams(dev.q0, dev.A, dev.P)
                if dev.count < 1:
                    raise ValueError("background user count must be >= 1")
            elif isinstance(dev, TdmaBackground):
                TdmaSchedule(dev.occupied).check(self.N)
            else:
                raise TypeError(f"unknown device spec {dev!r}")

    def units(self):
        """Expanded roster as (device_id, spec); a background group with count c takes c ids."""
        out = []
        for dev in self.devices:
            for _ in range(getattr(dev, "count", 1)):
                out.append((len(out), dev))
        return out

    def to_dict(self) -> dict:
        out = asdict(self)
        out["devices"] = [{"type": dev.kind, **asdict(dev)} for dev in self.devices]
        for dev in out["devices"]:
            if "occupied" in dev:
                dev["occupied"] = list(dev["occupied"])
        return {"schema_version": SCHEMA_VERSION, **out}

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        data = dict(data)
        version = str(data.pop("schema_version", SCHEMA_VERSION))
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported config schema version {version!r}")
        devices = []
        for raw in data.pop("devices", []):
            raw = dict(raw)
            kind = raw.pop("type")
            if kind not in _SPECS:
                raise ValueError(f"unknown device type {kind!r}")
            if "occupied" in raw:
                raw["occupied"] = tuple(raw["occupied"])
            devices.append(_SPECS[kind](**raw))
        cfg = cls(devices=tuple(devices), **data)
        cfg.validate()
        return cfg


def load_config(path) -> ScenarioConfig:
    return ScenarioConfig.from_dict(json.loads(Path(path).read_text()))


@dataclass
class RunResult:
    config: ScenarioConfig
    seed: int
    traces: list
    system_successes: np.ndarray
    dictionaries: dict = field(default_factory=dict)

    @property
    def system_latent_throughput(self) -> float:
        """Sum over traced devices of their URLLC throughput over the whole run."""
        return float(sum(tr.throughput() for tr in self.traces))

    def window_system_throughput(self, last: int) -> float:
        return float(sum(tr.window_throughput(last) for tr in self.traces))

    def trace(self, kind="learn2mac") -> DeviceTrace:
        return next(tr for tr in self.traces if tr.kind == kind)

    def summary(self) -> dict:
        return {
            "seed": self.seed,
            "frames": self.config.T,
            "system_latent_throughput": self.system_latent_throughput,
            "max_system_successes_per_frame": int(self.system_successes.max()),
            "devices": [tr.summary for tr in self.traces],
            "config": self.config.to_dict(),
        }


def _resolve_learning_rate(dev: Learn2MAC, T: int, N: int) -> float:
    if dev.alpha == "auto":
        return default_learning_rate(T, dev.eta, N)
    return float(dev.alpha)


def run_scenario(cfg: ScenarioConfig, seed: int | None = None) -> RunResult:
    """Run one scenario end to end; deterministic in (cfg, seed)."""
    cfg.validate()
    seed = cfg.master_seed if seed is None else seed
    N, L, T = cfg.N, cfg.L, cfg.T
    units = cfg.units()
    K = len(units)

    learners = [(i, dev) for i, dev in units if isinstance(dev, Learn2MAC)]
    alohas = [(i, dev) for i, dev in units if isinstance(dev, Aloha)]
    backgrounds = [(i, dev) for i, dev in units if isinstance(dev, PeriodicAlohaBackground)]
    tdmas = [(i, dev) for i, dev in units if isinstance(dev, TdmaBackground)]

    # Learner state, padded to a common dictionary size; padded rows are
    # silent patterns with zero mass, which the update keeps at zero.
    KL = len(learners)
    lrows = np.array([i for i, _ in learners], dtype=np.intp)
    dmax = max((dev.d for _, dev in learners), default=1)
    dicts = np.zeros((KL, dmax, N), dtype=np.uint8)
    P = np.zeros((KL, dmax))
    dictionaries = {}
    for k, (i, dev) in enumerate(learners):
        dct = generate_dictionary(DictionaryConfig(N, L, dev.d, rngmod.derive_seed(seed, i, rngmod.DICTIONARY)))
        dictionaries[i] = dct
        dicts[k, : dev.d] = dct.patterns
        P[k, : dev.d] = 1.0 / dev.d
    dicts_f = dicts.astype(np.float64)
    W = dicts.sum(axis=-1, dtype=np.int64)
    eta = np.array([dev.eta for _, dev in learners], dtype=np.float64)
    alpha = np.array([_resolve_learning_rate(dev, T, N) for _, dev in learners], dtype=np.float64)
    draws = np.stack(
        [rngmod.device_rng(seed, i, rngmod.SAMPLING).random(T) for i, _ in learners], axis=1
    ) if KL else np.zeros((T, 0))
    arK = np.arange(KL)

    # Non-learning traffic does not react to feedback: draw all of it up front.
    frames = np.arange(1, T + 1)
    fixed_rows = []
    fixed_traffic = []
    for i, dev in alohas:
        fixed_rows.append(i)
        fixed_traffic.append(rngmod.device_rng(seed, i, rngmod.TRAFFIC).random((T, N)) < dev.q)
    for i, dev in backgrounds:
        q = periodic_q(frames, PeriodicAlohaParams(dev.q0, dev.A, dev.P))
        fixed_rows.append(i)
        fixed_traffic.append(rngmod.device_rng(seed, i, rngmod.TRAFFIC).random((T, N)) < q[:, None])
    for i, dev in tdmas:
        fixed_rows.append(i)
        fixed_traffic.append(np.broadcast_to(tdma_pattern(TdmaSchedule(dev.occupied), N).astype(bool), (T, N)))
    fixed_rows = np.array(fixed_rows, dtype=np.intp)
    fixed_traffic = np.stack(fixed_traffic, axis=1).astype(np.uint8) if fixed_traffic else np.zeros((T, 0, N), np.uint8)

    chosen = np.zeros((T, KL), dtype=np.int64)
    l_success = np.zeros((T, KL), dtype=np.int8)
    exp_util = np.zeros((T, KL))
    cum_regret = np.zeros((T, KL))
    probs = np.zeros((T, KL, dmax)) if cfg.trace_probabilities else None
    rewards_log = np.zeros((T, KL, dmax), dtype=np.int8) if cfg.trace_rewards else None
    tracker = RegretTracker((KL, dmax))
    system_successes = np.zeros(T, dtype=np.int64)
    success_counts = np.zeros((T, K), dtype=np.int64)

    if not KL:
        # Nothing reacts to feedback: resolve every frame at once.
        load = fixed_traffic.sum(axis=1, dtype=np.int64)
        success_counts[:, fixed_rows] = (fixed_traffic * (load == 1)[:, None, :]).sum(axis=-1)
        system_successes[:] = np.count_nonzero(success_counts >= L, axis=1)

    prof = np.zeros((K, N), dtype=np.uint8)
    V = None
    for t in range(T if KL else 0):
        if KL:
            if V is not None:
                P = eg_update(P, V, alpha)
            idx = sample_pattern(P, draws[t])
            prof[lrows] = dicts[arK, idx]
        if len(fixed_rows):
            prof[fixed_rows] = fixed_traffic[t]
        res = resolve_frame(prof)
        counts = res.success_counts
        success_counts[t] = counts
        system_successes[t] = np.count_nonzero(counts >= L)
        if KL:
            avail = free_slots_for(res.feedback, prof[lrows])
            R = counterfactual_rewards(avail, dicts_f, L)
            V = R - eta[:, None] * W
            tracker.update(V, P, idx)
            chosen[t] = idx
            l_success[t] = R[arK, idx]
            exp_util[t] = tracker.last_expected
            cum_regret[t] = tracker.regret()
            if probs is not None:
                probs[t] = P
            if rewards_log is not None:
                rewards_log[t] = R

    traces = []
    for i, dev in units:
        if isinstance(dev, Learn2MAC):
            k = int(np.searchsorted(lrows, i))
            dct = dictionaries[i]
            energy = W[k][chosen[:, k]]
            r_exp, best = float(tracker.regret()[k]), int(tracker.best()[0][k])
            tr = DeviceTrace(
                device_id=i,
                kind=dev.kind,
                chosen_index=chosen[:, k].copy(),
                success=l_success[:, k].copy(),
                energy=energy,
                expected_utility=exp_util[:, k].copy(),
                cumulative_regret=cum_regret[:, k].copy(),
                probabilities=None if probs is None else probs[:, k, : dev.d].copy(),
                rewards=None if rewards_log is None else rewards_log[:, k, : dev.d].copy(),
            )
            tr.summary = {
                "device_id": i,
                "kind": dev.kind,
                "alpha": float(alpha[k]),
                "eta": dev.eta,
                "d": dev.d,
                "urllc_throughput": tr.throughput(),
                "successful_frames": int(tr.success.sum()),
                "total_energy": tr.total_energy,
                "mean_energy": tr.mean_energy,
                "modal_index": tr.modal_index(),
                "modal_pattern": pattern_to_str(dct[tr.modal_index()]),
                "hindsight_best_index": best,
                "hindsight_best_pattern": pattern_to_str(dct[best]),
                "regret": r_exp,
                "realized_regret": float(tracker.realized_regret()[k]),
            }
            traces.append(tr)
        elif isinstance(dev, Aloha):
            j = int(np.flatnonzero(fixed_rows == i)[0])
            energy = fixed_traffic[:, j].sum(axis=-1, dtype=np.int64)
            nan = np.full(T, np.nan)
            tr = DeviceTrace(
                device_id=i,
                kind=dev.kind,
                chosen_index=np.full(T, -1, dtype=np.int64),
                success=(success_counts[:, i] >= L).astype(np.int8),
                energy=energy,
                expected_utility=nan,
                cumulative_regret=nan.copy(),
            )
            tr.summary = {
                "device_id": i,
                "kind": dev.kind,
                "q": dev.q,
                "urllc_throughput": tr.throughput(),
                "successful_frames": int(tr.success.sum()),
                "total_energy": tr.total_energy,
                "mean_energy": tr.mean_energy,
            }
            traces.append(tr)
    return RunResult(cfg, seed, traces, system_successes, dictionaries)


# ---------------------------------------------------------------- presets

PRESET_FRAME = dict(N=20, L=2, T=30000)
PRESET_LEARNER = Learn2MAC(d=100, eta=0.05, alpha=0.001)
SATURATION_Q = 0.2
_SATURATION = re.compile(r"saturation\s*[\(:\-_ ]?\s*(\d+)\s*\)?$")


def preset(name: str, k: int | None = None, seed: int = 0, **overrides) -> ScenarioConfig:
    """Named experiment: ``tdma_static``, ``dynamic_aloha`` or ``saturation(K)``.

    ``overrides`` replace top-level config fields (e.g. ``T=5000``).
    """
    base = dict(PRESET_FRAME, master_seed=seed, name=name)
    if name == "tdma_static":
        devices = (PRESET_LEARNER, TdmaBackground(tuple(range(base["N"] // 2))))
    elif name == "dynamic_aloha":
        devices = (PRESET_LEARNER, PeriodicAlohaBackground())
    else:
        m = _SATURATION.match(name)
        if m:
            k = int(m.group(1))
        elif name != "saturation" or k is None:
            raise ValueError(f"unknown preset {name!r}")
        if k < 1:
            raise ValueError("saturation needs K >= 1")
        base["name"] = f"saturation({k})"
        devices = (PRESET_LEARNER,) * k
    return ScenarioConfig(devices=devices, **{**base, **overrides})


def baseline_arm(cfg: ScenarioConfig, q) -> ScenarioConfig:
    """Same scenario with every learner replaced by ALOHA.

    ``q`` is one probability for all of them or a per-learner sequence.
    Background devices keep their ids, hence their random streams.
    """
    n = sum(isinstance(d, Learn2MAC) for d in cfg.devices)
    qs = list(q) if np.ndim(q) else [q] * n
    it = iter(qs)
    devices = tuple(Aloha(float(next(it))) if isinstance(d, Learn2MAC) else d for d in cfg.devices)
    return replace(cfg, devices=devices, name=f"{cfg.name}/aloha" if cfg.name else "aloha")


def energy_matched_q(result: RunResult) -> list:
    N = result.config.N
    return [calibrate_energy_matched_q(tr.mean_energy, N) for tr in result.traces if tr.kind == "learn2mac"]


def run_paired(cfg: ScenarioConfig, seed: int | None = None, q=None):
    """Learn2MAC arm plus an ALOHA arm.

    With ``q=None`` the ALOHA arm is energy matched: each learner's measured
    mean transmissions per frame set its replacement's access probability.
    """
    learn = run_scenario(cfg, seed)
    if q is None:
        q = energy_matched_q(learn)
    base = run_scenario(baseline_arm(cfg, q), seed)
    return learn, base


def run_preset(name: str, seed: int = 0, **overrides):
    cfg = preset(name, seed=seed, **overrides)
    q = SATURATION_Q if cfg.name.startswith("saturation") else None
    return run_paired(cfg, seed, q)


def _sweep_job(args):
    K, seed, T = args
    cfg = preset("saturation", k=K, seed=seed, T=T)
    learn = run_scenario(cfg)
    base = run_scenario(baseline_arm(cfg, SATURATION_Q))
    return K, seed, learn.system_latent_throughput, base.system_latent_throughput, int(learn.system_successes.max())


def run_sweep(K_values, seeds, T: int = 30000, workers: int = 1):
    """Saturation sweep: total latent throughput per K for both protocols.

    Returns one row per (K, protocol) with the mean and standard deviation
    over seeds plus the raw per-seed values.
    """
    K_values, seeds = list(K_values), list(seeds)
    if not K_values or not seeds:
        raise ValueError("need at least one K and one seed")
    jobs = [(K, s, T) for K in K_values for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            out = list(pool.map(_sweep_job, jobs))
    else:
        out = [_sweep_job(j) for j in jobs]
    rows = []
    for K in K_values:
        mine = [o for o in out if o[0] == K]
        for protocol, col in (("learn2mac", 2), ("aloha", 3)):
            vals = np.array([o[col] for o in mine])
            rows.append({
                "K": K,
                "protocol": protocol,
                "mean": float(vals.mean()),
                "std": float(vals.std(ddof=1)) if len(vals) > 1 else 0.0,
                "values": vals.tolist(),
                "max_system_successes": max(o[4] for o in mine) if protocol == "learn2mac" else None,
            })
    return rows


# ---------------------------------------------------------------- output


def _fmt(x) -> str:
    if isinstance(x, float) and math.isnan(x):
        return ""
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".12g")
    return str(x)


def write_trace_csv(result: RunResult, path) -> None:
    """Long-format trace: one row per (frame, traced device)."""
    cols = []
    for tr in result.traces:
        cols.append((
            tr.device_id,
            tr.chosen_index.tolist(),
            tr.energy.tolist(),
            tr.success.tolist(),
            tr.running_throughput().tolist(),
            tr.expected_utility.tolist(),
            tr.cumulative_regret.tolist(),
        ))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_COLUMNS)
        for t in range(result.config.T):
            for dev_id, ch, en, su, run, eu, cr in cols:
                w.writerow((
                    t + 1,
                    dev_id,
                    "" if ch[t] < 0 else ch[t],
                    en[t],
                    su[t],
                    _fmt(run[t]),
                    _fmt(eu[t]),
                    _fmt(cr[t]),
                ))


def write_probabilities_csv(result: RunResult, path) -> None:
    """Per-frame distribution of every learner: frame, device_id, p_0 .. p_{d-1}."""
    learners = [tr for tr in result.traces if tr.probabilities is not None]
    if not learners:
        raise ValueError("run did not record probabilities; set trace_probabilities")
    d = max(tr.probabilities.shape[1] for tr in learners)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["frame", "device_id", *(f"p_{i}" for i in range(d))])
        for t in range(result.config.T):
            for tr in learners:
                w.writerow([t + 1, tr.device_id, *(_fmt(x) for x in tr.probabilities[t])])


def write_summary_json(summary: dict, path) -> None:
    Path(path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")


def write_sweep_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["K", "protocol", "mean_total_latent_throughput", "std", "n_seeds"])
        for r in rows:
            w.writerow([r["K"], r["protocol"], _fmt(r["mean"]), _fmt(r["std"]), len(r["values"])])
