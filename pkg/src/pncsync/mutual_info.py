"""Monte-Carlo mutual information of the xor symbol at the relay.

All estimates are I(X; r)/2 in bits per real dimension, where X is the
4-ary xor class.  With a phase offset the I and Q dimensions couple, so
the information is computed jointly in 2-D and halved.  With a time
offset (phase perfect) the dimensions decouple and the per-dimension
binary xor information is computed directly from the scalar mid-offset
sample, with neighbor-symbol interference marginalized as part of the
channel.  Gaussian mixtures are evaluated in the log domain with
max-subtraction so high-SNR runs do not underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .detection import build_hypotheses
from .impairments import PulseShape, isi_taps, mid_offset_frame

_LOG2 = math.log(2.0)
_CHUNK = 1 << 16


@dataclass(frozen=True)
class MiEstimate:
    """One mutual-information point."""

    snr_db: float
    scenario: str
    mi_bits_per_dim: float
    num_samples: int
    seed: int

    def __post_init__(self):
        if not -1e-9 <= self.mi_bits_per_dim <= 1.0 + 1e-9:
            raise ValueError(f"mi_bits_per_dim out of [0, 1]: {self.mi_bits_per_dim}")


def mi_given_theta(snr_db: float, theta: float, num_samples: int,
                   rng: np.random.Generator) -> float:
    """Estimate I(X; r)/2 at one folded phase offset, bits per dimension.

    Draws (s1, s3) uniformly, forms r = s1 + s3 e^{j theta} + noise and
    averages log2 p(r|X) / p(r) over num_samples draws; p(r|x) is the
    equal-weight mixture over the four points of class x.
    """
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    hyp = build_hypotheses(theta)
    flat = hyp.points.reshape(-1)
    s2 = 10.0 ** (-snr_db / 10.0)
    sd = math.sqrt(s2)
    total = 0.0
    left = num_samples
    while left > 0:
        n = min(left, _CHUNK)
        idx = rng.integers(0, 16, n)
        cls = idx >> 2  # row-major: point j of class c sits at 4c + j
        r = flat[idx] + sd * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        e = -np.abs(r[:, None, None] - hyp.points[None, :, :]) ** 2 / (2.0 * s2)
        num = logsumexp(e, axis=2)[np.arange(n), cls]
        den = logsumexp(e.reshape(n, 16), axis=1)
        total += float(np.sum(num - den)) / _LOG2 + n * 2.0
        left -= n
    return 0.5 * total / num_samples


def phase_offset_grid(num_grid: int) -> np.ndarray:
    """Midpoint grid over the positive half-range: (k+1/2)/n * pi/4.

    The constellation ensemble is symmetric in the sign of the offset, so
    averaging over the positive half represents the full [-pi/4, pi/4]
    uniform distribution.
    """
    if num_grid < 2:
        raise ValueError("num_grid must be >= 2")
    return (np.arange(num_grid) + 0.5) / num_grid * (math.pi / 4)


def mi_phase_unsync(snr_db: float, num_samples: int, rng: np.random.Generator,
                    num_grid: int = 20) -> float:
    """Average of mi_given_theta over the midpoint offset grid.

    num_samples is the total budget, split evenly across the grid.
    """
    per = max(1, num_samples // num_grid)
    vals = [mi_given_theta(snr_db, t, per, rng) for t in phase_offset_grid(num_grid)]
    return float(np.mean(vals))


def _window_isi_atoms(taps_early, taps_late, lags, window: int):
    """Enumerate the mid-offset ISI of the |lag| <= window neighbors exactly.

    Returns (atoms, tail_var): equally likely ISI values of the enumerated
    neighbor bits of both trains (with the 1/2 amplitude convention), and
    the variance of the truncated remainder to fold into the noise.
    """
    wsel = (np.abs(lags) <= window) & (lags != 0)
    tsel = np.abs(lags) > window
    wtaps = np.concatenate([taps_early[wsel], taps_late[wsel]])
    k = wtaps.size
    signs = np.array(np.meshgrid(*[[-1.0, 1.0]] * k)).T.reshape(-1, k)
    atoms = 0.5 * (signs @ wtaps)
    tail_var = 0.25 * float(np.sum(taps_early[tsel] ** 2) + np.sum(taps_late[tsel] ** 2))
    return atoms, tail_var


def mi_time_unsync(snr_db: float, dt_half_range: float, num_samples: int,
                   rng: np.random.Generator, pulse: PulseShape | None = None,
                   frame_len: int = 1000, enum_window: int = 2) -> float:
    """Per-dimension xor information with a random symbol-time offset.

    Per frame the offset is drawn uniform over [-x, x]*T, a +-1 frame is
    synthesized through the mid-offset sampler for each train, and the
    information of the current xor bit given the scalar sample is
    accumulated.  Neighbor bits are channel randomness, not known: the
    conditional densities mix the exactly enumerated ISI of the
    |lag| <= enum_window neighbors, with the truncated tail folded into
    the noise variance.  num_samples rounds up to whole frames.
    """
    if not 0.0 <= dt_half_range <= 0.5:
        raise ValueError(f"dt_half_range must be in [0, 0.5], got {dt_half_range}")
    if pulse is None:
        pulse = PulseShape()
    sd_half = 0.5 * 10.0 ** (-snr_db / 20.0)  # half-amplitude convention
    L = pulse.truncation_symbols
    nframes = max(1, math.ceil(num_samples / frame_len))
    total = 0.0
    for _ in range(nframes):
        dt = float(rng.uniform(-dt_half_range, dt_half_range)) if dt_half_range > 0 else 0.0
        lags, te, tl = isi_taps(dt, pulse)
        a1 = rng.integers(0, 2, frame_len + 2 * L) * 2 - 1
        a3 = rng.integers(0, 2, frame_len + 2 * L) * 2 - 1
        r_all = mid_offset_frame(a1, a3, dt, pulse)
        r = r_all[L:L + frame_len] + sd_half * rng.standard_normal(frame_len)
        xbit = (a1[L:L + frame_len] != a3[L:L + frame_len]).astype(np.int8)

        level = te[L]  # p(dt/2); per-dim levels are 0 and +-2*(level/2)
        atoms, tail_var = _window_isi_atoms(te, tl, lags, enum_window)
        veff = sd_half * sd_half + tail_var
        d = r[:, None] - atoms[None, :]
        k = atoms.size
        log_b0 = logsumexp(np.concatenate([-(d - level) ** 2, -(d + level) ** 2],
                                          axis=1) / (2.0 * veff), axis=1) - math.log(2 * k)
        log_b1 = logsumexp(-d ** 2 / (2.0 * veff), axis=1) - math.log(k)
        log_x = np.where(xbit == 0, log_b0, log_b1)
        log_mix = logsumexp(np.stack([log_b0, log_b1], axis=1), axis=1) - _LOG2
        total += float(np.sum(log_x - log_mix)) / _LOG2
    return total / (nframes * frame_len)


_SCENARIO_IDS = {"perfect": 0, "phase_unsync": 1, "time_unsync": 2}


def scenario_label(scenario: str, offset_range: float | None) -> str:
    if scenario == "time_unsync":
        return f"time_unsync_x{offset_range:g}"
    return scenario


def mi_curve(scenario: str, snr_grid_db, samples_per_point: int, seed: int,
             offset_range: float | None = None, num_grid: int = 20,
             pulse: PulseShape | None = None, frame_len: int = 1000,
             num_batches: int = 1) -> list[MiEstimate]:
    """One MiEstimate per SNR point; deterministic for a given seed.

    scenario: 'perfect' (theta = 0), 'phase_unsync' (offset grid average)
    or 'time_unsync' (offset_range = half-range x of dt/T).  The sample
    budget of each point splits across num_batches work units, each owning
    an RNG stream derived from (seed, scenario, point, batch); batch means
    reduce in fixed order, so a result is reproducible for a given seed
    and batch count.
    """
    if scenario not in _SCENARIO_IDS:
        raise ValueError(f"unknown scenario {scenario!r}")
    if scenario == "time_unsync" and offset_range is None:
        raise ValueError("time_unsync needs offset_range")
    if num_batches < 1:
        raise ValueError("num_batches must be >= 1")
    out = []
    label = scenario_label(scenario, offset_range)
    share = max(1, samples_per_point // num_batches)
    for i, snr in enumerate(snr_grid_db):
        acc = 0.0
        used = 0
        for b in range(num_batches):
            rng = np.random.default_rng(
                np.random.SeedSequence(seed, spawn_key=(_SCENARIO_IDS[scenario], i, b)))
            if scenario == "perfect":
                mi, n = mi_given_theta(snr, 0.0, share, rng), share
            elif scenario == "phase_unsync":
                mi = mi_phase_unsync(snr, share, rng, num_grid=num_grid)
                n = max(1, share // num_grid) * num_grid
            else:
                mi = mi_time_unsync(snr, offset_range, share, rng,
                                    pulse=pulse, frame_len=frame_len)
                n = max(1, math.ceil(share / frame_len)) * frame_len
            acc += mi * n
            used += n
        out.append(MiEstimate(snr_db=float(snr), scenario=label,
                              mi_bits_per_dim=float(np.clip(acc / used, 0.0, 1.0)),
                              num_samples=used, seed=seed))
    return out
