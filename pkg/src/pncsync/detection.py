"""Relay-side detectors for the xor of the two source symbols.

Perfect sync and time-offset scenarios use the per-dimension midpoint
threshold rule.  The phase-offset scenario uses ML detection of the xor
class over the 16-point superposed constellation: the four generating
pairs of each class form a Gaussian mixture, and the exact per-class
likelihood (sum over the four points, not max-log) is maximized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .impairments import Observation, superpose_phase_offset
from .mapping import ALL_BIT_PAIRS, BitPair, qpsk_modulate

# class index c = 2*x_i + x_q, lexicographic in (x_i, x_q)
NUM_CLASSES = 4
PAIRS_PER_CLASS = 4


@dataclass(frozen=True, eq=False)
class XorHypothesisSet:
    """Superposed constellation grouped by xor class, for one phase offset.

    points[c] holds the four points s1 + s3*e^{j*theta} whose generating
    pair satisfies (i1^i3, q1^q3) == (c >> 1, c & 1), in s1-major
    enumeration order.
    """

    theta: float
    points: np.ndarray = field(repr=False)  # (4, 4) complex, immutable

    def class_bits(self, c: int) -> BitPair:
        return BitPair(c >> 1, c & 1)


def build_hypotheses(theta: float) -> XorHypothesisSet:
    """Enumerate all 16 (s1, s3) pairs at a folded phase offset.

    theta must already be folded into [-pi/4, pi/4).
    """
    if not -math.pi / 4 <= theta < math.pi / 4:
        raise ValueError(f"theta must be folded into [-pi/4, pi/4), got {theta}")
    pts = np.zeros((NUM_CLASSES, PAIRS_PER_CLASS), dtype=complex)
    count = [0] * NUM_CLASSES
    for b1 in ALL_BIT_PAIRS:
        for b3 in ALL_BIT_PAIRS:
            c = 2 * (b1.i_bit ^ b3.i_bit) + (b1.q_bit ^ b3.q_bit)
            pts[c, count[c]] = superpose_phase_offset(
                qpsk_modulate(b1).as_complex(), qpsk_modulate(b3).as_complex(), theta)
            count[c] += 1
    pts.setflags(write=False)
    return XorHypothesisSet(theta=theta, points=pts)


def min_interclass_distance_sq(hyp: XorHypothesisSet) -> float:
    """Brute-force smallest squared distance between points of different classes."""
    best = math.inf
    for ca in range(NUM_CLASSES):
        for cb in range(ca + 1, NUM_CLASSES):
            d = np.abs(hyp.points[ca][:, None] - hyp.points[cb][None, :]) ** 2
            best = min(best, float(d.min()))
    return best


def threshold_bits(samples, scale: float) -> np.ndarray:
    """Midpoint threshold per dimension: bit 0 if |sample| > scale, else 1.

    scale is half the level spacing: the noiseless levels are 0 and
    +-2*scale (scale = 1 for perfect sync, p(dt/2)/2 for mid-offset
    sampling).
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    return (np.abs(np.asarray(samples, dtype=float)) <= scale).astype(np.int8)


def detect_threshold(obs: Observation, scale: float) -> BitPair:
    """Threshold rule applied independently to the I and Q samples."""
    bits = threshold_bits([obs.i_sample, obs.q_sample], scale)
    return BitPair(int(bits[0]), int(bits[1]))


def ml_class_scores(samples, hyp: XorHypothesisSet, noise_var: float) -> np.ndarray:
    """Per-class log-likelihood (up to a common constant) for complex samples.

    score[n, c] = logsumexp_j( -|r_n - p_cj|^2 / (2 sigma^2) ); equal priors
    over the 16 pairs make the class prior a common constant.
    """
    r = np.atleast_1d(np.asarray(samples, dtype=complex))
    d2 = np.abs(r[:, None, None] - hyp.points[None, :, :]) ** 2
    if noise_var == 0:
        # degenerate: likelihood concentrates on the nearest point
        return -d2.min(axis=2)
    return logsumexp(-d2 / (2.0 * noise_var), axis=2)


def ml_xor_bits(samples, hyp: XorHypothesisSet, noise_var: float) -> np.ndarray:
    """ML xor decision for an array of complex samples; returns (N, 2) bits.

    Ties break toward the smallest class index (lexicographic in
    (x_i, x_q)), which argmax provides by taking the first maximum.
    """
    sc = ml_class_scores(samples, hyp, noise_var)
    c = np.argmax(sc, axis=1)
    return np.stack([c >> 1, c & 1], axis=1).astype(np.int8)


def detect_ml_xor(obs: Observation, hyp: XorHypothesisSet) -> BitPair:
    """ML xor decision for a single observation (noise variance from obs)."""
    bits = ml_xor_bits(obs.as_complex(), hyp, obs.noise_var)[0]
    return BitPair(int(bits[0]), int(bits[1]))
