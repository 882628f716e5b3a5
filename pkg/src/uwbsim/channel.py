"""Channel impairments: AWGN, multi-user superposition, Friis link budget."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError
from .waveform import SampledWaveform

SPEED_OF_LIGHT = 299_792_458.0  # m/s

#: ebn0_db value meaning "noise disabled"
NOISELESS = math.inf


@dataclass(frozen=True)
class AwgnSpec:
    """Target Eb/N0 plus the seed that fully determines the noise stream."""

    ebn0_db: float
    seed: int


@dataclass(frozen=True)
class LinkBudget:
    """Free-space link parameters for the range calculation."""

    tx_power_dbm: float
    center_freq_hz: float
    tx_gain_dbi: float = 0.0
    rx_gain_dbi: float = 0.0
    rx_sensitivity_dbm: float = -80.0

    def __post_init__(self):
        if self.center_freq_hz <= 0:
            raise ParameterError("center_freq_hz must be > 0")


def add_awgn(w: SampledWaveform, energy_per_bit: float,
             spec: AwgnSpec) -> SampledWaveform:
    """Add white Gaussian noise calibrated to the given per-bit energy.

    Noise variance is (N0/2) * sample_rate with N0 = Eb / 10^(ebn0_db/10),
    so a matched correlator sees exactly the requested Eb/N0.  The input is
    never mutated; the same seed always yields the same noise.
    """
    if energy_per_bit <= 0:
        raise ParameterError("energy_per_bit must be > 0")
    if spec.ebn0_db == NOISELESS:
        return SampledWaveform(w.samples.copy(), w.sample_rate)
    n0 = energy_per_bit / 10.0 ** (spec.ebn0_db / 10.0)
    sigma = math.sqrt(n0 / 2.0 * w.sample_rate)
    rng = np.random.default_rng(spec.seed)
    noise = rng.normal(0.0, sigma, len(w))
    return SampledWaveform(w.samples + noise, w.sample_rate)


def superpose(waveforms, offsets) -> SampledWaveform:
    """Sample-wise sum of shifted waveforms (multi-user scenario).

    Inputs are accumulated in a canonical internal order so the result is
    bit-identical under any reordering of the argument lists.
    """
    if len(waveforms) != len(offsets):
        raise ParameterError("waveforms and offsets differ in length")
    if not waveforms:
        raise ParameterError("need at least one waveform")
    rate = waveforms[0].sample_rate
    for w in waveforms:
        if w.sample_rate != rate:
            raise ParameterError("sample rates differ")
    for off in offsets:
        if off < 0 or int(off) != off:
            raise ParameterError("offsets must be non-negative integers")

    items = sorted(zip(waveforms, offsets),
                   key=lambda it: (it[1], len(it[0]), it[0].samples.tobytes()))
    total = max(int(off) + len(w) for w, off in items)
    out = np.zeros(total)
    for w, off in items:
        out[int(off):int(off) + len(w)] += w.samples
    return SampledWaveform(out, rate)


def friis_range(budget: LinkBudget, path_loss_exponent: float = 2.0) -> float:
    """Maximum distance at which the received power meets the sensitivity.

    Inverts the free-space Friis equation:
    d = (lambda / 4 pi) * 10^(margin_db / (10 * n)) with margin_db the sum of
    TX power and antenna gains minus the RX sensitivity.
    """
    margin_db = (budget.tx_power_dbm + budget.tx_gain_dbi +
                 budget.rx_gain_dbi - budget.rx_sensitivity_dbm)
    if budget.tx_power_dbm + budget.tx_gain_dbi + budget.rx_gain_dbi \
            < budget.rx_sensitivity_dbm:
        raise DomainError("link margin is negative: no positive range")
    wavelength = SPEED_OF_LIGHT / budget.center_freq_hz
    return (wavelength / (4.0 * math.pi)) * \
        10.0 ** (margin_db / (10.0 * path_loss_exponent))


def range_table_csv(budgets) -> str:
    """CSV body `freq_hz,tx_dbm,range_m` for a list of link budgets."""
    lines = ["freq_hz,tx_dbm,range_m"]
    for b in budgets:
        lines.append(f"{b.center_freq_hz:.9g},{b.tx_power_dbm:.9g},"
                     f"{friis_range(b):.6f}")
    return "\n".join(lines) + "\n"
