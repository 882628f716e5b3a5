"""Transmit path: bit-to-pulse-train mapping and the DAC model.

One bit is sent per frame; the time-hopping code selects the slot and the
modulation scheme decides how the pulse encodes the bit (position for PPM,
presence for OOK, polarity for BPAM).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .framing import FrameConfig, ThCode
from .waveform import PulseSpec, SampledWaveform, synthesize_pulse

SCHEME_KINDS = ("ppm", "ook", "bpam")


def _exact_samples(seconds: float, rate: float, what: str) -> int:
    """Seconds -> sample count, requiring the boundary to land on a sample."""
    n = seconds * rate
    r = round(n)
    if abs(n - r) > 1e-6:
        raise ParameterError(f"{what} ({seconds} s) is not an integer number "
                             f"of samples at {rate} Hz")
    return int(r)


@dataclass(frozen=True)
class ModScheme:
    """Modulation scheme: PPM (with its bit-1 shift), OOK or BPAM."""

    kind: str
    ppm_delta: float = 0.0  # seconds, PPM only

    def __post_init__(self):
        if self.kind not in SCHEME_KINDS:
            raise ParameterError(f"unknown modulation kind {self.kind!r}")
        if self.kind == "ppm" and self.ppm_delta <= 0:
            raise ParameterError("PPM requires ppm_delta > 0")
        if self.kind != "ppm" and self.ppm_delta:
            raise ParameterError("ppm_delta is only valid for PPM")


@dataclass(frozen=True)
class TxConfig:
    """Complete transmitter parameterization for one stream."""

    pulse: PulseSpec
    frame: FrameConfig
    code: ThCode
    scheme: ModScheme

    def __post_init__(self):
        self.code.validate_against(self.frame)
        if self.pulse.duration > self.frame.tc + 1e-15:
            raise ParameterError("pulse does not fit inside one time slot")
        _exact_samples(self.frame.tc, self.pulse.sample_rate, "tc")
        if self.scheme.kind == "ppm":
            if self.scheme.ppm_delta > self.frame.tc - self.pulse.duration + 1e-15:
                raise ParameterError("ppm_delta pushes the pulse out of its slot")
            _exact_samples(self.scheme.ppm_delta, self.pulse.sample_rate,
                           "ppm_delta")


@dataclass(frozen=True)
class DacModel:
    """DAC clock rate, bit resolution and full-scale range."""

    sample_rate: float
    bits: int
    full_scale: float

    def __post_init__(self):
        if not 1 <= self.bits <= 16:
            raise ParameterError("bits must be in 1..16")
        if self.sample_rate <= 0 or self.full_scale <= 0:
            raise ParameterError("sample_rate and full_scale must be > 0")


@dataclass(frozen=True)
class QuantizationResult:
    """Quantized waveform plus the number of samples that hit the rails."""

    waveform: SampledWaveform
    clipped: int


def modulate(bits, cfg: TxConfig) -> SampledWaveform:
    """Map a bit sequence onto a time-hopped pulse train.

    Bit j occupies frame j; its pulse starts at sample
    (j*Tf + c_(j mod L)*Tc + delta_j) * fs with delta_j = ppm_delta for a
    PPM one-bit and 0 otherwise.  The hop code repeats cyclically.
    """
    bits = np.asarray(bits, dtype=np.int64)
    if bits.size == 0:
        raise ParameterError("bits must be non-empty")
    if np.any((bits != 0) & (bits != 1)):
        raise ParameterError("bits must be 0 or 1")

    fs = cfg.pulse.sample_rate
    slot_len = _exact_samples(cfg.frame.tc, fs, "tc")
    frame_len = slot_len * cfg.frame.nc
    pulse = synthesize_pulse(cfg.pulse).samples
    nbits = bits.size

    chips = np.asarray(cfg.code.chips, dtype=np.int64)
    hops = chips[np.arange(nbits) % len(chips)]
    offsets = hops * slot_len
    if cfg.scheme.kind == "ppm":
        delta = _exact_samples(cfg.scheme.ppm_delta, fs, "ppm_delta")
        offsets = offsets + delta * bits
        coeff = np.ones(nbits)
    elif cfg.scheme.kind == "ook":
        coeff = bits.astype(np.float64)
    else:  # bpam
        coeff = 2.0 * bits - 1.0

    out = np.zeros(nbits * frame_len)
    rows = out.reshape(nbits, frame_len)
    cols = offsets[:, None] + np.arange(pulse.size)[None, :]
    np.put_along_axis(rows, cols, coeff[:, None] * pulse[None, :], axis=1)
    return SampledWaveform(out, fs)


def quantize_midrise(samples: np.ndarray, bits: int, full_scale: float):
    """Mid-rise uniform quantization over [-full_scale, +full_scale].

    Returns (quantized samples, clip count); out-of-range samples stick to
    the extreme levels.
    """
    step = 2.0 * full_scale / (1 << bits)
    half_levels = 1 << (bits - 1)
    q = np.floor(samples / step)
    clipped = int(np.count_nonzero((q < -half_levels) | (q > half_levels - 1)))
    q = np.clip(q, -half_levels, half_levels - 1)
    return (q + 0.5) * step, clipped


def dac_quantize(w: SampledWaveform, dac: DacModel) -> QuantizationResult:
    """Pass a waveform through the DAC amplitude model."""
    quantized, clipped = quantize_midrise(w.samples, dac.bits, dac.full_scale)
    return QuantizationResult(SampledWaveform(quantized, w.sample_rate), clipped)
