"""Receive path: ADC dimensioning, correlation demodulation, BER sweeps.

The ADC model enforces the two sampling regimes (plain Nyquist and bandpass
sub-sampling in an integer Nyquist zone) before any signal touches the
digital back end.  Demodulation is a coherent correlator with perfect frame
synchronization; the Monte Carlo harness measures BER against Eb/N0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import AwgnSpec, add_awgn
from .errors import DimensioningError, ParameterError
from .framing import FrameConfig, ThCode
from .modem import ModScheme, TxConfig, _exact_samples, modulate, quantize_midrise
from .waveform import (SampledWaveform, bandwidth_at_level, estimate_spectrum,
                       signal_energy, synthesize_pulse)

ADC_MODES = ("nyquist", "subsampling")


@dataclass(frozen=True)
class AdcModel:
    """ADC clock rate, resolution, full scale and sampling regime."""

    sample_rate: float
    bits: int
    full_scale: float
    mode: str = "nyquist"

    def __post_init__(self):
        if not 1 <= self.bits <= 16:
            raise ParameterError("bits must be in 1..16")
        if self.sample_rate <= 0 or self.full_scale <= 0:
            raise ParameterError("sample_rate and full_scale must be > 0")
        if self.mode not in ADC_MODES:
            raise ParameterError(f"unknown ADC mode {self.mode!r}")


def validate_adc_band(adc: AdcModel, f_low: float, f_high: float):
    """Check the converter clock against the signal band.

    Nyquist mode needs sample_rate >= 2*f_high.  Sub-sampling needs
    sample_rate >= 2*(f_high - f_low) plus an integer Nyquist zone n >= 1
    with 2*f_high/n <= sample_rate <= 2*f_low/(n-1).  Raises
    DimensioningError naming the violated inequality.
    """
    if f_high <= f_low or f_low < 0:
        raise ParameterError("band must satisfy 0 <= f_low < f_high")
    fs = adc.sample_rate
    if adc.mode == "nyquist":
        if fs < 2.0 * f_high:
            raise DimensioningError(
                f"nyquist mode: sample_rate {fs:g} < 2*f_high = {2*f_high:g}")
        return
    bandwidth = f_high - f_low
    if fs < 2.0 * bandwidth:
        raise DimensioningError(
            f"subsampling: sample_rate {fs:g} < 2*bandwidth = {2*bandwidth:g}")
    n = math.ceil(2.0 * f_high / fs - 1e-12)
    if n > 1 and fs * (n - 1) > 2.0 * f_low * (1 + 1e-12):
        raise DimensioningError(
            f"subsampling: no integer Nyquist zone fits; smallest n with "
            f"2*f_high/n <= {fs:g} is n={n}, but sample_rate > "
            f"2*f_low/(n-1) = {2*f_low/(n-1):g}")


def adc_sample(w: SampledWaveform, adc: AdcModel, band) -> SampledWaveform:
    """Decimate a high-rate waveform to the ADC clock, then quantize.

    The input rate must be an integer multiple of the ADC rate; the band
    (f_low, f_high) is validated against the sampling regime first.
    """
    f_low, f_high = band
    validate_adc_band(adc, f_low, f_high)
    ratio = w.sample_rate / adc.sample_rate
    factor = round(ratio)
    if factor < 1 or abs(ratio - factor) > 1e-9:
        raise ParameterError(
            f"input rate {w.sample_rate:g} is not an integer multiple of the "
            f"ADC rate {adc.sample_rate:g}")
    decimated = w.samples[::factor]
    quantized, _ = quantize_midrise(decimated, adc.bits, adc.full_scale)
    return SampledWaveform(quantized, adc.sample_rate)


@dataclass(frozen=True)
class RxConfig:
    """Receiver parameterization; mirrors the transmitter's (perfect
    parameter knowledge), with the expected pulse template at the ADC rate."""

    adc: AdcModel
    frame: FrameConfig
    code: ThCode
    scheme: ModScheme
    template: SampledWaveform

    def __post_init__(self):
        self.code.validate_against(self.frame)
        if len(self.template) == 0 or not np.any(self.template.samples):
            raise ParameterError("template energy must be > 0")
        if self.template.sample_rate != self.adc.sample_rate:
            raise ParameterError("template must be sampled at the ADC rate")
        _exact_samples(self.frame.tc, self.adc.sample_rate, "tc")


def pulse_template(pulse_spec, adc: AdcModel, band) -> SampledWaveform:
    """Build the receiver template through the same decimation/quantization
    path as the signal, so any sub-sampling distortion matches."""
    return adc_sample(synthesize_pulse(pulse_spec), adc, band)


def demodulate(rx: SampledWaveform, cfg: RxConfig) -> np.ndarray:
    """Correlation-demodulate every complete frame of a received waveform.

    Frame j is correlated against the template in slot c_(j mod L).  BPAM
    decides by sign, OOK against half the template self-energy, PPM by
    comparing the unshifted and shifted positions.  Exact ties decide bit 0.
    """
    fs = cfg.adc.sample_rate
    slot_len = _exact_samples(cfg.frame.tc, fs, "tc")
    frame_len = slot_len * cfg.frame.nc
    nframes = len(rx) // frame_len
    if nframes < 1:
        raise ParameterError("received waveform shorter than one frame")

    template = cfg.template.samples
    chips = np.asarray(cfg.code.chips, dtype=np.int64)
    hops = chips[np.arange(nframes) % len(chips)]
    starts = np.arange(nframes) * frame_len + hops * slot_len
    idx = starts[:, None] + np.arange(template.size)[None, :]
    corr0 = rx.samples[idx] @ template

    kind = cfg.scheme.kind
    if kind == "bpam":
        return (corr0 > 0).astype(np.int64)
    if kind == "ook":
        threshold = 0.5 * float(template @ template)
        return (corr0 > threshold).astype(np.int64)
    delta = _exact_samples(cfg.scheme.ppm_delta, fs, "ppm_delta")
    corr1 = rx.samples[idx + delta] @ template
    return (corr1 > corr0).astype(np.int64)


@dataclass(frozen=True)
class BerPoint:
    """One Monte Carlo measurement row."""

    ebn0_db: float
    errors: int
    bits: int

    @property
    def ber(self) -> float:
        return self.errors / self.bits

    @property
    def ci95_halfwidth(self) -> float:
        p = self.ber
        return 1.96 * math.sqrt(p * (1.0 - p) / self.bits)


@dataclass(frozen=True)
class BerCurve:
    """Measured BER rows, one per Eb/N0 point, plus the Eb convention used."""

    points: tuple[BerPoint, ...]
    eb_convention: str

    def to_csv(self) -> str:
        lines = [f"# eb_convention = {self.eb_convention}",
                 "ebn0_db,bits,errors,ber,ci95"]
        for p in self.points:
            lines.append(f"{p.ebn0_db:g},{p.bits},{p.errors},"
                         f"{p.ber:.6e},{p.ci95_halfwidth:.6e}")
        return "\n".join(lines) + "\n"


def energy_per_bit(tx: TxConfig) -> float:
    """Per-bit transmitted energy under the scheme's Eb convention.

    BPAM and PPM send one pulse per bit, so Eb is the pulse energy; OOK
    sends a pulse only for ones, so Eb is the average, half the pulse energy.
    """
    pulse_energy = signal_energy(synthesize_pulse(tx.pulse))
    if tx.scheme.kind == "ook":
        return pulse_energy / 2.0
    return pulse_energy


def signal_band(tx: TxConfig, nfft: int = 4096) -> tuple[float, float]:
    """10 dB band of the transmit pulse, used to validate the ADC clock."""
    pulse = synthesize_pulse(tx.pulse)
    while nfft < len(pulse):
        nfft *= 2
    f_low, f_high, _ = bandwidth_at_level(estimate_spectrum(pulse, nfft), 10.0)
    return f_low, f_high


def _check_consistent(tx: TxConfig, rx: RxConfig):
    if tx.frame != rx.frame or tx.code != rx.code or tx.scheme != rx.scheme:
        raise ParameterError("tx and rx configs disagree on frame/code/scheme")


def ber_sweep(tx: TxConfig, rx: RxConfig, ebn0_list, nbits: int,
              seed: int) -> BerCurve:
    """Monte Carlo BER versus Eb/N0.

    Each point derives its own bit and noise streams from (seed, index), so
    points may be evaluated in any order with identical results.
    """
    if nbits < 1000:
        raise ParameterError("nbits must be >= 1000 for a meaningful estimate")
    _check_consistent(tx, rx)
    eb = energy_per_bit(tx)
    band = signal_band(tx)
    validate_adc_band(rx.adc, *band)

    points = []
    for i, ebn0_db in enumerate(ebn0_list):
        bit_seed, noise_seed = np.random.SeedSequence(
            [int(seed), i]).generate_state(2)
        bits = np.random.default_rng(int(bit_seed)).integers(0, 2, size=nbits)
        clean = modulate(bits, tx)
        noisy = add_awgn(clean, eb, AwgnSpec(float(ebn0_db), int(noise_seed)))
        sampled = adc_sample(noisy, rx.adc, band)
        decided = demodulate(sampled, rx)
        errors = int(np.count_nonzero(decided != bits))
        points.append(BerPoint(float(ebn0_db), errors, nbits))

    convention = ("average energy per bit (half the pulse energy)"
                  if tx.scheme.kind == "ook" else "energy per pulse")
    return BerCurve(tuple(points), convention)


def qfunc(x: float) -> float:
    """Gaussian tail probability Q(x) = erfc(x / sqrt(2)) / 2."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def theoretical_ber(kind: str, ebn0_db: float) -> float:
    """Matched-filter BER for each scheme at a given Eb/N0."""
    gamma = 10.0 ** (ebn0_db / 10.0)
    if kind == "bpam":
        return qfunc(math.sqrt(2.0 * gamma))
    if kind in ("ppm", "ook"):
        return qfunc(math.sqrt(gamma))
    raise ParameterError(f"unknown modulation kind {kind!r}")
