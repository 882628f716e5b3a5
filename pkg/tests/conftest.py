"""Shared builders for transmit/receive configurations."""

import pytest

from uwbsim.framing import FrameConfig, generate_th_code
from uwbsim.modem import ModScheme, TxConfig
from uwbsim.receiver import AdcModel, RxConfig, pulse_template, signal_band
from uwbsim.waveform import PulseShape, PulseSpec


def make_tx(kind="bpam", pulse_kind="gaussian", amplitude=1.0,
            duration=1e-9, sample_rate=10e9, tc=2e-9, nc=2,
            code_seed=7, code_length=8, ppm_delta=None):
    pulse = PulseSpec(PulseShape(pulse_kind), amplitude, duration, sample_rate)
    frame = FrameConfig(tc, nc)
    code = generate_th_code(code_seed, code_length, nc)
    if kind == "ppm" and ppm_delta is None:
        ppm_delta = duration  # orthogonal PPM default
    scheme = ModScheme(kind, ppm_delta or 0.0)
    return TxConfig(pulse, frame, code, scheme)


def make_rx(tx: TxConfig, adc: AdcModel | None = None, band=None):
    if adc is None:
        adc = AdcModel(sample_rate=tx.pulse.sample_rate, bits=16,
                       full_scale=8.0 * tx.pulse.amplitude, mode="nyquist")
    if band is None:
        band = signal_band(tx)
    template = pulse_template(tx.pulse, adc, band)
    return RxConfig(adc, tx.frame, tx.code, tx.scheme, template)


@pytest.fixture
def bpam_tx():
    return make_tx("bpam")


@pytest.fixture
def ppm_tx():
    return make_tx("ppm")


@pytest.fixture
def ook_tx():
    return make_tx("ook")
