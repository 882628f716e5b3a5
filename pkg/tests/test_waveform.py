"""Pulse synthesis and spectrum analysis tests."""

import math

import numpy as np
import pytest

from uwbsim.errors import DegenerateInputError, ParameterError
from uwbsim.waveform import (PulseShape, PulseSpec, SampledWaveform,
                             bandwidth_at_level, estimate_spectrum,
                             is_uwb_compliant, signal_energy, synthesize_pulse)


def make_spec(kind="gaussian", amplitude=1.0, duration=1e-9,
              sample_rate=20e9, table=None):
    return PulseSpec(PulseShape(kind, table), amplitude, duration, sample_rate)


class TestSynthesizePulse:
    def test_rectangular_is_constant(self):
        w = synthesize_pulse(make_spec("rectangular", 1.0, 2e-9, 10e9))
        assert len(w) == 20
        assert np.all(w.samples == 1.0)

    def test_monocycle_sums_to_zero(self):
        w = synthesize_pulse(make_spec("gaussian-monocycle"))
        assert abs(w.samples.sum()) < 1e-6 * len(w) * 1.0

    def test_gaussian_peak_normalized_at_center(self):
        w = synthesize_pulse(make_spec("gaussian", amplitude=2.0,
                                       duration=1e-9, sample_rate=20e9))
        assert w.samples.max() == pytest.approx(2.0, abs=2e-6)
        assert w.samples[len(w) // 2] == w.samples.max()

    def test_sample_count(self):
        w = synthesize_pulse(make_spec(duration=1.3e-9, sample_rate=10e9))
        assert len(w) == math.ceil(1.3e-9 * 10e9)

    def test_symmetries(self):
        even = synthesize_pulse(make_spec("gaussian-doublet")).samples
        odd = synthesize_pulse(make_spec("gaussian-monocycle")).samples
        np.testing.assert_allclose(even, even[::-1], atol=1e-12)
        np.testing.assert_allclose(odd, -odd[::-1], atol=1e-12)

    def test_gaussian_tails_small_at_edges(self):
        # duration/7 sigma leaves the outermost samples below 0.5% of peak
        w = synthesize_pulse(make_spec("gaussian"))
        assert abs(w.samples[0]) < 5e-3 * w.samples.max()

    def test_custom_table_resampled(self):
        w = synthesize_pulse(make_spec("custom", amplitude=3.0,
                                       table=(0.0, 1.0, 0.0)))
        assert w.samples.max() == pytest.approx(3.0)
        assert len(w) == 20

    def test_deterministic(self):
        spec = make_spec("gaussian-doublet", 1.5, 0.8e-9, 25e9)
        a = synthesize_pulse(spec).samples
        b = synthesize_pulse(spec).samples
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("kwargs", [
        dict(amplitude=0.0), dict(duration=-1e-9), dict(sample_rate=0.0),
        dict(duration=0.05e-9),  # fewer than 2 samples
    ])
    def test_invalid_specs(self, kwargs):
        with pytest.raises(ParameterError):
            make_spec(**kwargs)

    def test_empty_custom_table(self):
        with pytest.raises(ParameterError):
            PulseShape("custom", ())


class TestEstimateSpectrum:
    def test_impulse_is_flat(self):
        w = SampledWaveform(np.array([1.0]), 10e9)
        s = estimate_spectrum(w, 64)
        assert s.psd == pytest.approx(s.psd[0], rel=1e-9)

    def test_cosine_peaks_at_its_bin(self):
        fs, nfft = 10e9, 256
        k = 32
        t = np.arange(nfft) / fs
        w = SampledWaveform(np.cos(2 * np.pi * k * fs / nfft * t), fs)
        s = estimate_spectrum(w, nfft)
        assert s.psd.argmax() == k

    def test_bin_count(self):
        w = synthesize_pulse(make_spec())
        s = estimate_spectrum(w, 1024)
        assert len(s.freqs) == 1024 // 2 + 1
        assert np.all(s.psd >= 0)
        assert np.all(np.diff(s.freqs) > 0)

    def test_nfft_too_small(self):
        w = synthesize_pulse(make_spec())
        with pytest.raises(ParameterError):
            estimate_spectrum(w, 16)

    def test_nfft_not_power_of_two(self):
        w = synthesize_pulse(make_spec())
        with pytest.raises(ParameterError):
            estimate_spectrum(w, 100)

    def test_rect_follows_sinc_null(self):
        # first spectral null of a 1 ns rectangle sits at 1 GHz
        w = synthesize_pulse(make_spec("rectangular", 1.0, 1e-9, 20e9))
        s = estimate_spectrum(w, 4096)
        bin_width = s.freqs[1] - s.freqs[0]
        lo = int(0.5e9 / bin_width)
        hi = int(1.5e9 / bin_width)
        null_freq = s.freqs[lo + int(s.psd[lo:hi].argmin())]
        assert abs(null_freq - 1e9) <= bin_width


class TestBandwidth:
    def test_single_bin_peak(self):
        freqs = np.linspace(0, 5e9, 65)
        psd = np.zeros(65)
        psd[30] = 1.0
        s = estimate_spectrum(SampledWaveform(np.array([1.0]), 10e9), 128)
        from uwbsim.waveform import SpectrumEstimate
        s = SpectrumEstimate(freqs, psd, 0.0)
        _, _, bw = bandwidth_at_level(s, 10.0)
        assert bw <= 2 * (freqs[1] - freqs[0])

    def test_rect_1ns_10db_bandwidth(self):
        # oracle: first crossing of the rectangle's spectrum one decade of
        # amplitude below peak sits near 0.91/tau
        w = synthesize_pulse(make_spec("rectangular", 1.0, 1e-9, 20e9))
        s = estimate_spectrum(w, 4096)
        _, _, bw = bandwidth_at_level(s, 10.0)
        assert bw == pytest.approx(915e6, rel=0.05)

    def test_doublet_is_uwb(self):
        w = synthesize_pulse(make_spec("gaussian-doublet", 1.0, 0.5e-9, 40e9))
        s = estimate_spectrum(w, 4096)
        _, _, bw = bandwidth_at_level(s, 10.0)
        assert bw > 500e6
        assert is_uwb_compliant(s)

    def test_narrowband_burst_not_uwb(self):
        fs, f0 = 20e9, 4e9
        n = int(100 * fs / f0)
        t = np.arange(n) / fs
        w = SampledWaveform(np.cos(2 * np.pi * f0 * t), fs)
        assert not is_uwb_compliant(estimate_spectrum(w, 1024))

    def test_all_zero_spectrum_degenerate(self):
        w = SampledWaveform(np.zeros(16), 10e9)
        with pytest.raises(DegenerateInputError):
            bandwidth_at_level(estimate_spectrum(w, 16), 10.0)

    def test_level_must_be_positive(self):
        w = synthesize_pulse(make_spec())
        with pytest.raises(ParameterError):
            bandwidth_at_level(estimate_spectrum(w, 1024), -3.0)


class TestSignalEnergy:
    def test_zero(self):
        assert signal_energy(SampledWaveform(np.zeros(10), 1e9)) == 0.0

    def test_rect_value(self):
        w = SampledWaveform(np.ones(20), 10e9)
        assert signal_energy(w) == pytest.approx(2.0e-9)

    def test_quadratic_scaling(self):
        w = synthesize_pulse(make_spec("gaussian", amplitude=2.0))
        half = synthesize_pulse(make_spec("gaussian", amplitude=1.0))
        assert signal_energy(half) == pytest.approx(signal_energy(w) / 4)


class TestInvariants:
    @pytest.mark.parametrize("kind", ["gaussian", "gaussian-monocycle",
                                      "gaussian-doublet", "rectangular"])
    def test_parseval(self, kind):
        w = synthesize_pulse(make_spec(kind))
        n = len(w)
        dft_energy = np.sum(np.abs(np.fft.fft(w.samples)) ** 2)
        expected = (1.0 / w.sample_rate) * dft_energy / n
        assert signal_energy(w) == pytest.approx(expected, rel=1e-9)

    def test_amplitude_scaling(self):
        s1 = estimate_spectrum(synthesize_pulse(make_spec(amplitude=1.0)), 2048)
        s3 = estimate_spectrum(synthesize_pulse(make_spec(amplitude=3.0)), 2048)
        np.testing.assert_allclose(s3.psd, 9.0 * s1.psd, rtol=1e-9)
        bw1 = bandwidth_at_level(s1, 10.0)[2]
        bw3 = bandwidth_at_level(s3, 10.0)[2]
        bin_width = s1.freqs[1] - s1.freqs[0]
        assert abs(bw1 - bw3) <= bin_width

    @pytest.mark.parametrize("kind", ["gaussian", "gaussian-doublet",
                                      "rectangular"])
    def test_duration_halving_doubles_bandwidth(self, kind):
        full = estimate_spectrum(
            synthesize_pulse(make_spec(kind, duration=1e-9, sample_rate=40e9)),
            8192)
        half = estimate_spectrum(
            synthesize_pulse(make_spec(kind, duration=0.5e-9,
                                       sample_rate=40e9)), 8192)
        ratio = bandwidth_at_level(half, 10.0)[2] / \
            bandwidth_at_level(full, 10.0)[2]
        assert ratio == pytest.approx(2.0, rel=0.10)
