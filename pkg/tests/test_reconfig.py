"""Register-file semantics and dynamic reconfiguration stream tests."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uwbsim.channel import AwgnSpec, add_awgn
from uwbsim.errors import CommitError, ParameterError, RegisterRangeError
from uwbsim.modem import ModScheme, TxConfig, modulate
from uwbsim.receiver import (AdcModel, RxConfig, adc_sample, demodulate,
                             energy_per_bit, pulse_template, signal_band)
from uwbsim.reconfig import (PhyRegisterFile, ReconfigEvent, StreamRun,
                             parse_event_map, run_stream, trace_to_csv)
from uwbsim.waveform import PulseShape, PulseSpec


def make_rf(**overrides):
    kwargs = dict(tick_period=1e-9, nb_tc_par_frame_th=8, tc_ticks=20,
                  code_chips=(3, 1, 5, 0))
    kwargs.update(overrides)
    return PhyRegisterFile(**kwargs)


PULSE = PulseSpec(PulseShape("gaussian-monocycle"), 1.0, 1e-9, 10e9)
ADC = AdcModel(10e9, 16, 8.0, "nyquist")


def make_factories(scheme=ModScheme("bpam")):
    def tx_factory(frame_cfg, code):
        return TxConfig(PULSE, frame_cfg, code, scheme)

    def rx_factory(frame_cfg, code):
        band = signal_band(tx_factory(frame_cfg, code))
        return RxConfig(ADC, frame_cfg, code, scheme,
                        pulse_template(PULSE, ADC, band))

    return tx_factory, rx_factory


class TestRegisterFile:
    def test_write_is_staged_only(self):
        rf = make_rf()
        rf.write_register("tc_ticks", 10)
        assert rf.active("tc_ticks") == 20
        assert rf.staged("tc_ticks") == 10

    def test_write_256_rejected_on_every_port(self):
        rf = make_rf()
        for name in ("nb_tc_par_frame_th", "tc_ticks", "lg_code"):
            with pytest.raises(RegisterRangeError):
                rf.write_register(name, 256)
        with pytest.raises(RegisterRangeError):
            rf.write_register("code_chips", (0, 256))

    def test_staged_round_trip(self):
        rf = make_rf()
        rf.write_register("nb_tc_par_frame_th", 12)
        assert rf.staged("nb_tc_par_frame_th") == 12

    def test_unknown_register(self):
        with pytest.raises(ParameterError):
            make_rf().write_register("bogus", 1)

    def test_commit_requires_strobe(self):
        rf = make_rf()
        rf.write_register("tc_ticks", 10)
        with pytest.raises(CommitError):
            rf.commit()

    def test_commit_noop_when_staged_equals_active(self):
        rf = make_rf()
        rf.raise_reconf()
        rf.commit()
        assert rf.active("tc_ticks") == 20
        assert not rf.sig_reconf

    def test_commit_applies_staged(self):
        rf = make_rf()
        rf.write_register("tc_ticks", 10).raise_reconf().commit()
        assert rf.active("tc_ticks") == 10

    def test_invalid_combination_fail_safe(self):
        # chip 7 with Nc = 4: commit refused, active config untouched
        rf = make_rf(code_chips=(7, 1))
        rf.write_register("nb_tc_par_frame_th", 4).raise_reconf()
        with pytest.raises(CommitError):
            rf.commit()
        assert rf.active("nb_tc_par_frame_th") == 8
        assert rf.frame_config.nc == 8

    def test_commit_atomic(self):
        rf = make_rf()
        rf.write_register("tc_ticks", 5)
        rf.write_register("nb_tc_par_frame_th", 4)
        rf.write_register("lg_code", 2)
        rf.write_register("code_chips", (2, 3))
        rf.raise_reconf().commit()
        assert (rf.active("tc_ticks"), rf.active("nb_tc_par_frame_th"),
                rf.active("code_chips")) == (5, 4, (2, 3))

    def test_load_code_stages_both(self):
        rf = make_rf()
        rf.load_code(3, (7, 2, 4)).raise_reconf().commit()
        assert rf.th_code.chips == (7, 2, 4)

    def test_zero_tc_ticks_rejected_at_commit(self):
        rf = make_rf()
        rf.write_register("tc_ticks", 0).raise_reconf()
        with pytest.raises(CommitError):
            rf.commit()
        assert rf.active("tc_ticks") == 20

    @given(st.lists(st.tuples(
        st.sampled_from(["nb_tc_par_frame_th", "tc_ticks", "lg_code"]),
        st.integers(min_value=-10, max_value=600)), max_size=30),
        st.booleans())
    @settings(max_examples=200, deadline=None)
    def test_register_range_totality(self, writes, strobe):
        # no sequence of API calls can push any register outside [0, 255]
        rf = make_rf()
        for name, value in writes:
            try:
                rf.write_register(name, value)
            except RegisterRangeError:
                pass
        if strobe:
            rf.raise_reconf()
            try:
                rf.commit()
            except CommitError:
                pass
        for name in ("nb_tc_par_frame_th", "tc_ticks", "lg_code"):
            assert 0 <= rf.active(name) <= 255
            assert 0 <= rf.staged(name) <= 255


class TestRunStream:
    def test_quiescent_loopback(self):
        tx_f, rx_f = make_factories()
        bits = np.random.default_rng(2).integers(0, 2, 50)
        run = run_stream(StreamRun(bits, ()), make_rf(), tx_f, rx_f)
        np.testing.assert_array_equal(run.decoded_bits, bits)
        assert len(run.trace) == 50
        assert all(t.tc_ticks == 20 and t.nc == 8 for t in run.trace)

    def test_quiescent_equals_static_pipeline_with_noise(self):
        tx_f, rx_f = make_factories()
        rf = make_rf()
        bits = np.random.default_rng(3).integers(0, 2, 300)
        noise = AwgnSpec(2.0, 4321)
        run = run_stream(StreamRun(bits, ()), rf, tx_f, rx_f, noise)

        tx = tx_f(rf.frame_config, rf.th_code)
        rx = rx_f(rf.frame_config, rf.th_code)
        noisy = add_awgn(modulate(bits, tx), energy_per_bit(tx), noise)
        static = demodulate(adc_sample(noisy, rx.adc, signal_band(tx)), rx)
        np.testing.assert_array_equal(run.decoded_bits, static)

    def test_tc_halving_mid_stream(self):
        tx_f, rx_f = make_factories()
        bits = np.random.default_rng(4).integers(0, 2, 200)
        events = (ReconfigEvent(100, (("tc_ticks", 10),)),)
        run = run_stream(StreamRun(bits, events), make_rf(), tx_f, rx_f)
        assert np.count_nonzero(run.decoded_bits != bits) == 0
        assert all(t.tf == pytest.approx(160e-9) for t in run.trace[:100])
        assert all(t.tf == pytest.approx(80e-9) for t in run.trace[100:])
        # Eq-style bookkeeping: paper rate doubles with the halved slot
        assert float(run.trace[100].paper_rate) == \
            pytest.approx(2 * float(run.trace[99].paper_rate))

    def test_code_swap_mid_stream(self):
        tx_f, rx_f = make_factories()
        bits = np.random.default_rng(6).integers(0, 2, 120)
        events = (ReconfigEvent(
            50, (("lg_code", 3), ("code_chips", (7, 2, 4)))),)
        run = run_stream(StreamRun(bits, events), make_rf(), tx_f, rx_f)
        assert np.count_nonzero(run.decoded_bits != bits) == 0
        assert run.trace[49].code_id == 0
        assert run.trace[50].code_id == 1

    def test_commit_error_aborts_with_frame_index(self):
        tx_f, rx_f = make_factories()
        bits = np.ones(20, dtype=int)
        events = (ReconfigEvent(7, (("nb_tc_par_frame_th", 2),)),)
        with pytest.raises(CommitError, match="frame 7"):
            run_stream(StreamRun(bits, events), make_rf(), tx_f, rx_f)

    def test_trace_csv(self):
        tx_f, rx_f = make_factories()
        bits = np.ones(3, dtype=int)
        run = run_stream(StreamRun(bits, ()), make_rf(), tx_f, rx_f)
        csv = trace_to_csv(run.trace)
        lines = csv.strip().split("\n")
        assert lines[0] == "frame,tc_ticks,nc,code_id,tf_ns,paper_rate_mbps"
        assert lines[1] == "0,20,8,0,160,50"

    def test_parse_event_map(self):
        events = parse_event_map({100: {"tc_ticks": 10},
                                  50: {"lg_code": 1, "code_chips": (0,)}})
        assert [e.at_frame for e in events] == [50, 100]
