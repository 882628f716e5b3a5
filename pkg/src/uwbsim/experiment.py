"""Experiment runner: config files in, CSV artifacts out.

Config files are INI-style text with one section per subsystem (pulse,
frame, code, scheme, adc, sweep, link, reconfig, reference) plus optional
``[event.N]`` sections holding register writes for frame boundary N.  Every
emitted CSV starts with ``#`` comment lines echoing the fully resolved
configuration and seed, so a run can be reproduced from its own output.
"""

from __future__ import annotations

import configparser
import datetime
import math
import os

import numpy as np

from . import channel, framing, receiver, reconfig, reference, waveform
from .errors import ConfigError, UwbSimError
from .framing import FrameConfig, ThCode
from .modem import ModScheme, TxConfig
from .receiver import AdcModel, RxConfig, pulse_template
from .waveform import PulseShape, PulseSpec

SUBCOMMANDS = ("pulse-spectrum", "ber-sweep", "range-table",
               "reconfig-demo", "compare-ref")


class OracleCheckError(UwbSimError):
    """A measured result fell outside its analytic oracle's tolerance."""


def load_config(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(inline_comment_prefixes=None)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError:
        raise
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    return parser


def _section(cfg, name: str):
    if not cfg.has_section(name):
        raise ConfigError(f"config is missing the [{name}] section")
    return cfg[name]


def _floats(text: str):
    return [float(p) for p in text.split(",") if p.strip()]


def build_pulse(cfg) -> PulseSpec:
    sec = _section(cfg, "pulse")
    kind = sec.get("kind", "gaussian")
    table = None
    if kind == "custom":
        table = tuple(_floats(sec.get("table", "")))
    try:
        return PulseSpec(shape=PulseShape(kind, table),
                         amplitude=sec.getfloat("amplitude", 1.0),
                         duration=sec.getfloat("duration"),
                         sample_rate=sec.getfloat("sample_rate"))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[pulse]: {exc}") from exc


def build_frame(cfg) -> FrameConfig:
    sec = _section(cfg, "frame")
    return FrameConfig(tc=sec.getfloat("tc"), nc=sec.getint("nc"))


def build_code(cfg, frame: FrameConfig) -> ThCode:
    sec = _section(cfg, "code")
    if "chips" in sec:
        code = framing.code_from_csv(sec["chips"])
    else:
        code = framing.generate_th_code(seed=sec.getint("seed", 0),
                                        length=sec.getint("length"),
                                        nc=frame.nc)
    code.validate_against(frame)
    return code


def build_scheme(cfg) -> ModScheme:
    sec = _section(cfg, "scheme")
    return ModScheme(kind=sec.get("kind", "bpam"),
                     ppm_delta=sec.getfloat("ppm_delta", 0.0))


def build_adc(cfg) -> AdcModel:
    sec = _section(cfg, "adc")
    return AdcModel(sample_rate=sec.getfloat("sample_rate"),
                    bits=sec.getint("bits", 16),
                    full_scale=sec.getfloat("full_scale"),
                    mode=sec.get("mode", "nyquist"))


def _resolved_items(cfg):
    for section in cfg.sections():
        for key, value in cfg[section].items():
            yield f"{section}.{key}", value


def make_header(cfg, subcommand: str, timestamp: bool) -> str:
    lines = [f"# uwbsim {subcommand}"]
    if timestamp:
        now = datetime.datetime.now(datetime.timezone.utc)
        lines.append(f"# generated = {now.isoformat()}")
    lines += [f"# {key} = {value}" for key, value in _resolved_items(cfg)]
    return "\n".join(lines) + "\n"


def _write(out_dir: str, name: str, header: str, body: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(header)
        handle.write(body)
    return path


def run_pulse_spectrum(cfg, out_dir: str, header: str):
    pulse = build_pulse(cfg)
    nfft = cfg.getint("spectrum", "nfft", fallback=4096)
    wave = waveform.synthesize_pulse(pulse)
    spectrum = waveform.estimate_spectrum(wave, nfft)
    f_low, f_high, bw = waveform.bandwidth_at_level(spectrum,
                                                    waveform.UWB_LEVEL_DB)
    verdict = waveform.is_uwb_compliant(spectrum)
    extra = (f"# f_low_hz = {f_low:.6g}\n# f_high_hz = {f_high:.6g}\n"
             f"# bandwidth_10db_hz = {bw:.6g}\n"
             f"# uwb_compliant = {str(verdict).lower()}\n")
    paths = [
        _write(out_dir, "waveform.csv", header, waveform.waveform_to_csv(wave)),
        _write(out_dir, "spectrum.csv", header + extra,
               waveform.spectrum_to_csv(spectrum)),
    ]
    summary = (f"10 dB bandwidth: {bw / 1e6:.1f} MHz "
               f"({f_low / 1e6:.1f} – {f_high / 1e6:.1f} MHz); "
               f"UWB compliant: {verdict}")
    return paths, summary


def run_ber_sweep(cfg, out_dir: str, header: str, check_oracles: bool):
    pulse = build_pulse(cfg)
    frame = build_frame(cfg)
    code = build_code(cfg, frame)
    scheme = build_scheme(cfg)
    adc = build_adc(cfg)
    sweep = _section(cfg, "sweep")
    ebn0_list = _floats(sweep.get("ebn0_db"))
    nbits = sweep.getint("nbits")
    seed = sweep.getint("seed", 0)

    tx = TxConfig(pulse=pulse, frame=frame, code=code, scheme=scheme)
    band = receiver.signal_band(tx)
    template = pulse_template(pulse, adc, band)
    rx = RxConfig(adc=adc, frame=frame, code=code, scheme=scheme,
                  template=template)
    curve = receiver.ber_sweep(tx, rx, ebn0_list, nbits, seed)
    paths = [_write(out_dir, "ber.csv", header, curve.to_csv())]

    summary_lines = []
    failures = []
    for point in curve.points:
        theory = receiver.theoretical_ber(scheme.kind, point.ebn0_db)
        ci = 1.96 * math.sqrt(theory * (1 - theory) / point.bits)
        ok = abs(point.ber - theory) <= ci
        summary_lines.append(
            f"Eb/N0 {point.ebn0_db:g} dB: ber={point.ber:.4e} "
            f"theory={theory:.4e} {'ok' if ok else 'OUTSIDE 95% CI'}")
        if not ok:
            failures.append(point.ebn0_db)
    summary = "\n".join(summary_lines)
    if check_oracles and failures:
        raise OracleCheckError(
            f"measured BER outside the 95% CI of the analytic oracle at "
            f"Eb/N0 = {failures} dB")
    return paths, summary


def run_range_table(cfg, out_dir: str, header: str):
    sec = _section(cfg, "link")
    freqs = _floats(sec.get("freqs_hz"))
    powers = _floats(sec.get("tx_power_dbm"))
    budgets = [channel.LinkBudget(
        tx_power_dbm=p, center_freq_hz=f,
        tx_gain_dbi=sec.getfloat("tx_gain_dbi", 0.0),
        rx_gain_dbi=sec.getfloat("rx_gain_dbi", 0.0),
        rx_sensitivity_dbm=sec.getfloat("rx_sensitivity_dbm", -80.0))
        for f in freqs for p in powers]
    paths = [_write(out_dir, "range.csv", header,
                    channel.range_table_csv(budgets))]
    return paths, f"{len(budgets)} link-budget rows"


def run_reconfig_demo(cfg, out_dir: str, header: str):
    pulse = build_pulse(cfg)
    scheme = build_scheme(cfg)
    adc = build_adc(cfg)
    sec = _section(cfg, "reconfig")
    rf = reconfig.PhyRegisterFile(
        tick_period=sec.getfloat("tick_period"),
        nb_tc_par_frame_th=sec.getint("nc"),
        tc_ticks=sec.getint("tc_ticks"),
        code_chips=framing.code_from_csv(sec.get("code_chips")).chips)
    nbits = sec.getint("nbits", 200)
    seed = sec.getint("seed", 0)
    ebn0 = sec.getfloat("ebn0_db", math.inf) \
        if sec.get("ebn0_db", "inf") != "inf" else math.inf
    noise = None if math.isinf(ebn0) \
        else channel.AwgnSpec(ebn0, sec.getint("noise_seed", seed + 1))

    events = {}
    for section in cfg.sections():
        if section.startswith("event."):
            frame_index = int(section.split(".", 1)[1])
            writes = {}
            for key, value in cfg[section].items():
                if key == "code_chips":
                    writes[key] = framing.code_from_csv(value).chips
                else:
                    writes[key] = int(value)
            events[frame_index] = writes

    def tx_factory(frame_cfg, frame_code):
        return TxConfig(pulse=pulse, frame=frame_cfg, code=frame_code,
                        scheme=scheme)

    def rx_factory(frame_cfg, frame_code):
        band = receiver.signal_band(tx_factory(frame_cfg, frame_code))
        return RxConfig(adc=adc, frame=frame_cfg, code=frame_code,
                        scheme=scheme,
                        template=pulse_template(pulse, adc, band))

    bits = np.random.default_rng(seed).integers(0, 2, size=nbits)
    run = reconfig.StreamRun(tx_bits=bits,
                             events=reconfig.parse_event_map(events))
    reconfig.run_stream(run, rf, tx_factory, rx_factory, noise)
    errors = int(np.count_nonzero(run.decoded_bits != bits))
    paths = [_write(out_dir, "trace.csv", header,
                    reconfig.trace_to_csv(run.trace))]
    return paths, f"{nbits} bits, {errors} bit errors, " \
                  f"{len(run.events)} reconfiguration events"


def run_compare_ref(cfg, out_dir: str, header: str):
    sec = _section(cfg, "reference")
    targets = [t.strip() for t in
               sec.get("target", ",".join(reference.TARGETS)).split(",")
               if t.strip()]
    body = "".join(reference.comparison_report(t) + "\n" for t in targets)
    paths = [_write(out_dir, "reference_report.txt", header, body)]
    return paths, body.strip()


def run_experiment(cfg, subcommand: str, out_dir: str = ".",
                   timestamp: bool = True, check_oracles: bool = False):
    """Dispatch one subcommand; returns (artifact paths, summary text)."""
    if subcommand not in SUBCOMMANDS:
        raise ConfigError(f"unknown subcommand {subcommand!r}")
    header = make_header(cfg, subcommand, timestamp)
    if subcommand == "pulse-spectrum":
        return run_pulse_spectrum(cfg, out_dir, header)
    if subcommand == "ber-sweep":
        return run_ber_sweep(cfg, out_dir, header, check_oracles)
    if subcommand == "range-table":
        return run_range_table(cfg, out_dir, header)
    if subcommand == "reconfig-demo":
        return run_reconfig_demo(cfg, out_dir, header)
    return run_compare_ref(cfg, out_dir, header)
