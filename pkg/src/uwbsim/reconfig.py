"""Register-level dynamic reconfiguration engine.

Mirrors the MAC-to-PHY interface of the hardware receiver: 8-bit parameter
registers are written into a staged shadow copy, and a reconfiguration
strobe latches the whole staged set into the active configuration at the
next frame boundary.  A failed validation leaves the active configuration
untouched so a running link never dies from a bad write.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .channel import AwgnSpec, add_awgn
from .errors import CommitError, ParameterError, RegisterRangeError
from .framing import REGISTER_MAX, FrameConfig, ThCode, data_rate
from .modem import TxConfig, _exact_samples, modulate
from .receiver import RxConfig, adc_sample, demodulate, energy_per_bit
from .waveform import SampledWaveform

SCALAR_REGISTERS = ("nb_tc_par_frame_th", "tc_ticks", "lg_code")
REGISTER_NAMES = SCALAR_REGISTERS + ("code_chips",)


def _check_scalar(name: str, value) -> int:
    if int(value) != value:
        raise RegisterRangeError(f"{name}: value {value!r} is not an integer")
    value = int(value)
    if not 0 <= value <= REGISTER_MAX:
        raise RegisterRangeError(
            f"{name}: value {value} outside the 8-bit port range "
            f"[0, {REGISTER_MAX}]")
    return value


def _check_chips(value) -> tuple[int, ...]:
    chips = tuple(value)
    if len(chips) > REGISTER_MAX:
        raise RegisterRangeError(
            f"code_chips: {len(chips)} entries exceed {REGISTER_MAX}")
    return tuple(_check_scalar("code_chips entry", c) for c in chips)


class PhyRegisterFile:
    """Staged/active register pair with frame-boundary commit semantics.

    One logical writer at a time; ``write_register`` touches only the staged
    copy and ``commit`` (gated on the reconfiguration strobe) swaps the whole
    staged set in atomically after validating it.
    """

    def __init__(self, tick_period: float, nb_tc_par_frame_th: int,
                 tc_ticks: int, code_chips, lg_code: int | None = None):
        if tick_period <= 0:
            raise ParameterError("tick_period must be > 0")
        self.tick_period = tick_period
        chips = _check_chips(code_chips)
        staged = {
            "nb_tc_par_frame_th": _check_scalar("nb_tc_par_frame_th",
                                                nb_tc_par_frame_th),
            "tc_ticks": _check_scalar("tc_ticks", tc_ticks),
            "lg_code": _check_scalar("lg_code",
                                     len(chips) if lg_code is None else lg_code),
            "code_chips": chips,
        }
        self._staged = staged
        self._active = dict(staged)
        self.sig_reconf = False
        self._validate(self._active)

    @staticmethod
    def _validate(regs: dict):
        if regs["tc_ticks"] < 1:
            raise CommitError("tc_ticks must be >= 1")
        if regs["nb_tc_par_frame_th"] < 1:
            raise CommitError("nb_tc_par_frame_th must be >= 1")
        if regs["lg_code"] < 1:
            raise CommitError("lg_code must be >= 1")
        if len(regs["code_chips"]) != regs["lg_code"]:
            raise CommitError(
                f"lg_code={regs['lg_code']} but {len(regs['code_chips'])} "
                f"chips are loaded")
        bad = [c for c in regs["code_chips"]
               if c >= regs["nb_tc_par_frame_th"]]
        if bad:
            raise CommitError(
                f"chips {bad} not below nb_tc_par_frame_th="
                f"{regs['nb_tc_par_frame_th']}")

    def write_register(self, name: str, value) -> "PhyRegisterFile":
        """Stage one register write; the active configuration is untouched."""
        if name not in REGISTER_NAMES:
            raise ParameterError(f"unknown register {name!r}")
        if name == "code_chips":
            self._staged[name] = _check_chips(value)
        else:
            self._staged[name] = _check_scalar(name, value)
        return self

    def load_code(self, lg_code: int, chip_stream) -> "PhyRegisterFile":
        """Stage a full serial code load (lg_code + chip stream together)."""
        chips = _check_chips(chip_stream)
        if len(chips) != _check_scalar("lg_code", lg_code):
            raise ParameterError(
                f"chip stream has {len(chips)} entries, lg_code={lg_code}")
        self._staged["lg_code"] = lg_code
        self._staged["code_chips"] = chips
        return self

    def raise_reconf(self) -> "PhyRegisterFile":
        """Assert the reconfiguration strobe for the next frame boundary."""
        self.sig_reconf = True
        return self

    def commit(self) -> "PhyRegisterFile":
        """Latch the staged set into the active configuration.

        Called at a frame boundary with the strobe asserted.  Validation
        failures raise CommitError and leave the active set untouched.
        """
        if not self.sig_reconf:
            raise CommitError("commit requires sig_reconf asserted")
        self._validate(self._staged)
        self._active = dict(self._staged)
        self._staged = dict(self._active)
        self.sig_reconf = False
        return self

    def staged(self, name: str):
        return self._staged[name]

    def active(self, name: str):
        return self._active[name]

    @property
    def frame_config(self) -> FrameConfig:
        return FrameConfig(tc=self.active("tc_ticks") * self.tick_period,
                           nc=self.active("nb_tc_par_frame_th"))

    @property
    def th_code(self) -> ThCode:
        return ThCode(self.active("code_chips"))


@dataclass(frozen=True)
class ReconfigEvent:
    """Register writes applied at one frame boundary."""

    at_frame: int
    writes: tuple[tuple[str, object], ...]

    def __post_init__(self):
        if self.at_frame < 0:
            raise ParameterError("at_frame must be >= 0")
        object.__setattr__(self, "writes", tuple(self.writes))


@dataclass(frozen=True)
class FrameTrace:
    """Active configuration for one frame of a stream run."""

    frame: int
    tc_ticks: int
    nc: int
    code_id: int
    tf: float
    paper_rate: Fraction


@dataclass
class StreamRun:
    """A reconfigurable stream: inputs, and results once completed."""

    tx_bits: np.ndarray
    events: tuple[ReconfigEvent, ...]
    decoded_bits: np.ndarray | None = None
    trace: tuple[FrameTrace, ...] = ()


def run_stream(run: StreamRun, rf: PhyRegisterFile, tx_factory, rx_factory,
               noise: AwgnSpec | None = None) -> StreamRun:
    """Simulate a full stream frame by frame under a reconfiguration schedule.

    ``tx_factory(frame_config, code) -> TxConfig`` and
    ``rx_factory(frame_config, code) -> RxConfig`` build the per-frame
    parameterization from the active registers; both sides see the same
    schedule (reconfiguration signaling is out of band).  Events are staged,
    strobed and committed at their frame boundary; a commit error aborts the
    run naming the frame and cause.  With zero events the output is
    bit-identical to the static pipeline.
    """
    bits = np.asarray(run.tx_bits, dtype=np.int64)
    if bits.size == 0:
        raise ParameterError("tx_bits must be non-empty")
    events = sorted(run.events, key=lambda e: e.at_frame)
    for a, b in zip(events, events[1:]):
        if a.at_frame == b.at_frame:
            raise ParameterError(f"duplicate events at frame {a.at_frame}")
    schedule = {e.at_frame: e for e in events}

    segments = []
    frame_meta = []   # (rx_cfg, start_sample, length)
    trace = []
    code_ids: dict[tuple, int] = {}
    start = 0
    eb = None
    for j in range(bits.size):
        event = schedule.get(j)
        if event is not None:
            for name, value in event.writes:
                rf.write_register(name, value)
            rf.raise_reconf()
            try:
                rf.commit()
            except CommitError as exc:
                raise CommitError(
                    f"reconfiguration at frame {j} failed: {exc}") from exc

        frame_cfg = rf.frame_config
        code = rf.th_code
        chip = code.chips[j % len(code)]
        frame_code = ThCode((chip,))
        tx_cfg = tx_factory(frame_cfg, frame_code)
        rx_cfg = rx_factory(frame_cfg, frame_code)
        if eb is None:
            eb = energy_per_bit(tx_cfg)

        segment = modulate(bits[j:j + 1], tx_cfg)
        segments.append(segment.samples)
        frame_meta.append((rx_cfg, tx_cfg, start, len(segment)))
        start += len(segment)

        code_key = code.chips
        code_id = code_ids.setdefault(code_key, len(code_ids))
        trace.append(FrameTrace(frame=j,
                                tc_ticks=rf.active("tc_ticks"),
                                nc=rf.active("nb_tc_par_frame_th"),
                                code_id=code_id,
                                tf=frame_cfg.tf,
                                paper_rate=data_rate(frame_cfg).paper_rate))

    tx_rate = frame_meta[0][1].pulse.sample_rate
    full = SampledWaveform(np.concatenate(segments), tx_rate)
    if noise is not None:
        full = add_awgn(full, eb, noise)

    from .receiver import signal_band
    decoded = np.empty(bits.size, dtype=np.int64)
    for j, (rx_cfg, tx_cfg, seg_start, seg_len) in enumerate(frame_meta):
        segment = SampledWaveform(full.samples[seg_start:seg_start + seg_len],
                                  tx_rate)
        band = signal_band(tx_cfg)
        sampled = adc_sample(segment, rx_cfg.adc, band)
        decoded[j] = demodulate(sampled, rx_cfg)[0]

    run.decoded_bits = decoded
    run.trace = tuple(trace)
    return run


def trace_to_csv(trace) -> str:
    """CSV body `frame,tc_ticks,nc,code_id,tf_ns,paper_rate_mbps`."""
    lines = ["frame,tc_ticks,nc,code_id,tf_ns,paper_rate_mbps"]
    for t in trace:
        lines.append(f"{t.frame},{t.tc_ticks},{t.nc},{t.code_id},"
                     f"{t.tf * 1e9:.6g},{float(t.paper_rate) / 1e6:.6g}")
    return "\n".join(lines) + "\n"


def parse_event_map(entries) -> tuple[ReconfigEvent, ...]:
    """Build an event schedule from `{frame_index: {register: value}}`."""
    events = []
    for frame, writes in sorted(entries.items()):
        events.append(ReconfigEvent(at_frame=int(frame),
                                    writes=tuple(writes.items())))
    return tuple(events)
