"""Time-hopping frame structure, hop-code handling and the data-rate model.

A frame of duration Tf is divided into Nc slots of duration Tc; the hop code
picks one slot per frame.  Rates are kept as exact rationals so the identity
rate * Tc == 1 survives arbitrary float slot durations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError

#: widest value an 8-bit register port can carry
REGISTER_MAX = 255


@dataclass(frozen=True)
class FrameConfig:
    """Slot duration Tc and slot count Nc; the frame duration Tf = Nc * Tc."""

    tc: float   # seconds, > 0
    nc: int     # slots per frame, 1..255

    def __post_init__(self):
        if self.tc <= 0:
            raise ParameterError("tc must be > 0")
        if not 1 <= int(self.nc) <= REGISTER_MAX:
            raise ParameterError(f"nc must be in 1..{REGISTER_MAX}")

    @property
    def tf(self) -> float:
        return self.nc * self.tc


@dataclass(frozen=True)
class ThCode:
    """Per-frame hop sequence; each chip selects a slot index."""

    chips: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "chips", tuple(int(c) for c in self.chips))
        if len(self.chips) > REGISTER_MAX:
            raise ParameterError(f"code length must be <= {REGISTER_MAX}")
        for c in self.chips:
            if not 0 <= c <= REGISTER_MAX:
                raise ParameterError(f"chip {c} outside 0..{REGISTER_MAX}")

    def __len__(self):
        return len(self.chips)

    @classmethod
    def empty(cls) -> "ThCode":
        """The cleared register state; unusable for modulation."""
        return cls(())

    def validate_against(self, cfg: FrameConfig):
        if not self.chips:
            raise ParameterError("hop code is empty")
        bad = [c for c in self.chips if c >= cfg.nc]
        if bad:
            raise ParameterError(f"chips {bad} not below nc={cfg.nc}")


@dataclass(frozen=True)
class RateReport:
    """Both rate readings for a frame config, as exact rationals.

    ``paper_rate`` is 1/Tc (one bit per slot); ``symbol_rate`` is 1/Tf, the
    rate at which the simulator actually sends one pulse per frame.  The two
    differ by exactly Nc and are always reported together.
    """

    paper_rate: Fraction    # bits/s
    symbol_rate: Fraction   # symbols/s

    @property
    def paper_rate_bps(self) -> float:
        return float(self.paper_rate)

    @property
    def symbol_rate_sps(self) -> float:
        return float(self.symbol_rate)


def frame_duration(cfg: FrameConfig) -> float:
    """Frame duration Tf = Nc * Tc in seconds."""
    return cfg.tf


def data_rate(cfg: FrameConfig) -> RateReport:
    """Exact 1/Tc and 1/Tf rate pair for a frame config."""
    paper = 1 / Fraction(cfg.tc)
    return RateReport(paper_rate=paper, symbol_rate=paper / cfg.nc)


def generate_th_code(seed: int, length: int, nc: int) -> ThCode:
    """Deterministic pseudo-random hop code, chips uniform on [0, nc)."""
    if not 1 <= length <= REGISTER_MAX:
        raise ParameterError(f"length must be in 1..{REGISTER_MAX}")
    if nc < 1:
        raise ParameterError("nc must be >= 1")
    rng = np.random.default_rng(seed)
    return ThCode(tuple(int(c) for c in rng.integers(0, nc, size=length)))


def code_register_load(existing: ThCode | None, lg_code: int,
                       chip_stream) -> ThCode:
    """Serial code-load handshake: replace the stored code with `lg_code`
    chips delivered one per cycle; lg_code = 0 with an empty stream clears."""
    if not 0 <= lg_code <= REGISTER_MAX:
        raise ParameterError(f"lg_code must be in 0..{REGISTER_MAX}")
    chips = tuple(int(c) for c in chip_stream)
    if len(chips) != lg_code:
        raise ParameterError(
            f"chip stream has {len(chips)} entries, lg_code={lg_code}")
    for c in chips:
        if not 0 <= c <= REGISTER_MAX:
            raise ParameterError(f"chip {c} outside 0..{REGISTER_MAX}")
    return ThCode(chips)


def code_to_csv(code: ThCode) -> str:
    """Comma-separated chip list, the config-file serialization."""
    return ",".join(str(c) for c in code.chips)


def code_from_csv(text: str) -> ThCode:
    """Parse a comma-separated chip list."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    return ThCode(tuple(int(p) for p in parts))
