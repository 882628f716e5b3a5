"""Published synthesis results for the hardware receiver prototypes.

These numbers come from vendor toolchain runs (ASIC design-kit synthesis,
FPGA place-and-route) and cannot be recomputed here; they are embedded as
immutable reference constants for comparison reports.  ``as_printed`` keeps
the exact figures as published so integrity checks can compare
character-for-character.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ReferenceLookupError

TARGETS = ("ASIC-AMS-0.35um", "Spartan-III", "Virtex-5")
VERSIONS = ("static", "reconfigurable")


@dataclass(frozen=True)
class ReferenceRecord:
    """One implementation data point: target technology x receiver version."""

    target: str
    version: str
    frequency_mhz: float          # ASIC: synthesis clock; FPGA: post-P&R
    size_metric: float            # ASIC: area as printed; FPGA: gate count
    size_kind: str                # "area" | "gates"
    power_mw: float | None = None
    synthesis_frequency_mhz: float | None = None   # FPGA pre-P&R estimate
    clock_ns: float | None = None                  # ASIC clock period
    as_printed: tuple[tuple[str, str], ...] = ()


_RECORDS = {
    ("ASIC-AMS-0.35um", "static"): ReferenceRecord(
        target="ASIC-AMS-0.35um", version="static",
        frequency_mhz=333.0, clock_ns=3.0,
        size_metric=152123.9375, size_kind="area", power_mw=23.8080,
        as_printed=(("frequency", "333 MHz"), ("clock", "3 ns"),
                    ("total_area", "152123.937500"),
                    ("dynamic_power", "23.8080 mW"))),
    ("ASIC-AMS-0.35um", "reconfigurable"): ReferenceRecord(
        target="ASIC-AMS-0.35um", version="reconfigurable",
        frequency_mhz=50.0, clock_ns=20.0,
        size_metric=1254628.5, size_kind="area", power_mw=18.8108,
        as_printed=(("frequency", "50 MHz"), ("clock", "20 ns"),
                    ("total_area", "1254628.500000"),
                    ("dynamic_power", "18.8108 mW"))),
    ("Spartan-III", "static"): ReferenceRecord(
        target="Spartan-III", version="static",
        frequency_mhz=129.416, synthesis_frequency_mhz=160.8,
        size_metric=6466, size_kind="gates",
        as_printed=(("synthesis_frequency", "160,8 MHz"),
                    ("par_frequency", "129,416 MHz"),
                    ("size_gates", "6466"))),
    ("Spartan-III", "reconfigurable"): ReferenceRecord(
        target="Spartan-III", version="reconfigurable",
        frequency_mhz=62.672, synthesis_frequency_mhz=84.9,
        size_metric=55054, size_kind="gates",
        as_printed=(("synthesis_frequency", "84,9 MHz"),
                    ("par_frequency", "62,672 MHz"),
                    ("size_gates", "55054"))),
    ("Virtex-5", "static"): ReferenceRecord(
        target="Virtex-5", version="static",
        frequency_mhz=382.117, synthesis_frequency_mhz=448.7,
        size_metric=6232, size_kind="gates",
        as_printed=(("synthesis_frequency", "448,7 MHz"),
                    ("par_frequency", "382,117 MHz"),
                    ("size_gates", "6232"))),
    ("Virtex-5", "reconfigurable"): ReferenceRecord(
        target="Virtex-5", version="reconfigurable",
        frequency_mhz=104.3, synthesis_frequency_mhz=128.9,
        size_metric=15422, size_kind="gates",
        as_printed=(("synthesis_frequency", "128,9 MHz"),
                    ("par_frequency", "104,3 MHz"),
                    ("size_gates", "15422"))),
}


def lookup_reference(target: str, version: str) -> ReferenceRecord:
    """Fetch the transcribed record for a (target, version) pair."""
    try:
        return _RECORDS[(target, version)]
    except KeyError:
        raise ReferenceLookupError(
            f"no reference record for target={target!r} version={version!r}; "
            f"targets: {TARGETS}, versions: {VERSIONS}") from None


def all_records() -> tuple[ReferenceRecord, ...]:
    return tuple(_RECORDS.values())


def comparison_report(target: str) -> str:
    """Static-versus-reconfigurable summary for one target technology."""
    static = lookup_reference(target, "static")
    reconf = lookup_reference(target, "reconfigurable")
    lines = [f"target: {target}",
             f"frequency: {static.frequency_mhz:g} MHz (static) vs "
             f"{reconf.frequency_mhz:g} MHz (reconfigurable)",
             f"size ({static.size_kind}): {static.size_metric:g} vs "
             f"{reconf.size_metric:g}"]
    if static.power_mw is not None:
        lines.append(f"dynamic power: {static.power_mw:.4f} mW vs "
                     f"{reconf.power_mw:.4f} mW")
    lines.append("note: transcribed synthesis/place-and-route results; "
                 "never recomputed by this simulator")
    return "\n".join(lines) + "\n"
