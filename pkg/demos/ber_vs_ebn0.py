"""Monte Carlo BER curves for the three pulse modulations next to their
matched-filter closed forms.

Run: python3 demos/ber_vs_ebn0.py
"""

from uwbsim import (AdcModel, FrameConfig, ModScheme, PulseShape, PulseSpec,
                    RxConfig, TxConfig, ber_sweep, generate_th_code,
                    pulse_template, theoretical_ber)
from uwbsim.receiver import signal_band

PULSE = PulseSpec(PulseShape("gaussian"), amplitude=1.0, duration=1e-9,
                  sample_rate=10e9)
FRAME = FrameConfig(tc=2e-9, nc=2)
CODE = generate_th_code(seed=7, length=8, nc=FRAME.nc)
ADC = AdcModel(sample_rate=10e9, bits=16, full_scale=8.0, mode="nyquist")
EBN0_DB = [0.0, 2.0, 4.0, 6.0]

for kind in ("bpam", "ppm", "ook"):
    delta = PULSE.duration if kind == "ppm" else 0.0
    scheme = ModScheme(kind, delta)
    tx = TxConfig(PULSE, FRAME, CODE, scheme)
    rx = RxConfig(ADC, FRAME, CODE, scheme,
                  pulse_template(PULSE, ADC, signal_band(tx)))
    curve = ber_sweep(tx, rx, EBN0_DB, nbits=50_000, seed=1)
    print(f"{kind.upper()}  (Eb convention: {curve.eb_convention})")
    for point in curve.points:
        theory = theoretical_ber(kind, point.ebn0_db)
        print(f"  Eb/N0 {point.ebn0_db:4.1f} dB   measured {point.ber:.4e}"
              f"   theory {theory:.4e}   +/-{point.ci95_halfwidth:.1e}")
    print()
