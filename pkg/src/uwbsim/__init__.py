"""Discrete-time baseband simulator of a dynamically reconfigurable
time-hopping impulse-radio UWB transceiver."""

from .channel import NOISELESS, AwgnSpec, LinkBudget, add_awgn, friis_range, superpose
from .errors import (CommitError, ConfigError, DegenerateInputError,
                     DimensioningError, DomainError, ParameterError,
                     ReferenceLookupError, RegisterRangeError, UwbSimError)
from .framing import (FrameConfig, RateReport, ThCode, code_register_load,
                      data_rate, frame_duration, generate_th_code)
from .modem import (DacModel, ModScheme, QuantizationResult, TxConfig,
                    dac_quantize, modulate)
from .receiver import (AdcModel, BerCurve, BerPoint, RxConfig, adc_sample,
                       ber_sweep, demodulate, energy_per_bit, pulse_template,
                       theoretical_ber, validate_adc_band)
from .reconfig import (PhyRegisterFile, ReconfigEvent, StreamRun, run_stream)
from .reference import ReferenceRecord, all_records, lookup_reference
from .waveform import (PulseShape, PulseSpec, SampledWaveform,
                       SpectrumEstimate, bandwidth_at_level, estimate_spectrum,
                       is_uwb_compliant, signal_energy, synthesize_pulse)

__version__ = "0.1.0"
