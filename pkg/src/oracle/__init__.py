from .differentiation import DifferentiationPlan, Scheme, calibrate_convention, derivative_gap, phase_curve, \
    phase_time_numeric
from .scattering import Layer, TransmissionRecord, double_barrier_layers, scatter, scatter_layers, single_barrier_layers
