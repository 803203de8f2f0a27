"""Simulation of a spin-photon cluster-state source.

Modules
-------
params      physical parameters, unit conversion, cycle time
qsim        dense spin + photon state vectors and Pauli strings
protocol    pulse schedules, target cluster, stabilizers
wavepacket  emitted mode functions, p_B, unitary correction, filtering,
            exciton dephasing
errormodel  spin channel, error localization, total error, Pauli frames
estimator   repetition and coincidence rates
cli         ``clustergun`` command line
"""

from .params import PhysicalParams, DimensionlessParams, parse_config, to_dimensionless
from .qsim import PauliString, QuantumState
from .protocol import Schedule, run_ideal, target_cluster, cluster_stabilizers
from .wavepacket import p_bad, p_bad_corrected, NonConvergenceError
from .errormodel import ErrorEvent, PauliChannel, localize, total_error

__version__ = "0.1.0"
