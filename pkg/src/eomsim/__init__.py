"""Steady-state entanglement in exciton-optomechanics, bare and polariton pictures."""

from .entanglement import (entanglement_report, log_negativity, log_negativity_one_vs_two,
                           min_residual_contangle)
from .gaussian import (CovarianceMatrix, check_stability, mode_occupation, reduce, rotate_basis,
                       solve_lyapunov)
from .model_strong import (HopfieldBasis, StrongParams, StrongSteadyState, build_diffusion_strong,
                           build_drift_strong, calibrate_drive, hopfield_transform,
                           solve_steady_state_strong)
from .model_weak import (WeakParams, WeakSteadyState, build_diffusion_weak, build_drift_weak,
                         solve_steady_state_weak)
from .report import read_csv, write_csv
from .sweeps import SweepResult, SweepSpec, evaluate_point, figure_preset, run_sweep
from .units import bose_einstein_occupation, drive_amplitude_from_power, power_from_drive_amplitude

__version__ = "0.1.0"
