"""Graphene plasmonic terahertz antenna toolkit.

Sheet conductivity of graphene, TM surface-plasmon modes of layered stacks,
dipole resonance and miniaturization trends, and footprint checks against
area-constrained application envelopes.
"""
from .antenna import (DipoleGeometry, NoResonanceInBandError,
                      ResonancePrediction, efficiency_proxy,
                      metal_dipole_resonance, miniaturization_factor,
                      resonance_frequency, resonant_length)
from .conductivity import (DEFAULT_TEMPERATURE_K, DegenerateConductivityError,
                           GrapheneSheet, chemical_potential_from_bias,
                           drude_weight, intraband_conductivity,
                           surface_impedance)
from .constants import CODATA, PhysicalConstants
from .modesolver import (BranchCutProximityError, ConvergenceError,
                         ModeSolution, ModeSolverError, NonBoundModeError,
                         StackMetricsRow, TracePoint, dispersion_residual,
                         find_mode, quasi_static_wavevector, residual_scale,
                         stack_metrics_sweep, trace_dispersion)
from .scenario import (FeasibilityReport, ScenarioRequirements,
                       builtin_scenarios, fits_footprint, scenario_by_name,
                       scenarios_csv, sdm_cell_size, write_scenarios_csv)
from .stacks import (DielectricLayer, LayeredStack, free_standing_sheet,
                     graphene_on_substrate, preset_stack)
from .sweep import (Column, ConfigError, ResultTable, SweepSpec,
                    UnknownColumnError, emit_csv, emit_plotdata, parse_config,
                    parse_result_csv, run_sweep)

__version__ = "0.1.0"

__all__ = [
    "BranchCutProximityError", "CODATA", "Column", "ConfigError",
    "ConvergenceError", "DEFAULT_TEMPERATURE_K", "DegenerateConductivityError",
    "DielectricLayer", "DipoleGeometry", "FeasibilityReport", "GrapheneSheet",
    "LayeredStack", "ModeSolution", "ModeSolverError", "NoResonanceInBandError",
    "NonBoundModeError", "PhysicalConstants", "ResonancePrediction",
    "ResultTable", "ScenarioRequirements", "StackMetricsRow", "SweepSpec",
    "TracePoint", "UnknownColumnError", "builtin_scenarios",
    "chemical_potential_from_bias", "dispersion_residual", "drude_weight",
    "efficiency_proxy", "emit_csv", "emit_plotdata", "find_mode",
    "fits_footprint", "free_standing_sheet", "graphene_on_substrate",
    "intraband_conductivity", "metal_dipole_resonance",
    "miniaturization_factor", "parse_config", "parse_result_csv",
    "preset_stack", "quasi_static_wavevector", "residual_scale",
    "resonance_frequency", "resonant_length", "run_sweep", "scenario_by_name",
    "scenarios_csv", "sdm_cell_size", "stack_metrics_sweep",
    "surface_impedance", "trace_dispersion", "write_scenarios_csv",
]
