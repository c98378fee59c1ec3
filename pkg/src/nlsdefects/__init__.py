"""Stationary states of the focusing cubic NLS on the line with a delta or delta-prime defect."""

from .algebra import TMinusSolutions, TPlusSolution, solve_t_minus, solve_t_plus
from .delta import DeltaModel, delta_observables, delta_state, delta_state_by_mass
from .dprime import (ANTISYM, ASYM_MINUS, ASYM_PLUS, SYM, DeltaPrimeModel, Family, FamilyTag,
                     action_gaps, dprime_observables, enumerate_states, fixed_mass_energy_ranking)
from .errors import QuadratureError, ThresholdViolation, UndefinedLimit
from .oracles import (brute_force_t_systems, quadrature_observables, residuals,
                      run_limit_study)
from .profiles import Observables, PiecewiseSechState, distance

__all__ = [
    "ANTISYM", "ASYM_MINUS", "ASYM_PLUS", "SYM",
    "DeltaModel", "DeltaPrimeModel", "Family", "FamilyTag", "Observables", "PiecewiseSechState",
    "QuadratureError", "ThresholdViolation", "UndefinedLimit", "TMinusSolutions", "TPlusSolution",
    "action_gaps", "brute_force_t_systems", "delta_observables", "delta_state", "delta_state_by_mass",
    "distance", "dprime_observables", "enumerate_states", "fixed_mass_energy_ranking",
    "quadrature_observables", "residuals", "run_limit_study", "solve_t_minus", "solve_t_plus",
]
