"""Decay dynamics of a two-point giant atom with time-dependent couplings.

Two models are provided: the retarded-feedback delay equation of a giant
atom in a continuum waveguide (:mod:`giantatom.continuum`) and the
coupled-mode equations of a giant atom on a tight-binding chain
(:mod:`giantatom.lattice`).  Coupling profiles live in
:mod:`giantatom.schedules`, observables and sweeps in
:mod:`giantatom.analysis`.
"""

__version__ = "0.1.0"

from .analysis import (
    PlateauReport,
    SweepTable,
    detect_plateau,
    fs_metric,
    population_at,
    run_sweep,
    short_time_quadratic,
)
from .continuum import (
    ContinuumParams,
    Trajectory,
    conserved_charge,
    integrate,
    plateau_prediction,
    rates,
    rhs,
)
from .errors import (
    BoundaryLeakError,
    DomainError,
    FitError,
    GridError,
    ParseError,
    RangeError,
    StabilityError,
    ValidationError,
)
from .lattice import (
    LatticeConfig,
    LatticeState,
    effective_phase_and_delay,
    integrate_lattice,
    lattice_rhs,
)
from .schedules import Constant, Cosine, PeriodicQuench, Step, breakpoints, eval_profile
