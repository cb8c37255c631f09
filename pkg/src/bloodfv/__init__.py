"""bloodfv: well-balanced finite-volume solver for 1D blood flow in elastic vessels.

The conservative (A, Q) system with a linear-elastic wall law, four
interchangeable numerical fluxes (Rusanov, HLL, VFRoe-ncv, kinetic),
hydrostatic-style reconstruction of the variable rest-section source term
(preserving the zero-flow equilibrium exactly), two friction treatments,
first- and second-order schemes, characteristic boundary conditions, and
a set of analytic reference solutions with a convergence harness.
"""

from ._backend import BACKEND_NAME, HAS_COMPILED
from .boundary import (GivenArea, GivenDischarge, GivenDischargeFlux,
                       NonReflecting, Side, SupercriticalInflow,
                       SupercriticalOutflow, ghost_given_area,
                       ghost_given_discharge, ghost_supercritical,
                       is_subcritical, load_timeseries)
from .driver import (RunResult, Scenario, StudyResult, convergence_study,
                     l1_error, regression_slope, run)
from .errors import (BloodFVError, ConfigError, ConvergenceError,
                     PositivityError, SupercriticalWarning, ZeroAreaError)
from .fluxes import (FluxKind, InterfaceFlux, hll_flux, kinetic_flux,
                     numerical_flux, rusanov_flux, vfroe_ncv_flux)
from .model import (Grid, State, VesselModel, bernoulli_invariant, celerity,
                    eigenvalues, physical_flux, pressure, pressure_potential)
from .oracles import (DispersionRoot, TourniquetSolution,
                      characteristic_admittance, dalembert_solution,
                      damped_discharge, damped_dispersion,
                      diffusion_limit_coefficient, solve_tourniquet,
                      tourniquet_profile, transmission_reflection)
from .reconstruction import CellTraces, SlopeKind, minmod, reconstruct_cells, slope
from .stepping import (SchemeOrder, StepReport, cfl_timestep, step_first_order,
                       step_second_order)
from .wellbalanced import (FrictionTreatment, ReconstructedInterface,
                           SourceTreatment, apparent_topography,
                           hydrostatic_reconstruct, naive_source,
                           semi_implicit_friction)

__version__ = "0.1.0"
