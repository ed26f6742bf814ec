"""Closed-form pathloss model for RIS-assisted terahertz links.

Covers the molecular absorption coefficient, RIS lattice geometry, beam
steering and array factors, the end-to-end link budget, a brute-force field
oracle for validation, and a reproducible sweep engine.
"""

__version__ = "0.1.0"

from .absorption import (DB_PER_NEPER, Environment, absorption_coefficient,
                         absorption_coefficient_env, absorption_loss_db,
                         mixing_ratio, saturated_vapor_pressure)
from .beam import (PhaseProfile, SteeringCoefficients, SteeringTarget,
                   array_factor, array_factor_raw, dirichlet_ratio,
                   optimal_phase, optimal_phase_profile, steering_coefficients)
from .config import RunConfig, Scenario, load_config
from .errors import (ConfigError, DomainError, IndexRangeError, RisThzError,
                     ShapeError, SingularGeometryError)
from .geometry import (LinkGeometry, Point3, RisGeometry, ap_position,
                       element_distances_exact, element_distances_taylor,
                       element_position, fraunhofer_distance, ue_position)
from .linkbudget import (PathlossBreakdown, RadiationPattern, RadioConfig,
                         pathloss, pathloss_boresight, pattern_value,
                         received_power, ru_directivity)
from .oracle import (FieldResult, element_field_at_ue, incident_power,
                     reflected_power, total_field, validation_report)
from .sweep import (Axis, SweepSpec, SweepTable, find_axis_extremum,
                    half_power_width, run_sweep)
