# -*- coding: utf-8 -*-

"""Top-level package for the domain of attraction estimator."""

# Bring up the classes and functions so that they appear to be directly in
# the package.

__version__ = "0.1.0"

from .metadata import metadata  # noqa: F401, E402

from .field_model import (  # noqa: F401, E402
    ComplexSeries,
    PolyField,
    SystemDefinitionError,
    enumerate_multiindices,
    grlex_rank,
    jacobian_at_origin,
    load_system,
    parse_system,
    poly_eval,
    poly_eval_many,
    serialize_system,
)
from .spectral import (  # noqa: F401, E402
    NotDiagonalizable,
    NotHurwitz,
    SpectralError,
    Spectrum,
    TransformedField,
    diagonalize,
    rhs_quadratic,
    transform_field,
)
from .embryo import (  # noqa: F401, E402
    Embryo,
    ImaginaryLeak,
    compute_coefficients,
    evaluate,
    evaluate_real,
    pde_residual,
    taylor_shift,
)
from .oracle import (  # noqa: F401, E402
    OracleParameters,
    SimOutcome,
    UnknownExactDA,
    Verdict,
    exact_da_member,
    simulate,
    simulate_many,
)
from .atlas import (  # noqa: F401, E402
    Atlas,
    CalibrationFailed,
    Chart,
    GrowthParameters,
    NoCandidates,
    RayNeverExits,
    SelectionParameters,
    boundary_sample,
    calibrate_charts,
    chart_membership,
    grow_atlas,
    point_membership_real,
    select_expansion_points,
)
from .parameters import RunConfig, RunParameters  # noqa: F401, E402
from .analyze_parameters import AnalyzeParameters  # noqa: F401, E402
from .grow_parameters import GrowParameters  # noqa: F401, E402
from .sample_parameters import SampleParameters  # noqa: F401, E402
from .validate_parameters import ValidateParameters  # noqa: F401, E402
from .analyze import Analyze  # noqa: F401, E402
from .grow import Grow  # noqa: F401, E402
from .sample import Sample  # noqa: F401, E402
from .validate import Validate  # noqa: F401, E402
from .domain_of_attraction import DomainOfAttraction  # noqa: F401, E402

__author__ = """The lyapunov_da developers"""
