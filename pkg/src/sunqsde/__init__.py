"""SU(n) Lie-algebra machinery, bilinear quadrature QSDEs, and their realizability.

The package builds the generalized Gell-Mann basis of su(n) with its
structure constants, evaluates the antisymmetric/symmetric contraction
maps Theta^- / Theta^+, provides an exact coefficient-space algebra of
operator-valued expressions linear in the generators, synthesizes the
bilinear quadrature QSDE generated by a plant (alpha, Lambda), decides
physical realizability of arbitrary systems of that shape, recovers the
plant from realizable ones, and integrates the deterministic mean
dynamics.  The ``sunqsde`` CLI exposes all of it over JSON/CSV files.
"""

from .su_algebra import (
    GellMannBasis,
    StructureConstants,
    build_basis,
    structure_constants,
    constants_for,
    decompose_hermitian,
    reconstruct,
    export_json,
)
from .theta_maps import ThetaContext, context_for, vec
from .identities import IdentityReport, algebra_identity_suite, theta_identity_suite
from .operator_forms import (
    OperatorForm,
    FormMatrix,
    form_product,
    form_commutator,
    form_anticommutator,
    generator_vector,
    vector_commutator,
    verify_ccr,
    verify_linear_commutators,
    verify_plant_commutators,
)
from .realization import (
    PlantModel,
    QsdeSystem,
    RealizabilityReport,
    NotRealizableError,
    RecoveryMismatchError,
    synthesize,
    check_realizability,
    recover_model,
    model_to_json_dict,
    model_from_json_dict,
    system_to_json_dict,
    system_from_json_dict,
)
from .dynamics import Trajectory, mean_trajectory, output_means, write_csv

__version__ = "0.1.0"

__all__ = [
    "GellMannBasis",
    "StructureConstants",
    "build_basis",
    "structure_constants",
    "constants_for",
    "decompose_hermitian",
    "reconstruct",
    "export_json",
    "ThetaContext",
    "context_for",
    "vec",
    "IdentityReport",
    "algebra_identity_suite",
    "theta_identity_suite",
    "OperatorForm",
    "FormMatrix",
    "form_product",
    "form_commutator",
    "form_anticommutator",
    "generator_vector",
    "vector_commutator",
    "verify_ccr",
    "verify_linear_commutators",
    "verify_plant_commutators",
    "PlantModel",
    "QsdeSystem",
    "RealizabilityReport",
    "NotRealizableError",
    "RecoveryMismatchError",
    "synthesize",
    "check_realizability",
    "recover_model",
    "model_to_json_dict",
    "model_from_json_dict",
    "system_to_json_dict",
    "system_from_json_dict",
    "Trajectory",
    "mean_trajectory",
    "output_means",
    "write_csv",
    "__version__",
]
