"""State-adaptive quantum error correction: capacities, recovery maps, stabilizer tools and code switching."""

from .channels import QuantumChannel, apply, build_family, choi_convert, complementary, tensor
from .config import DEFAULT, Tolerances
from .errors import BracketError, DimensionError, ResourceError, SaqecError, ValidationError
from .information import CapacityEstimate, InfoReport, info_report, maximize_capacity
from .qec_core import dense_code_from_stabilizer, kl_check, petz_map, sa_protect_cycle
from .stabilizer import PauliOperator, StabilizerCode, Tableau, build_code, to_graph_state

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "CapacityEstimate",
    "DEFAULT",
    "DimensionError",
    "InfoReport",
    "PauliOperator",
    "QuantumChannel",
    "ResourceError",
    "SaqecError",
    "StabilizerCode",
    "Tableau",
    "Tolerances",
    "ValidationError",
    "apply",
    "build_code",
    "build_family",
    "choi_convert",
    "complementary",
    "dense_code_from_stabilizer",
    "info_report",
    "kl_check",
    "maximize_capacity",
    "petz_map",
    "sa_protect_cycle",
    "tensor",
    "to_graph_state",
]
