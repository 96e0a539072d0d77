"""Turing machines as exact sparse integer tensors.

A configuration becomes an order-4 0-1 characteristic tensor and a machine an
order-8 transition tensor; one contraction product drives the evolution, a
second composes transition tensors, and the two satisfy an exact mixed
associativity law.  A direct simulator serves as ground truth throughout.
"""

from .encoding import (
    MachineEncoding,
    decode_config,
    encode_config,
    encode_machine,
    format_dropped,
    restrict_k_nonzero,
)
from .errors import (
    ArityMismatch,
    DimsMismatch,
    DuplicateName,
    IncompleteDelta,
    IndexOutOfRange,
    MachineFormatError,
    MissingField,
    NotCharacteristic,
    ReservedName,
    ResourceLimit,
    TensorError,
    TMTensorError,
    UnknownToken,
)
from .harness import (
    AuditReport,
    EvolutionReport,
    TrialResult,
    Type2AssocReport,
    audit_nnz,
    find_upper_permutation,
    mixed_assoc_trial,
    random_config_tensor,
    random_transition_tensor,
    type2_assoc_trial,
    verify_evolution,
)
from .machine import (
    BoundaryOverflow,
    Configuration,
    ExtendedDelta,
    Halted,
    Machine,
    MachineFile,
    RunStatus,
    Trace,
    extend_delta,
    initial_configuration,
    machine_to_text,
    oracle_run,
    oracle_step,
    parse_document,
    parse_machine,
)
from .products import (
    DEFAULT_CAP,
    Evolution,
    evolve,
    global_factor,
    local_factor,
    type1,
    type2,
    type2_power,
)
from .tensor import Coord, Dims, Quad, SparseTensor

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "AuditReport",
    "BoundaryOverflow",
    "Configuration",
    "Coord",
    "DEFAULT_CAP",
    "DimsMismatch",
    "Dims",
    "DuplicateName",
    "Evolution",
    "ExtendedDelta",
    "Halted",
    "IncompleteDelta",
    "IndexOutOfRange",
    "Machine",
    "MachineEncoding",
    "MachineFile",
    "MachineFormatError",
    "MissingField",
    "NotCharacteristic",
    "Quad",
    "ReservedName",
    "ResourceLimit",
    "RunStatus",
    "SparseTensor",
    "TMTensorError",
    "TensorError",
    "EvolutionReport",
    "Trace",
    "TrialResult",
    "Type2AssocReport",
    "UnknownToken",
    "audit_nnz",
    "decode_config",
    "encode_config",
    "encode_machine",
    "evolve",
    "extend_delta",
    "find_upper_permutation",
    "format_dropped",
    "global_factor",
    "initial_configuration",
    "local_factor",
    "machine_to_text",
    "mixed_assoc_trial",
    "oracle_run",
    "oracle_step",
    "parse_document",
    "parse_machine",
    "random_config_tensor",
    "random_transition_tensor",
    "restrict_k_nonzero",
    "type1",
    "type2",
    "type2_assoc_trial",
    "type2_power",
    "verify_evolution",
]
