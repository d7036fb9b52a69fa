"""Meta-Fibonacci sequences containing a given linear recurrent sequence."""
from .construct import Construction, build, build_meta_recurrence, find_h, interleaved_term, is_valid_h
from .linrec import (
    CertificateError,
    GrowthCertificate,
    InvalidRecurrence,
    LinearRecurrence,
    RotatedRecurrence,
    growth_certificate,
    prefix,
    rotate,
)
from .metafib import (
    Death,
    InitialCondition,
    InvalidMetaRecurrence,
    MetaFibRecurrence,
    SequenceDied,
    eval_oracle,
    eval_prefix,
    extract_subsequence,
)
from .verify import Report, check_subsequence, check_theorem, trace_case

__version__ = "0.1.0"
