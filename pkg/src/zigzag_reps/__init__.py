"""Zigzag persistence barcodes with compatible representatives.

Typical use::

    from zigzag_reps import Add, Del, ingest_events, zigzag_barcode

    c = ingest_events([Add("u", 0, ()), Add("v", 0, ()), Add("e", 1, (("u", -1), ("v", 1))), Del("e")])
    zz = zigzag_barcode(c, p=2)
    for bar in zz.bars:
        print(bar.dim, bar.type, bar.span, zz.representatives(bar.id))
"""

from .algebra import Chain, ColumnSpace, PrimeField, boundary, is_prime, rank_mod_p, restrict, solve_boundary
from .apex import (
    ApexIntervalKind,
    ApexRepresentative,
    DegeneratePairError,
    Mode,
    apex_failures,
    apex_rep,
    check_apex,
    lift_args,
)
from .cone import Base, ConeCellId, ConeFiltration, Coned, build_cone
from .intervaltree import IntervalTree
from .lift import LiftArgs, LiftContractError, boundary_contract_holds, lift_cycle, lift_cycle_easy, w_final
from .model import (
    Add,
    CellRecord,
    Del,
    DeltaComplex,
    Pad,
    TimeInterval,
    Violation,
    ZigzagError,
    in_sub,
    in_sup,
    ingest_events,
    pad,
    simplex_add,
    simplex_del,
    structural,
    validate,
)
from .prism import PrismChain, Run, Vertical, prism_boundary, prism_contains
from .reduction import (
    PairClass,
    PairKind,
    ReductionResult,
    check_decomposition,
    check_lazy,
    classify_pairs,
    lazy_reduce,
    perturb,
)
from .verify import (
    Oracle,
    PreconditionError,
    VerificationReport,
    betti,
    class_is_nonzero,
    compatible,
    full_verify,
    pointwise_basis_check,
)
from .zigzag import BarRecord, RepIndex, ZigzagBarcode, all_reps, bar_span, build_rep_index, slice, zigzag_barcode

__version__ = "0.1.0"
