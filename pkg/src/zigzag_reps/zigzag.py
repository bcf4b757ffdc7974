"""Barcodes of a zigzag with compatible representatives for every bar."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import Chain
from .apex import APEX_KIND, ApexIntervalKind, ApexRepresentative, Mode, apex_rep
from .cone import ConeFiltration, build_cone
from .intervaltree import IntervalTree
from .model import CellId, DeltaComplex, ZigzagError, pad, structural, validate
from .prism import PrismChain, Run, Vertical
from .reduction import PairClass, ReductionResult, classify_pairs, lazy_reduce


@dataclass(frozen=True)
class BarRecord:
    id: int
    dim: int
    kind: ApexIntervalKind
    b: int
    d: int
    span: Tuple[int, int]
    pair: PairClass

    @property
    def type(self) -> str:
        return self.kind.bar_type

    def __contains__(self, i: int) -> bool:
        return self.span[0] <= i <= self.span[1]

    def indices(self) -> range:
        return range(self.span[0], self.span[1] + 1)


def bar_span(pair: PairClass, bar_id: int = -1) -> BarRecord:
    """Zigzag indices where the bar is alive, from its apex levels."""
    if pair.degenerate:
        raise ZigzagError(f"degenerate pair at level {pair.b} has no bar")
    kind = APEX_KIND[pair.kind]
    b, d = pair.b, pair.d
    span = {
        ApexIntervalKind.CLOSED_OPEN: (b, d - 1),
        ApexIntervalKind.OPEN_CLOSED: (b + 1, d),
        ApexIntervalKind.OPEN_OPEN: (b + 1, d - 1),
        ApexIntervalKind.CLOSED_CLOSED: (b, d),
    }[kind]
    return BarRecord(bar_id, pair.dim, kind, b, d, span, pair)


class RepIndex:
    """Runs of an apex cycle in an interval tree, plus its vertical cells."""

    def __init__(self, cycle: PrismChain):
        terms = cycle.canonical_terms()
        self.p = cycle.p
        self.runs = [(pc.t1, pc.t2, (pc.cell, a)) for pc, a in terms.items() if isinstance(pc, Run)]
        self.verticals = {pc: a for pc, a in terms.items() if isinstance(pc, Vertical)}
        self.tree = IntervalTree(self.runs)

    def stab(self, x: float) -> Dict[CellId, int]:
        out: Dict[CellId, int] = {}
        for _, _, (cell, a) in self.tree.stab(x):
            out[cell] = (out.get(cell, 0) + a) % self.p
        return {k: v for k, v in out.items() if v}

    def scan(self, x: float) -> Dict[CellId, int]:
        """Linear-time reference for :meth:`stab`."""
        out: Dict[CellId, int] = {}
        for t1, t2, (cell, a) in self.runs:
            if t1 <= x <= t2:
                out[cell] = (out.get(cell, 0) + a) % self.p
        return {k: v for k, v in out.items() if v}


def build_rep_index(rep: ApexRepresentative) -> RepIndex:
    return RepIndex(rep.cycle)


def slice_level(record: BarRecord, i: int) -> float:
    """The half-integer level just inside the apex interval next to ``i``."""
    return i + 0.5 if i < record.d else i - 0.5


def slice(index: RepIndex, record: BarRecord, i: int) -> Chain:
    if i not in record:
        raise IndexError(f"index {i} is outside the span {record.span} of bar {record.id}")
    return Chain(index.stab(slice_level(record, i)), index.p, record.dim)


def all_reps(index: RepIndex, record: BarRecord) -> Dict[int, Chain]:
    return {i: slice(index, record, i) for i in record.indices()}


@dataclass
class ZigzagBarcode:
    """Everything computed for one zigzag: the padded complex, the cone
    reduction, the bars, and their apex representatives."""

    complex: DeltaComplex
    p: int
    mode: Mode
    filtration: ConeFiltration
    reduction: ReductionResult
    pairs: List[PairClass]
    bars: List[BarRecord]
    reps: Dict[int, ApexRepresentative]
    degenerate: List[PairClass] = field(default_factory=list)
    _indexes: Dict[int, RepIndex] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.bars)

    def __iter__(self):
        return iter(self.bars)

    def bar(self, bar_id: int) -> BarRecord:
        if not 0 <= bar_id < len(self.bars):
            raise KeyError(f"no bar with id {bar_id}")
        return self.bars[bar_id]

    def index(self, bar_id: int) -> RepIndex:
        if bar_id not in self._indexes:
            self._indexes[bar_id] = build_rep_index(self.reps[bar_id])
        return self._indexes[bar_id]

    def representative(self, bar_id: int, i: int) -> Chain:
        return slice(self.index(bar_id), self.bar(bar_id), i)

    def representatives(self, bar_id: int) -> Dict[int, Chain]:
        return all_reps(self.index(bar_id), self.bar(bar_id))

    def alive(self, i: int, dim: Optional[int] = None) -> List[BarRecord]:
        return [bar for bar in self.bars if i in bar and (dim is None or bar.dim == dim)]

    def input_span(self, bar: BarRecord) -> Tuple[int, int]:
        """The bar's span in the indices of the unpadded input."""
        return self.complex.origin[bar.span[0]], self.complex.origin[bar.span[1]]


def _bar_order(pair: PairClass, f: ConeFiltration):
    rec = bar_span(pair)
    return (pair.dim, rec.span[0], rec.span[1], f.index[pair.birth])


def zigzag_barcode(
    c: DeltaComplex,
    p: int = 2,
    mode: Mode = Mode.LAZY,
    reduction: Optional[ReductionResult] = None,
) -> ZigzagBarcode:
    """Pad, cone, reduce, classify, and lift every bar.

    Pass ``reduction`` to reuse a decomposition of the padded complex (any
    valid ``R = D V``; use ``mode=Mode.GENERAL`` unless it is lazy).
    """
    mode = Mode(mode)
    bad = structural(validate(c, p))
    if bad:
        raise ZigzagError("invalid zigzag: " + "; ".join(map(str, bad[:5])))
    c = pad(c)
    if reduction is None:
        f = build_cone(c, p)
        r = lazy_reduce(f)
    else:
        r = reduction
        f = r.filtration
    pairs = classify_pairs(r)
    live = [pc for pc in pairs if not pc.degenerate]
    live.sort(key=lambda pc: _bar_order(pc, f))
    bars, reps = [], {}
    for k, pc in enumerate(live):
        bars.append(bar_span(pc, k))
        reps[k] = apex_rep(pc, r, mode)
    return ZigzagBarcode(c, p, mode, f, r, pairs, bars, reps, [pc for pc in pairs if pc.degenerate])
