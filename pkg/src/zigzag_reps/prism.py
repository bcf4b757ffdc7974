"""Run-compressed chains in the prism over a zigzag.

The prism has vertical cells ``s x t`` (``t`` in ``T(s)``) and horizontal
cells ``s x [t, t+1]``.  A run ``s x [t1, t2]`` abbreviates the sum of the
unit horizontal cells it covers.  Orientation:

    d(s x t)        = (ds) x t
    d(s x [a, b])   = s x b - s x a - (ds) x [a, b]
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

from .algebra import Chain
from .model import CellId, DeltaComplex, id_key


class Vertical(NamedTuple):
    cell: CellId
    t: int


class Run(NamedTuple):
    cell: CellId
    t1: int
    t2: int


PrismCell = Union[Vertical, Run]


def prism_contains(pc: PrismCell, c: DeltaComplex) -> bool:
    if pc.cell not in c:
        return False
    rec = c[pc.cell]
    if isinstance(pc, Vertical):
        return rec.tmin <= pc.t <= rec.tmax
    return pc.t1 < pc.t2 and rec.tmin <= pc.t1 and pc.t2 <= rec.tmax


def _sort_key(pc: PrismCell):
    if isinstance(pc, Vertical):
        return (0, id_key(pc.cell), pc.t, 0)
    return (1, id_key(pc.cell), pc.t1, pc.t2)


class PrismChain:
    """Sparse combination of prism cells over Z/pZ.

    Runs may overlap as stored; :meth:`canonical` merges them into maximal
    runs of constant coefficient.  Equality compares canonical forms.
    """

    __slots__ = ("p", "terms", "_canon")

    def __init__(self, terms=(), p: int = 2):
        self.p = p
        acc: Dict[PrismCell, int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for pc, a in items:
            if isinstance(pc, Run) and pc.t1 > pc.t2:
                pc, a = Run(pc.cell, pc.t2, pc.t1), -a
            if isinstance(pc, Run) and pc.t1 == pc.t2:
                continue
            acc[pc] = (acc.get(pc, 0) + a) % p
        self.terms = {k: v for k, v in acc.items() if v}
        self._canon: Optional[Dict[PrismCell, int]] = None

    @classmethod
    def _raw(cls, terms: Dict[PrismCell, int], p: int) -> "PrismChain":
        """Wrap terms that are already reduced, nonzero and forward-oriented."""
        out = cls.__new__(cls)
        out.p, out.terms, out._canon = p, terms, None
        return out

    # views ---------------------------------------------------------------
    def items(self):
        return self.terms.items()

    def __iter__(self) -> Iterator[PrismCell]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.canonical_terms())

    def __getitem__(self, pc: PrismCell) -> int:
        return self.terms.get(pc, 0)

    def verticals(self) -> Dict[Vertical, int]:
        return {k: v for k, v in self.terms.items() if isinstance(k, Vertical)}

    def runs(self) -> Dict[Run, int]:
        return {k: v for k, v in self.terms.items() if isinstance(k, Run)}

    # algebra -------------------------------------------------------------
    def __add__(self, other: "PrismChain") -> "PrismChain":
        return PrismChain(list(self.terms.items()) + list(other.terms.items()), self.p)

    def __neg__(self) -> "PrismChain":
        return PrismChain([(k, -v) for k, v in self.terms.items()], self.p)

    def __sub__(self, other: "PrismChain") -> "PrismChain":
        return self + (-other)

    def scale(self, a: int) -> "PrismChain":
        return PrismChain([(k, a * v) for k, v in self.terms.items()], self.p)

    def canonical_terms(self) -> Dict[PrismCell, int]:
        if self._canon is None:
            self._canon = _canonicalize(self.terms, self.p)
        return self._canon

    def canonical(self) -> "PrismChain":
        out = PrismChain((), self.p)
        out.terms = dict(self.canonical_terms())
        out._canon = out.terms
        return out

    def expand(self) -> "PrismChain":
        """Replace every run by its unit runs."""
        acc: List[Tuple[PrismCell, int]] = []
        for pc, a in self.terms.items():
            if isinstance(pc, Run):
                acc.extend((Run(pc.cell, k, k + 1), a) for k in range(pc.t1, pc.t2))
            else:
                acc.append((pc, a))
        return PrismChain(acc, self.p)

    def is_expanded(self) -> bool:
        return all(isinstance(pc, Vertical) or pc.t2 == pc.t1 + 1 for pc in self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, PrismChain):
            return self.canonical_terms() == other.canonical_terms()
        if other == 0:
            return not self.canonical_terms()
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.canonical_terms().items()))

    def sorted_terms(self) -> List[Tuple[PrismCell, int]]:
        return sorted(self.canonical_terms().items(), key=lambda kv: _sort_key(kv[0]))

    def __repr__(self) -> str:
        body = " + ".join(f"{v}*{k!r}" for k, v in self.sorted_terms())
        return f"PrismChain({body or '0'}; p={self.p})"


def _canonicalize(terms: Dict[PrismCell, int], p: int) -> Dict[PrismCell, int]:
    out: Dict[PrismCell, int] = {}
    per_cell: Dict[CellId, List[Tuple[int, int]]] = defaultdict(list)
    for pc, a in terms.items():
        if isinstance(pc, Vertical):
            out[pc] = a
        else:
            per_cell[pc.cell].append((pc.t1, a))
            per_cell[pc.cell].append((pc.t2, -a))
    for cell, events in per_cell.items():
        events.sort()
        coeff = 0
        start = None
        k = 0
        while k < len(events):
            t = events[k][0]
            new = coeff
            while k < len(events) and events[k][0] == t:
                new = (new + events[k][1]) % p
                k += 1
            if new != coeff:
                if coeff:
                    out[Run(cell, start, t)] = coeff
                start = t
                coeff = new
    return out


def prism_boundary(z: PrismChain, c: DeltaComplex) -> PrismChain:
    acc: List[Tuple[PrismCell, int]] = []
    for pc, a in z.terms.items():
        rec = c[pc.cell]
        if isinstance(pc, Vertical):
            acc.extend((Vertical(face, pc.t), a * coeff) for face, coeff in rec.boundary)
        else:
            acc.append((Vertical(pc.cell, pc.t2), a))
            acc.append((Vertical(pc.cell, pc.t1), -a))
            acc.extend((Run(face, pc.t1, pc.t2), -a * coeff) for face, coeff in rec.boundary)
    return PrismChain(acc, z.p).canonical()


def verticals_at(w: Chain, t: int) -> PrismChain:
    """The chain ``w x t``."""
    return PrismChain([(Vertical(cell, t), a) for cell, a in w.items()], w.p)


def prism_dim(pc: PrismCell, c: DeltaComplex) -> int:
    d = c[pc.cell].dim
    return d if isinstance(pc, Vertical) else d + 1


def levels(pc: PrismCell) -> Tuple[int, int]:
    """The interval of the prism function covered by a cell."""
    if isinstance(pc, Vertical):
        return pc.t, pc.t
    return pc.t1, pc.t2
