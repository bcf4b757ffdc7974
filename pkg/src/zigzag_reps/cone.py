"""The cone filtration over a zigzag's total complex and its boundary matrix.

Base cells enter by increasing ``tmin``; coned cells ``w * s`` enter after
all base cells, by decreasing ``tmax``.  The apex ``w`` is never stored: the
column of a coned vertex is just its base vertex.  That makes the cone
acyclic, so the reduction pairs every cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

from .model import CellId, DeltaComplex, ZigzagError, id_key, validate


class ConeCellId(NamedTuple):
    coned: bool
    base: CellId

    def __repr__(self) -> str:
        return f"{'Coned' if self.coned else 'Base'}({self.base!r})"


def Base(cell: CellId) -> ConeCellId:
    return ConeCellId(False, cell)


def Coned(cell: CellId) -> ConeCellId:
    return ConeCellId(True, cell)


@dataclass
class ConeFiltration:
    complex: DeltaComplex
    p: int
    order: List[ConeCellId]
    value: List[int]
    dims: List[int]
    # D[j] maps row position -> coefficient in [1, p)
    D: List[Dict[int, int]]
    index: Dict[ConeCellId, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.order)

    @property
    def n_base(self) -> int:
        return sum(1 for cid in self.order if not cid.coned)

    def column(self, cell: ConeCellId) -> Dict[ConeCellId, int]:
        return {self.order[r]: v for r, v in self.D[self.index[cell]].items()}


def build_cone(c: DeltaComplex, p: int = 2, check: bool = True) -> ConeFiltration:
    """Order the cone cells and assemble the boundary matrix.

    ``check`` rejects complexes with any validation violation (including
    unpadded ones).
    """
    if check:
        bad = validate(c, p)
        if bad:
            raise ZigzagError("cannot build cone on an invalid complex: " + "; ".join(map(str, bad[:5])))

    base = sorted(c.cells, key=lambda x: (x.tmin, x.dim, id_key(x.id)))
    coned = sorted(c.cells, key=lambda x: (-x.tmax, x.dim, id_key(x.id)))
    order = [Base(x.id) for x in base] + [Coned(x.id) for x in coned]
    value = [x.tmin for x in base] + [x.tmax for x in coned]
    dims = [x.dim for x in base] + [x.dim + 1 for x in coned]
    index = {cid: k for k, cid in enumerate(order)}

    D: List[Dict[int, int]] = []
    for j, cid in enumerate(order):
        rec = c[cid.base]
        col: Dict[int, int] = {}
        if cid.coned:
            # d(w*s) = s - w*(ds), apex dropped
            col[index[Base(cid.base)]] = 1 % p
            for face, coeff in rec.boundary:
                r = index[Coned(face)]
                col[r] = (col.get(r, 0) - coeff) % p
        else:
            for face, coeff in rec.boundary:
                r = index[Base(face)]
                col[r] = (col.get(r, 0) + coeff) % p
        col = {r: v for r, v in col.items() if v}
        if col and max(col) >= j:
            raise ZigzagError(f"face of {cid!r} does not precede it in the cone order")
        D.append(col)
    return ConeFiltration(c, p, order, value, dims, D, index)
