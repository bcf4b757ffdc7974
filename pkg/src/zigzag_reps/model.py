"""Zigzag filtrations stored as a Delta-complex with per-cell lifetimes.

A zigzag ``K_0 -> K_1 <- K_2 -> ... <- K_n`` is encoded by the union complex
``K`` together with an integer interval ``T(cell)`` for every cell:
``cell in K_i`` iff ``i in T(cell)``.  Insertions ride up-maps into odd
spaces and deletions ride down-maps out of odd spaces, so all lifetime
endpoints are odd.  ``K_0`` and ``K_n`` are empty.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

CellId = Hashable


class ZigzagError(ValueError):
    """Malformed zigzag input (event stream or file)."""


class TimeInterval(NamedTuple):
    tmin: int
    tmax: int

    def __contains__(self, i: object) -> bool:
        return isinstance(i, (int, float)) and self.tmin <= i <= self.tmax


@dataclass(frozen=True)
class CellRecord:
    id: CellId
    dim: int
    boundary: Tuple[Tuple[CellId, int], ...]
    lifetime: TimeInterval

    @property
    def tmin(self) -> int:
        return self.lifetime.tmin

    @property
    def tmax(self) -> int:
        return self.lifetime.tmax

    @property
    def faces(self) -> Tuple[CellId, ...]:
        return tuple(face for face, _ in self.boundary)

    def with_lifetime(self, tmin: int, tmax: int) -> "CellRecord":
        return CellRecord(self.id, self.dim, self.boundary, TimeInterval(tmin, tmax))


def in_sub(cell: CellRecord, x: float) -> bool:
    """Membership in the sublevel set ``K_{<=x}``."""
    return cell.tmin <= x


def in_sup(cell: CellRecord, x: float) -> bool:
    """Membership in the superlevel set ``K_{>=x}``."""
    return cell.tmax >= x


def id_key(cell_id: CellId):
    """Total order on heterogeneous cell ids (ints before strings)."""
    if isinstance(cell_id, bool):
        return (1, str(cell_id))
    if isinstance(cell_id, int):
        return (0, cell_id)
    return (1, str(cell_id))


@dataclass(frozen=True)
class DeltaComplex:
    """The total complex of a zigzag.

    ``origin[j]`` is the index of the input space that padded space ``j``
    copies; it is the identity for complexes that were never padded.
    """

    cells: Tuple[CellRecord, ...]
    n: int
    origin: Tuple[int, ...] = ()
    _index: Dict[CellId, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if not self.origin:
            object.__setattr__(self, "origin", tuple(range(self.n + 1)))
        index: Dict[CellId, int] = {}
        for k, cell in enumerate(self.cells):
            index.setdefault(cell.id, k)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_cells(cls, cells: Iterable[CellRecord], n: Optional[int] = None) -> "DeltaComplex":
        cells = tuple(cells)
        if n is None:
            n = max((c.tmax for c in cells), default=0) + 1
        return cls(cells, n)

    @property
    def m(self) -> int:
        return len(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[CellRecord]:
        return iter(self.cells)

    def __contains__(self, cell_id: object) -> bool:
        return cell_id in self._index

    def __getitem__(self, cell_id: CellId) -> CellRecord:
        return self.cells[self._index[cell_id]]

    def position(self, cell_id: CellId) -> int:
        return self._index[cell_id]

    def _compact(self) -> Tuple[List[Tuple[int, int]], List[Tuple[Tuple[int, int], ...]]]:
        """Lifetimes and boundaries by position, as flat tuples.

        Built once; sweeps over large complexes read these instead of the
        records, which keeps their working set small.
        """
        packed = self.__dict__.get("_packed")
        if packed is None:
            index = self._index
            life = [(c.tmin, c.tmax) for c in self.cells]
            faces = [tuple((index[face], coeff) for face, coeff in c.boundary) for c in self.cells]
            packed = (life, faces)
            object.__setattr__(self, "_packed", packed)
        return packed

    @property
    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def space(self, i: int) -> List[CellId]:
        """Ids of the cells of ``K_i``, in storage order."""
        return [c.id for c in self.cells if c.tmin <= i <= c.tmax]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DeltaComplex):
            return NotImplemented
        return self.cells == other.cells and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.cells, self.n))


# --------------------------------------------------------------------------
# Event streams


@dataclass(frozen=True)
class Add:
    id: CellId
    dim: int
    boundary: Tuple[Tuple[CellId, int], ...] = ()


@dataclass(frozen=True)
class Del:
    id: CellId


@dataclass(frozen=True)
class Pad:
    pass


Event = Union[Add, Del, Pad]


def ingest_events(events: Iterable[Event]) -> DeltaComplex:
    """Replay an event stream into a DeltaComplex.

    Each add rides the next up-map (its space gets an odd index), each
    delete rides the next down-map; identity steps are inserted between
    consecutive events of the same direction.  ``Pad`` duplicates the
    current space.  Cells still present at the end are deleted in reverse
    order of insertion, so ``K_n`` is empty and nesting stays strict.
    """
    cur = 0
    order: List[CellId] = []
    info: Dict[CellId, Add] = {}
    tmin: Dict[CellId, int] = {}
    tmax: Dict[CellId, int] = {}
    alive: Dict[CellId, set] = {}  # present cell -> present cofaces

    for k, ev in enumerate(events):
        if isinstance(ev, Add):
            if ev.id in info:
                raise ZigzagError(f"event {k}: cell {ev.id!r} added twice")
            for face, _ in ev.boundary:
                if face not in alive:
                    raise ZigzagError(f"event {k}: face {face!r} of {ev.id!r} is not present")
            cur += 1 if cur % 2 == 0 else 2
            info[ev.id] = ev
            order.append(ev.id)
            tmin[ev.id] = cur
            alive[ev.id] = set()
            for face, _ in ev.boundary:
                alive[face].add(ev.id)
        elif isinstance(ev, Del):
            if ev.id not in alive:
                what = "already deleted" if ev.id in info else "unknown"
                raise ZigzagError(f"event {k}: cannot delete {what} cell {ev.id!r}")
            if alive[ev.id]:
                cof = sorted(alive[ev.id], key=id_key)[0]
                raise ZigzagError(f"event {k}: cell {ev.id!r} deleted before its coface {cof!r}")
            if cur % 2 == 0:
                cur += 1
            tmax[ev.id] = cur
            cur += 1
            del alive[ev.id]
            for face, _ in info[ev.id].boundary:
                alive[face].discard(ev.id)
        elif isinstance(ev, Pad):
            cur += 2
        else:
            raise ZigzagError(f"event {k}: unrecognized event {ev!r}")

    # cells still present leave one at a time, newest first
    for cid in reversed(order):
        if cid not in tmax:
            if cur % 2 == 0:
                cur += 1
            tmax[cid] = cur
            cur += 1
    cells = [CellRecord(cid, info[cid].dim, tuple(info[cid].boundary), TimeInterval(tmin[cid], tmax[cid])) for cid in order]
    n = cur if cells else 0
    return DeltaComplex(tuple(cells), n)


def simplex_id(vertices: Sequence) -> str:
    return ",".join(str(v) for v in vertices)


def simplex_add(vertices: Sequence) -> Add:
    """An ``Add`` for a genuine simplex, with alternating-sign boundary.

    Faces are named by :func:`simplex_id` of their sorted vertex tuples.
    """
    verts = tuple(vertices)
    if len(verts) == 1:
        return Add(simplex_id(verts), 0, ())
    bdry = tuple((simplex_id(verts[:j] + verts[j + 1:]), (-1) ** j) for j in range(len(verts)))
    return Add(simplex_id(verts), len(verts) - 1, bdry)


def simplex_del(vertices: Sequence) -> Del:
    return Del(simplex_id(tuple(vertices)))


# --------------------------------------------------------------------------
# Validation and padding


@dataclass(frozen=True)
class Violation:
    rule: str
    cells: Tuple[CellId, ...]
    message: str
    # True when pad() repairs it
    paddable: bool = False

    def __str__(self) -> str:
        return f"[{self.rule}] {self.message}"


def validate(c: DeltaComplex, p: Optional[int] = None) -> List[Violation]:
    """List every broken invariant of ``c``; empty iff ``c`` is well formed.

    Boundary-of-boundary is checked over the integers, or mod ``p`` if given.
    """
    out: List[Violation] = []
    seen: Dict[CellId, int] = {}
    for k, cell in enumerate(c.cells):
        if cell.id in seen:
            out.append(Violation("duplicate-id", (cell.id,), f"cell id {cell.id!r} is used twice"))
            continue
        seen[cell.id] = k
        tmin, tmax = cell.lifetime
        if tmin > tmax:
            out.append(Violation("empty-lifetime", (cell.id,), f"T({cell.id}) = [{tmin},{tmax}] is empty"))
        elif tmin == tmax:
            out.append(Violation("point-lifetime", (cell.id,), f"T({cell.id}) = [{tmin},{tmax}] is a single point", True))
        for t, name in ((tmin, "tmin"), (tmax, "tmax")):
            if t % 2 == 0:
                out.append(Violation("even-endpoint", (cell.id,), f"{name}({cell.id}) = {t} is even"))
        if tmin < 1 or tmax > c.n - 1:
            out.append(Violation("out-of-range", (cell.id,), f"T({cell.id}) leaves [1, n-1] with n = {c.n}"))
        if cell.dim < 0:
            out.append(Violation("bad-dim", (cell.id,), f"dim({cell.id}) is negative"))
        if cell.dim == 0 and cell.boundary:
            out.append(Violation("dim-mismatch", (cell.id,), f"vertex {cell.id} has a nonzero boundary"))
        for face, coeff in cell.boundary:
            if face not in c:
                out.append(Violation("missing-face", (face, cell.id), f"face {face!r} of {cell.id!r} is not in the complex"))
                continue
            fc = c[face]
            if c.position(face) > k:
                out.append(Violation("face-order", (face, cell.id), f"face {face} is stored after its coface {cell.id}"))
            if fc.dim != cell.dim - 1:
                out.append(Violation("dim-mismatch", (face, cell.id), f"face {face} of {cell.id} has dim {fc.dim}, expected {cell.dim - 1}"))
            if not fc.tmin < tmin:
                out.append(Violation("nesting-min", (face, cell.id), f"tmin({face}) < tmin({cell.id}) fails"))
            if not tmax < fc.tmax:
                out.append(Violation("nesting-max", (face, cell.id), f"tmax({cell.id}) < tmax({face}) fails"))
        # boundary of boundary
        acc: Dict[CellId, int] = {}
        for face, coeff in cell.boundary:
            if face in c:
                for ff, cc in c[face].boundary:
                    acc[ff] = acc.get(ff, 0) + coeff * cc
        bad = [ff for ff, v in acc.items() if (v % p if p else v) != 0]
        if bad:
            out.append(Violation("boundary-of-boundary", (cell.id,), f"boundary of boundary of {cell.id} is nonzero"))

    collisions = _collision_levels(c)
    for t in collisions:
        ends = [x.id for x in c.cells if x.tmax == t]
        starts = [x.id for x in c.cells if x.tmin == t]
        if set(ends) & set(starts) and len(ends) == len(starts) == 1:
            continue  # already reported as point-lifetime
        out.append(
            Violation(
                "endpoint-collision",
                tuple(starts + ends),
                f"level {t} is both an insertion and a deletion level",
                True,
            )
        )
    return out


def structural(violations: Iterable[Violation]) -> List[Violation]:
    """The violations that padding cannot repair."""
    return [v for v in violations if not v.paddable]


def _collision_levels(c: DeltaComplex) -> List[int]:
    mins = {cell.tmin for cell in c.cells}
    maxs = {cell.tmax for cell in c.cells}
    return sorted(mins & maxs)


def pad(c: DeltaComplex) -> DeltaComplex:
    """Duplicate spaces so that no level is both a birth and a death level.

    Duplicating ``K_t`` inserts ``K_t <- K_t -> K_t``: lifetimes reaching
    ``t`` are extended by two, later ones shift by two.  This removes
    single-point lifetimes and every coincidence ``tmin(a) = tmax(b)``
    without creating new ones.  Idempotent.
    """
    levels = _collision_levels(c)
    if not levels:
        return c

    def shift_min(t: int) -> int:
        return t + 2 * bisect_left(levels, t)

    def shift_max(t: int) -> int:
        return t + 2 * bisect_right(levels, t)

    cells = tuple(cell.with_lifetime(shift_min(cell.tmin), shift_max(cell.tmax)) for cell in c.cells)
    n = c.n + 2 * len(levels)
    origin = tuple(c.origin[_origin_of(j, levels)] for j in range(n + 1))
    return DeltaComplex(cells, n, origin)


def _origin_of(j: int, levels: Sequence[int]) -> int:
    shift = 0
    for t in levels:
        if j <= t + shift:
            return j - shift
        if j <= t + shift + 2:
            return t
        shift += 2
    return j - shift
