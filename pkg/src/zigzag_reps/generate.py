"""Random and structured zigzags for tests, demos and benchmarks."""

from __future__ import annotations

import itertools
import random
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import Chain, boundary
from .lift import LiftArgs
from .model import Add, CellRecord, Del, DeltaComplex, Event, Pad, TimeInterval, ingest_events


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_events(
    seed=None,
    m: int = 60,
    max_dim: int = 3,
    p_delete: float = 0.35,
    p_pad: float = 0.03,
    p_copy: float = 0.15,
    n_vertices: int = 6,
) -> List[Event]:
    """A random well-formed event stream adding at most ``m`` cells.

    Cells are oriented simplices on integer vertices, with alternating
    boundary signs.  With probability ``p_copy`` an existing simplex is
    added again as a second cell on the same vertices, giving a genuine
    Delta-complex.  At most ``n_vertices`` vertices are present at once so
    that higher simplices get closed up.  Trailing cells are left in place.
    """
    rng = _rng(seed)
    verts: Dict[str, Tuple[int, ...]] = {}
    boundary: Dict[str, Tuple] = {}
    cofaces: Dict[str, set] = {}
    by_verts: Dict[Tuple[int, ...], List[str]] = {}
    events: List[Event] = []
    counter = itertools.count()
    next_vertex = itertools.count()
    added = 0

    def present_of(vs):
        return by_verts.get(vs, [])

    def add(vs: Tuple[int, ...], bd: Tuple) -> None:
        nonlocal added
        cid = f"c{next(counter)}"
        verts[cid] = vs
        boundary[cid] = bd
        cofaces[cid] = set()
        by_verts.setdefault(vs, []).append(cid)
        for face, _ in bd:
            cofaces[face].add(cid)
        events.append(Add(cid, len(vs) - 1, bd))
        added += 1

    def try_add_simplex() -> bool:
        # extend a present cell by one vertex, choosing a copy for each facet
        cands = [cid for cid in verts if len(verts[cid]) <= max_dim]
        if not cands:
            return False
        # favour high dimensions, else triangles and tetrahedra are rare
        top = max(len(verts[cid]) for cid in cands)
        pool = [cid for cid in cands if len(verts[cid]) == top] if rng.random() < 0.5 else cands
        present = {v for vs in by_verts for v in vs}
        for _ in range(10):
            base = rng.choice(rng.choice((pool, cands)))
            used = sorted(present - set(verts[base]))
            rng.shuffle(used)
            vs = next((vs for vs in (tuple(sorted(verts[base] + (w,))) for w in used)
                       if all(present_of(vs[:j] + vs[j + 1:]) for j in range(len(vs)))), None)
            if vs is not None:
                break
        else:
            return False
        bd = [(rng.choice(present_of(vs[:j] + vs[j + 1:])), (-1) ** j) for j in range(len(vs))]
        if not _dd_zero(bd, boundary):
            return False
        add(vs, tuple(bd))
        return True

    def try_copy() -> bool:
        cands = [cid for cid in verts if len(verts[cid]) >= 2]
        if not cands:
            return False
        src = rng.choice(cands)
        vs = verts[src]
        bd = []
        for j in range(len(vs)):
            bd.append((rng.choice(present_of(vs[:j] + vs[j + 1:])), (-1) ** j))
        if not _dd_zero(bd, boundary):
            return False
        add(vs, tuple(bd))
        return True

    attempts = 0
    while added < m and attempts < 20 * m:
        attempts += 1
        r = rng.random()
        if r < p_pad:
            events.append(Pad())
        elif r < p_pad + p_delete:
            free = [cid for cid in verts if not cofaces[cid]]
            if free:
                cid = rng.choice(free)
                events.append(Del(cid))
                for face, _ in boundary[cid]:
                    cofaces[face].discard(cid)
                by_verts[verts[cid]].remove(cid)
                if not by_verts[verts[cid]]:
                    del by_verts[verts[cid]]
                del verts[cid], cofaces[cid]
        elif r < p_pad + p_delete + p_copy:
            try_copy()
        elif len(by_verts) == 0 or (sum(len(vs) == 1 for vs in by_verts) < n_vertices and rng.random() < 0.3):
            add((next(next_vertex),), ())
        else:
            try_add_simplex()
    return events


def _dd_zero(bd, boundary) -> bool:
    acc: Dict[str, int] = {}
    for face, a in bd:
        for ff, b in boundary[face]:
            acc[ff] = acc.get(ff, 0) + a * b
    return not any(acc.values())


def random_zigzag(seed=None, **kwargs) -> DeltaComplex:
    return ingest_events(random_events(seed, **kwargs))


def random_interval_complex(seed=None, m: int = 30, max_dim: int = 2, spread: int = 3) -> DeltaComplex:
    """Random lifetimes on the cells of a random stream, allowing several
    cells to appear or vanish at the same index (a non-normalized zigzag)."""
    rng = _rng(seed)
    base = random_zigzag(rng, m=m, max_dim=max_dim, p_delete=0.0)
    tmin: Dict[str, int] = {}
    for rec in base:
        lo = max((tmin[f] for f in rec.faces), default=-1)
        tmin[rec.id] = lo + 2 * rng.randint(1, spread)
    tmax: Dict[str, int] = {}
    cof: Dict[str, List[str]] = {rec.id: [] for rec in base}
    for rec in base:
        for f in rec.faces:
            cof[f].append(rec.id)
    for rec in reversed(base.cells):
        lo = max([tmin[rec.id]] + [tmax[x] + 2 for x in cof[rec.id]])
        tmax[rec.id] = lo + 2 * rng.randint(0, spread)
    cells = [rec.with_lifetime(tmin[rec.id], tmax[rec.id]) for rec in base]
    return DeltaComplex.from_cells(cells)


def random_suite(seed: int, count: int, primes: Sequence[int] = (2, 5), **kwargs) -> Iterator[Tuple[DeltaComplex, int]]:
    rng = random.Random(seed)
    for k in range(count):
        opts = {"n_vertices": rng.choice((4, 5, 6, 8)), "p_delete": rng.choice((0.15, 0.35)), **kwargs}
        yield random_zigzag(rng, **opts), primes[k % len(primes)]


def random_lift_args(seed, c: DeltaComplex, p: int) -> LiftArgs:
    """Arbitrary valid lift input: any chain, any sweep ends in range, and an
    initial boundary ``-d(y)`` for a random chain ``y`` in the space at ``s``
    (so ``w_init`` lies in ``K[s,s]`` and is itself a cycle)."""
    rng = _rng(seed)
    dims = sorted({rec.dim for rec in c})
    q = rng.choice(dims)
    cells = [rec.id for rec in c if rec.dim == q]
    z = Chain({cid: rng.randrange(1, p) for cid in rng.sample(cells, rng.randint(1, len(cells)))}, p, q)
    s, f = rng.randint(0, c.n), rng.randint(0, c.n)
    at_s = [rec.id for rec in c if rec.dim == q and rec.tmin <= s <= rec.tmax]
    w = Chain((), p, q - 1 if q > 0 else None)
    if at_s and q > 0 and rng.random() < 0.6:
        y = Chain({cid: rng.randrange(1, p) for cid in rng.sample(at_s, rng.randint(1, len(at_s)))}, p, q)
        w = -boundary(y, c)
    return LiftArgs(z, s, f, w)


def circle_zigzag(k: int, spread: int = 2) -> DeltaComplex:
    """``k`` vertices born at once, then the ``k`` edges of a cycle one by
    one; everything dies together at the end."""
    vt = 1
    cells = []
    first = 3
    last = first + 2 * spread * (k - 1)
    end = last + 2 * k + 2
    for j in range(k):
        cells.append(CellRecord(f"v{j}", 0, (), TimeInterval(vt, end + 2)))
    for j in range(k):
        t = first + 2 * spread * j
        cells.append(CellRecord(f"e{j}", 1, ((f"v{j}", -1), (f"v{(j + 1) % k}", 1)), TimeInterval(t, end)))
    return DeltaComplex.from_cells(cells)


def circle_lift_args(m: int, p: int = 2) -> Tuple[DeltaComplex, LiftArgs]:
    """A path-like lift of about ``m`` cells: the edge cycle of
    :func:`circle_zigzag` swept from its last level down to level 1."""
    k = max(3, m // 2)
    c = circle_zigzag(k)
    z = Chain({f"e{j}": 1 for j in range(k)}, p, 1)
    return c, LiftArgs(z, c.n - 1, 1, Chain((), p, 0))
