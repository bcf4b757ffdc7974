"""Lifting a (relative) cycle of the total complex to a prism cycle.

Every cell ``tau`` of ``z`` whose lifetime meets ``[b, d]`` is placed at
``t_tau = max(b, tmin(tau))`` as a vertical cell.  The sweeping boundary
``w`` starts at ``w_init`` on level ``s`` and is stretched along the prism
towards ``f``, picking up ``a_tau * d(tau)`` as each ``t_tau`` is passed.
"""

from __future__ import annotations

import gc
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import Chain, boundary
from .model import CellId, DeltaComplex
from .prism import PrismChain, Run, Vertical, prism_boundary, prism_contains, verticals_at


class LiftContractError(ValueError):
    pass


@dataclass(frozen=True)
class LiftArgs:
    z: Chain
    s: int
    f: int
    w_init: Chain

    @property
    def b(self) -> int:
        return min(self.s, self.f)

    @property
    def d(self) -> int:
        return max(self.s, self.f)


def lift_times(args: LiftArgs, c: DeltaComplex) -> Dict[CellId, int]:
    """``t_tau`` for each cell of ``z`` whose lifetime meets ``[b, d]``."""
    b, d = args.b, args.d
    cells, index = c.cells, c._index
    times = {}
    for tau in args.z:
        tmin, tmax = cells[index[tau]].lifetime
        if tmin <= d and tmax >= b:
            times[tau] = b if tmin < b else tmin
    return times


@contextmanager
def _gc_paused():
    # the sweep allocates many small tuples but no reference cycles; letting
    # the cyclic collector rescan a large heap would dominate the runtime
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def _check_w_init(args: LiftArgs, c: DeltaComplex) -> None:
    s = args.s
    for cell in args.w_init:
        rec = c[cell]
        if not rec.tmin <= s <= rec.tmax:
            raise LiftContractError(f"w_init cell {cell!r} is not in K[{s},{s}]")


def _run(cell: CellId, l: int, t: int, a: int) -> Tuple[Run, int]:
    return (Run(cell, l, t), a) if l < t else (Run(cell, t, l), -a)


def lift_cycle(args: LiftArgs, c: DeltaComplex) -> PrismChain:
    """Per-face coefficient sweep, linear in the size of ``z`` and its faces
    (each face sorts only its own few events).

    The face loop also visits the support of ``w_init`` so that a lone
    initial boundary is stretched from ``s`` to ``f``.
    """
    _check_w_init(args, c)
    with _gc_paused():
        return _lift_sweep(args, c)


def _lift_sweep(args: LiftArgs, c: DeltaComplex) -> PrismChain:
    z, s, f = args.z, args.s, args.f
    p = z.p
    b, d = args.b, args.d
    down = f < s
    cells, index = c.cells, c._index
    new = tuple.__new__  # skips the namedtuple constructor frame
    # verticals are distinct and runs of one face never repeat, so the
    # output dict needs no accumulation
    out: Dict[object, int] = {}
    # events per face position; each list is tiny, so sorting it is cheap
    events: List[Optional[list]] = [None] * len(cells)
    for sigma in args.w_init:
        events[index[sigma]] = []
    life, faces = c._compact()
    for tau, a in z._terms.items():
        k = index[tau]
        tmin, tmax = life[k]
        if tmin > d or tmax < b:
            continue
        t = b if tmin < b else tmin
        out[new(Vertical, (tau, t))] = a
        for pos, coeff in faces[k]:
            ev = events[pos]
            if ev is None:
                events[pos] = [(t, a * coeff)]
            else:
                ev.append((t, a * coeff))

    w_init = args.w_init._terms
    for pos, ev in enumerate(events):
        if ev is None:
            continue
        sigma = cells[pos].id
        coeff = w_init.get(sigma, 0) % p
        # a face is driven from s towards f, so events are met in that order
        ev.sort(reverse=down)
        l = s
        for t, contrib in ev:
            if l != t and coeff:
                if l < t:
                    out[new(Run, (sigma, l, t))] = coeff
                else:
                    out[new(Run, (sigma, t, l))] = -coeff % p
            coeff = (coeff + contrib) % p
            l = t
        if l != f and coeff:
            if l < f:
                out[new(Run, (sigma, l, f))] = coeff
            else:
                out[new(Run, (sigma, f, l))] = -coeff % p
    return PrismChain._raw(out, p)


def lift_cycle_easy(args: LiftArgs, c: DeltaComplex) -> PrismChain:
    """Quadratic reference sweep that keeps the whole boundary ``w``."""
    _check_w_init(args, c)
    z, s, f = args.z, args.s, args.f
    p = z.p
    times = lift_times(args, c)
    direction = 1 if f >= s else -1
    pos = c.position
    sweep = sorted(times.items(), key=lambda kv: (direction * kv[1], pos(kv[0])))

    out: List[Tuple[object, int]] = []
    w: Dict[CellId, int] = dict(args.w_init.items())
    l = s
    for tau, t in sweep:
        a = z[tau]
        out.append((Vertical(tau, t), a))
        if l != t:
            out.extend(_run(sigma, l, t, coeff) for sigma, coeff in w.items())
        for sigma, coeff in c[tau].boundary:
            v = (w.get(sigma, 0) + a * coeff) % p
            if v:
                w[sigma] = v
            else:
                w.pop(sigma, None)
        l = t
    if l != f:
        out.extend(_run(sigma, l, f, coeff) for sigma, coeff in w.items())
    return PrismChain(out, p)


def w_final(args: LiftArgs, c: DeltaComplex) -> Chain:
    """``w_init + d(z restricted to cells with a lift time)``."""
    times = lift_times(args, c)
    z_in = Chain._raw({tau: a for tau, a in args.z.items() if tau in times}, args.z.p, args.z.dim)
    return args.w_init + boundary(z_in, c)


def expected_boundary(args: LiftArgs, c: DeltaComplex) -> PrismChain:
    """``w_final x f - w_init x s``.

    The sign on the ``s`` end follows from the run orientation; modulo 2
    it is the plain sum of the two ends.
    """
    return (verticals_at(w_final(args, c), args.f) - verticals_at(args.w_init, args.s)).canonical()


def boundary_contract_holds(args: LiftArgs, lifted: PrismChain, c: DeltaComplex) -> bool:
    """Compare on expanded chains so run merging cannot hide a mismatch."""
    got = prism_boundary(lifted.expand(), c).expand()
    want = expected_boundary(args, c).expand()
    return got.terms == want.terms


def membership_violations(lifted: PrismChain, c: DeltaComplex) -> List[object]:
    return [pc for pc in lifted.canonical_terms() if not prism_contains(pc, c)]
