"""Apex representatives from the cone reduction.

For each pair type the reduction supplies a cycle ``z`` of the total
complex, a sweep direction and an initial boundary; lifting them gives a
relative cycle of the prism generating the apex class of the bar.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from .algebra import Chain, boundary
from .cone import Base, ConeCellId, Coned
from .lift import LiftArgs, lift_cycle
from .model import DeltaComplex
from .prism import PrismChain, Vertical, levels, prism_boundary, prism_contains
from .reduction import PairClass, PairKind, ReductionResult


class ApexIntervalKind(enum.Enum):
    CLOSED_OPEN = "(b,d]"
    OPEN_CLOSED = "[b,d)"
    OPEN_OPEN = "[b,d]"
    CLOSED_CLOSED = "(b,d)"

    @property
    def bar_type(self) -> str:
        return _BAR_TYPE[self]


_BAR_TYPE = {
    ApexIntervalKind.CLOSED_OPEN: "closed-open",
    ApexIntervalKind.OPEN_CLOSED: "open-closed",
    ApexIntervalKind.OPEN_OPEN: "open-open",
    ApexIntervalKind.CLOSED_CLOSED: "closed-closed",
}

APEX_KIND = {
    PairKind.ORDINARY: ApexIntervalKind.CLOSED_OPEN,
    PairKind.RELATIVE: ApexIntervalKind.OPEN_CLOSED,
    PairKind.EXTENDED_OO: ApexIntervalKind.OPEN_OPEN,
    PairKind.EXTENDED_CC: ApexIntervalKind.CLOSED_CLOSED,
}


class DegeneratePairError(ValueError):
    pass


class Mode(enum.Enum):
    LAZY = "lazy"
    GENERAL = "general"


@dataclass(frozen=True)
class ApexRepresentative:
    pair: PairClass
    kind: ApexIntervalKind
    cycle: PrismChain
    args: LiftArgs

    @property
    def dim_bar(self) -> int:
        return self.pair.dim

    @property
    def dim_apex(self) -> int:
        return self.pair.dim + 1


def _base_part(ch: Chain, pred: Callable = lambda cell: True) -> Chain:
    """Base cells of a cone chain, re-keyed by their base ids."""
    return Chain._raw({cid.base: v for cid, v in ch.items() if not cid.coned and pred(cid.base)}, ch.p, ch.dim)


def _coned_part(ch: Chain) -> Chain:
    return Chain._raw({cid: v for cid, v in ch.items() if cid.coned}, ch.p, ch.dim)


def cone_boundary(ch: Chain, c: DeltaComplex) -> Chain:
    """Boundary in the cone complex (apex dropped) of a chain of cone cells."""
    p = ch.p
    out: Dict[ConeCellId, int] = {}
    for cid, a in ch.items():
        rec = c[cid.base]
        if cid.coned:
            out[Base(cid.base)] = (out.get(Base(cid.base), 0) + a) % p
            for face, coeff in rec.boundary:
                key = Coned(face)
                out[key] = (out.get(key, 0) - a * coeff) % p
        else:
            for face, coeff in rec.boundary:
                key = Base(face)
                out[key] = (out.get(key, 0) + a * coeff) % p
    return Chain({k: v for k, v in out.items() if v}, p)


def lift_args(pair: PairClass, r: ReductionResult, mode: Mode = Mode.LAZY) -> LiftArgs:
    if pair.degenerate:
        raise DegeneratePairError(f"pair {pair.birth!r}, {pair.death!r} has b = d = {pair.b}")
    mode = Mode(mode)
    c = r.filtration.complex
    p = r.p
    b, d = pair.b, pair.d
    zero = Chain((), p)
    kind = pair.kind
    if kind is PairKind.ORDINARY:
        return LiftArgs(_base_part(r.V_chain(pair.death)), d, b, zero)

    V = r.V_chain(pair.death)
    if mode is Mode.LAZY:
        R = r.R_chain(pair.death)
        if kind is PairKind.RELATIVE:
            return LiftArgs(_base_part(R), b, d, zero)
        if kind is PairKind.EXTENDED_OO:
            return LiftArgs(_base_part(R), d, b, zero)
        return LiftArgs(_base_part(V), b, d, -_base_part(R))

    sup_b = lambda cell: c[cell].tmax >= b
    if kind is PairKind.RELATIVE:
        z = _base_part(cone_boundary(_coned_part(V), c))
        return LiftArgs(z, b, d, zero)
    chain_c = _coned_part(V) + Chain._raw({cid: v for cid, v in V.items() if not cid.coned and sup_b(cid.base)}, p, None)
    dc = cone_boundary(chain_c, c)
    if _coned_part(dc):
        raise AssertionError("boundary of the truncated V column leaves the base space")
    if kind is PairKind.EXTENDED_OO:
        return LiftArgs(_base_part(dc), d, b, zero)
    return LiftArgs(_base_part(V, sup_b), b, d, -_base_part(dc))


def apex_rep(pair: PairClass, r: ReductionResult, mode: Mode = Mode.LAZY) -> ApexRepresentative:
    args = lift_args(pair, r, mode)
    cycle = lift_cycle(args, r.filtration.complex).canonical()
    return ApexRepresentative(pair, APEX_KIND[pair.kind], cycle, args)


# --------------------------------------------------------------------------
# Apex conditions


def _region(kind: ApexIntervalKind, b: int, d: int):
    """Predicates on (lo, hi) levels: where the chain and its boundary may live."""
    if kind is ApexIntervalKind.CLOSED_OPEN:
        return (lambda lo, hi: hi <= d), (lambda lo, hi: hi <= b)
    if kind is ApexIntervalKind.OPEN_CLOSED:
        return (lambda lo, hi: lo >= b), (lambda lo, hi: lo >= d)
    if kind is ApexIntervalKind.OPEN_OPEN:
        return (lambda lo, hi: b <= lo and hi <= d), (lambda lo, hi: False)
    return (lambda lo, hi: True), (lambda lo, hi: hi <= b or lo >= d)


def apex_failures(rep: ApexRepresentative, c: DeltaComplex) -> List[str]:
    """Reasons ``rep`` is not certified as an apex representative."""
    kind, b, d = rep.kind, rep.pair.b, rep.pair.d
    z = rep.cycle.canonical_terms()
    bd = prism_boundary(rep.cycle, c).canonical_terms()
    inside, allowed = _region(kind, b, d)
    problems = []
    if not z:
        problems.append("cycle is zero")
    for pc in z:
        if not prism_contains(pc, c):
            problems.append(f"{pc!r} is not a prism cell")
        elif not inside(*levels(pc)):
            problems.append(f"{pc!r} lies outside the space of {kind.value}")
        dim = c[pc.cell].dim + (0 if isinstance(pc, Vertical) else 1)
        if dim != rep.dim_apex:
            problems.append(f"{pc!r} has dimension {dim}, expected {rep.dim_apex}")
    for pc in bd:
        if not allowed(*levels(pc)):
            problems.append(f"boundary cell {pc!r} is outside the subspace of {kind.value}")

    def has(terms, t, test):
        return any(isinstance(pc, Vertical) and pc.t == t and test(c[pc.cell]) for pc in terms)

    at_min = lambda t: (lambda rec: rec.tmin == t)
    at_max = lambda t: (lambda rec: rec.tmax == t)
    if kind is ApexIntervalKind.CLOSED_OPEN:
        if not has(z, d, at_min(d)):
            problems.append("no cell tau x d with tmin(tau) = d")
        if not has(bd, b, at_min(b)):
            problems.append("boundary has no sigma x b with tmin(sigma) = b")
    elif kind is ApexIntervalKind.OPEN_CLOSED:
        if not has(z, b, at_max(b)):
            problems.append("no cell tau x b with tmax(tau) = b")
        if not has(bd, d, at_max(d)):
            problems.append("boundary has no sigma x d with tmax(sigma) = d")
    elif kind is ApexIntervalKind.OPEN_OPEN:
        if not has(z, b, at_max(b)):
            problems.append("no cell sigma x b with tmax(sigma) = b")
        if not has(z, d, at_min(d)):
            problems.append("no cell tau x d with tmin(tau) = d")
    else:
        if not has(bd, b, at_min(b)):
            problems.append("boundary has no sigma x b with tmin(sigma) = b")
        if not has(bd, d, at_max(d)):
            problems.append("boundary has no tau x d with tmax(tau) = d")
    return problems


def check_apex(rep: ApexRepresentative, c: DeltaComplex) -> bool:
    return not apex_failures(rep, c)


def lazy_shortcut_failures(pair: PairClass, r: ReductionResult) -> List[str]:
    """Consequences of laziness that the lazy apex formulas rely on."""
    if pair.kind not in (PairKind.EXTENDED_OO, PairKind.EXTENDED_CC, PairKind.RELATIVE):
        return []
    c = r.filtration.complex
    V = r.V_chain(pair.death)
    problems = []
    base = [cid.base for cid in V if not cid.coned]
    if pair.kind is PairKind.RELATIVE:
        if base:
            problems.append(f"V[{pair.death!r}] has base cells {base!r}")
        return problems
    low = [cell for cell in base if c[cell].tmax < pair.b]
    if low:
        problems.append(f"V[{pair.death!r}] has base cells outside K>=b: {low!r}")
    if pair.kind is PairKind.EXTENDED_CC:
        for cid in r.R_chain(pair.death):
            rec = c[cid.base]
            if cid.coned or not rec.tmin <= pair.b <= rec.tmax:
                problems.append(f"R[{pair.death!r}] has {cid!r} outside K[b,b]")
    return problems
