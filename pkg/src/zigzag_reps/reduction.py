"""Lazy R = DV reduction of the cone matrix and classification of its pairs."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import Chain
from .cone import ConeCellId, ConeFiltration
from .model import CellId

Column = Dict[int, int]


@dataclass
class ReductionResult:
    filtration: ConeFiltration
    R: List[Column]
    V: List[Column]
    pairs: List[Tuple[int, int]]  # (birth position, death position)

    @property
    def p(self) -> int:
        return self.filtration.p

    def low(self, j: int) -> Optional[int]:
        col = self.R[j]
        return max(col) if col else None

    def _chain(self, col: Column, dim: Optional[int]) -> Chain:
        order = self.filtration.order
        return Chain._raw({order[r]: v for r, v in col.items()}, self.p, dim)

    def R_chain(self, cell: ConeCellId) -> Chain:
        j = self.filtration.index[cell]
        return self._chain(self.R[j], self.filtration.dims[j] - 1)

    def V_chain(self, cell: ConeCellId) -> Chain:
        j = self.filtration.index[cell]
        return self._chain(self.V[j], self.filtration.dims[j])

    def pair_of(self) -> Dict[int, int]:
        out = {}
        for b, d in self.pairs:
            out[b] = d
            out[d] = b
        return out


def _axpy(target: Column, src: Column, f: int, p: int) -> None:
    for k, v in src.items():
        w = (target.get(k, 0) - f * v) % p
        if w:
            target[k] = w
        else:
            del target[k]


def lazy_reduce(f: ConeFiltration) -> ReductionResult:
    """Left-to-right reduction adding a column only on a pivot collision."""
    p = f.p
    R: List[Column] = []
    V: List[Column] = []
    pivot_col: Dict[int, int] = {}
    pairs: List[Tuple[int, int]] = []
    for j, col in enumerate(f.D):
        r = dict(col)
        v = {j: 1}
        while r:
            low = max(r)
            k = pivot_col.get(low)
            if k is None:
                pivot_col[low] = j
                pairs.append((low, j))
                break
            factor = (r[low] * pow(R[k][low], -1, p)) % p
            _axpy(r, R[k], factor, p)
            _axpy(v, V[k], factor, p)
        R.append(r)
        V.append(v)
    pairs.sort()
    return ReductionResult(f, R, V, pairs)


def check_decomposition(r: ReductionResult) -> List[str]:
    """Problems with ``R = D V``, reducedness, and the shape of ``V``."""
    p = r.p
    D = r.filtration.D
    problems = []
    lows = {}
    for j, vcol in enumerate(r.V):
        if vcol.get(j, 0) % p == 0:
            problems.append(f"V[{j},{j}] is zero")
        if any(i > j for i in vcol):
            problems.append(f"V column {j} has entries below the diagonal")
        prod: Column = {}
        for i, a in vcol.items():
            for row, b in D[i].items():
                w = (prod.get(row, 0) + a * b) % p
                if w:
                    prod[row] = w
                else:
                    prod.pop(row, None)
        if prod != r.R[j]:
            problems.append(f"R[{j}] != D V[{j}]")
        if r.R[j]:
            low = max(r.R[j])
            if low in lows:
                problems.append(f"columns {lows[low]} and {j} share pivot {low}")
            lows[low] = j
    paired = sorted((low, j) for low, j in ((max(col), j) for j, col in enumerate(r.R) if col))
    if paired != sorted(r.pairs):
        problems.append("pairs do not match the pivots of R")
    return problems


def check_lazy(r: ReductionResult) -> bool:
    """The column structure of ``V`` that a lazy reduction guarantees.

    For ``i < j`` with ``V[i, j] != 0`` we need ``R[i] != 0`` and, when
    ``R[j] != 0``, ``low R[j] < low R[i]``.  A zero column counts as having
    an imaginary pivot below every cell.
    """
    for j, vcol in enumerate(r.V):
        low_j = r.low(j)
        for i in vcol:
            if i == j:
                continue
            low_i = r.low(i)
            if low_i is None:
                return False
            if low_j is not None and low_i < low_j:
                return False
    return True


def perturb(r: ReductionResult, rng: random.Random, steps: int = 20) -> ReductionResult:
    """A different valid ``R = D V`` with the same pairing, generally not lazy.

    Adds earlier columns into later ones only when the pivot of the later
    column is unaffected: either the earlier column of R is zero, or its
    pivot is lower.  Such operations keep R reduced and V unitriangular.
    """
    p = r.p
    R = [dict(col) for col in r.R]
    V = [dict(col) for col in r.V]
    N = len(R)
    if N < 2:
        return ReductionResult(r.filtration, R, V, list(r.pairs))
    dims = r.filtration.dims
    for _ in range(steps * 4):
        if steps <= 0:
            break
        j = rng.randrange(1, N)
        cands = []
        low_j = max(R[j]) if R[j] else None
        for i in range(j):
            if dims[i] != dims[j]:
                continue
            if not R[i]:
                cands.append(i)
            elif low_j is not None and max(R[i]) < low_j:
                cands.append(i)
        if not cands:
            continue
        i = rng.choice(cands)
        f = rng.randrange(1, p) if p > 2 else 1
        _axpy(R[j], R[i], -f, p)
        _axpy(V[j], V[i], -f, p)
        steps -= 1
    return ReductionResult(r.filtration, R, V, list(r.pairs))


# --------------------------------------------------------------------------
# Pair classification


class PairKind(enum.Enum):
    ORDINARY = "ordinary"
    RELATIVE = "relative"
    EXTENDED_OO = "extended-oo"
    EXTENDED_CC = "extended-cc"


@dataclass(frozen=True)
class PairClass:
    kind: PairKind
    sigma: CellId  # base cell of the birth
    tau: CellId  # base cell of the death
    b: int
    d: int
    dim: int  # homological dimension of the bar
    birth: ConeCellId
    death: ConeCellId

    @property
    def degenerate(self) -> bool:
        return self.b == self.d


def classify_pairs(r: ReductionResult) -> List[PairClass]:
    f = r.filtration
    c = f.complex
    out = []
    for bi, di in r.pairs:
        birth, death = f.order[bi], f.order[di]
        s, t = c[birth.base], c[death.base]
        if not birth.coned and not death.coned:
            kind, b, d, dim = PairKind.ORDINARY, s.tmin, t.tmin, s.dim
        elif birth.coned and death.coned:
            kind, b, d, dim = PairKind.RELATIVE, t.tmax, s.tmax, s.dim
        elif not birth.coned and death.coned:
            if s.tmin > t.tmax:
                kind, b, d, dim = PairKind.EXTENDED_OO, t.tmax, s.tmin, s.dim - 1
            else:
                kind, b, d, dim = PairKind.EXTENDED_CC, s.tmin, t.tmax, s.dim
        else:  # pragma: no cover - base cells always precede coned cells
            raise AssertionError("coned birth paired with a base death")
        out.append(PairClass(kind, s.id, t.id, b, d, dim, birth, death))
    return out
