"""Exact arithmetic over Z/pZ, sparse chains, and small linear solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .model import CellId, DeltaComplex, id_key


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = 2

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"field size {self.p} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)


class Chain(Mapping):
    """Sparse formal sum of cells with coefficients in Z/pZ.

    Zero coefficients are never stored, so equality is dict equality.
    """

    __slots__ = ("p", "dim", "_terms")

    def __init__(self, terms=(), p: int = 2, dim: Optional[int] = None):
        self.p = p
        self.dim = dim
        acc: Dict[Hashable, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for cell, coeff in items:
            acc[cell] = (acc.get(cell, 0) + coeff) % p
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def _raw(cls, terms: Dict[Hashable, int], p: int, dim: Optional[int]) -> "Chain":
        ch = cls.__new__(cls)
        ch.p, ch.dim, ch._terms = p, dim, terms
        return ch

    def __getitem__(self, cell) -> int:
        return self._terms.get(cell, 0)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, cell) -> bool:
        return cell in self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Chain):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == {k: v % self.p for k, v in other.items() if v % self.p}
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _combine(self, other: "Chain", scale: int) -> "Chain":
        if isinstance(other, int) and other == 0:
            return self
        p = self.p
        out = dict(self._terms)
        for cell, v in other.items():
            w = (out.get(cell, 0) + scale * v) % p
            if w:
                out[cell] = w
            else:
                out.pop(cell, None)
        dim = self.dim if self.dim is not None else getattr(other, "dim", None)
        return Chain._raw(out, p, dim)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, a: int) -> "Chain":
        a %= self.p
        if not a:
            return Chain._raw({}, self.p, self.dim)
        return Chain._raw({k: (v * a) % self.p for k, v in self._terms.items()}, self.p, self.dim)

    def __mul__(self, a: int):
        return self.scale(a)

    __rmul__ = __mul__

    def support(self) -> List:
        return list(self._terms)

    def signed(self) -> Dict:
        """Coefficients in the symmetric range (-p/2, p/2]."""
        half = self.p // 2
        return {k: (v - self.p if v > half else v) for k, v in self._terms.items()}

    def __repr__(self) -> str:
        body = " + ".join(f"{v}*{k!r}" for k, v in sorted(self._terms.items(), key=lambda kv: id_key(kv[0])))
        return f"Chain({body or '0'}; p={self.p})"


def cell_chain(cell: CellId, c: DeltaComplex, p: int, coeff: int = 1) -> Chain:
    return Chain({cell: coeff}, p, c[cell].dim)


def boundary(z: Chain, c: DeltaComplex) -> Chain:
    """Signed sum of face chains; vertices have zero boundary."""
    p = z.p
    out: Dict[CellId, int] = {}
    dim = None
    for cell, a in z.items():
        rec = c[cell]
        dim = rec.dim - 1
        for face, coeff in rec.boundary:
            out[face] = (out.get(face, 0) + a * coeff) % p
    return Chain._raw({k: v for k, v in out.items() if v}, p, dim)


def restrict(z: Chain, pred: Callable[[CellId], bool]) -> Chain:
    return Chain._raw({k: v for k, v in z.items() if pred(k)}, z.p, z.dim)


# --------------------------------------------------------------------------
# Gaussian elimination over Z/pZ on sparse columns


class ColumnSpace:
    """Incrementally built span of sparse vectors over Z/pZ.

    Vectors are dicts keyed by totally ordered row labels.  Each stored
    basis vector has a distinct pivot (its largest row); ``combo`` records
    how it was formed from the inserted generators, giving witnesses.
    """

    def __init__(self, p: int, key=None):
        self.p = p
        self.key = key or (lambda r: r)
        self._basis: Dict = {}  # pivot row -> (vector, combo)
        self.rank = 0

    def _pivot(self, vec: Dict):
        return max(vec, key=self.key)

    def reduce(self, vec: Mapping, combo: Optional[Dict] = None) -> Tuple[Dict, Dict]:
        p = self.p
        vec = {k: v % p for k, v in vec.items() if v % p}
        combo = dict(combo or {})
        while vec:
            piv = self._pivot(vec)
            hit = self._basis.get(piv)
            if hit is None:
                break
            bvec, bcombo = hit
            f = (vec[piv] * pow(bvec[piv], -1, p)) % p
            for k, v in bvec.items():
                w = (vec.get(k, 0) - f * v) % p
                if w:
                    vec[k] = w
                else:
                    vec.pop(k, None)
            for k, v in bcombo.items():
                w = (combo.get(k, 0) - f * v) % p
                if w:
                    combo[k] = w
                else:
                    combo.pop(k, None)
        return vec, combo

    def add(self, vec: Mapping, label=None) -> bool:
        """Insert a generator; returns True when it was independent."""
        residual, combo = self.reduce(vec, {label: 1} if label is not None else {})
        if not residual:
            return False
        self._basis[self._pivot(residual)] = (residual, combo)
        self.rank += 1
        return True

    def solve(self, target: Mapping) -> Optional[Dict]:
        """Coefficients on generator labels summing to ``target``, or None."""
        residual, combo = self.reduce(target)
        if residual:
            return None
        return {k: (-v) % self.p for k, v in combo.items() if v % self.p}

    def __contains__(self, vec) -> bool:
        return not self.reduce(vec)[0]


def rank_mod_p(columns: Iterable[Mapping], p: int, key=None) -> int:
    space = ColumnSpace(p, key)
    for col in columns:
        space.add(col)
    return space.rank


def solve_boundary(target: Chain, space: Callable[[CellId], bool], c: DeltaComplex) -> Optional[Chain]:
    """A chain ``beta`` supported on ``space`` with boundary ``target``, or None."""
    p = target.p
    if not target:
        return Chain._raw({}, p, None if target.dim is None else target.dim + 1)
    dim = target.dim
    if dim is None:
        dim = c[next(iter(target))].dim
    pos = c.position
    cs = ColumnSpace(p, key=pos)
    for cell in c.cells:
        if cell.dim == dim + 1 and space(cell.id):
            col: Dict[CellId, int] = {}
            for face, coeff in cell.boundary:
                col[face] = (col.get(face, 0) + coeff) % p
            cs.add(col, cell.id)
    sol = cs.solve(dict(target.items()))
    if sol is None:
        return None
    return Chain(sol, p, dim + 1)
