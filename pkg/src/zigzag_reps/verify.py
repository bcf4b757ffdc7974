"""Brute-force certificates for barcodes and their representatives.

Homology here is ordinary (unreduced): the cone with its apex dropped
computes ``H(K_{<=i})`` and ``H(K, K_{>=j})`` without augmentation, so a
single vertex carries a 0-dimensional bar.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence

from .algebra import Chain, ColumnSpace, boundary
from .apex import Mode, apex_failures, apex_rep, lazy_shortcut_failures
from .lift import boundary_contract_holds, lift_cycle, lift_cycle_easy, membership_violations
from .model import DeltaComplex, ZigzagError, structural, validate
from .reduction import check_decomposition, check_lazy, perturb
from .zigzag import ZigzagBarcode, zigzag_barcode


class PreconditionError(ValueError):
    pass


class Oracle:
    """Per-space boundary spans of one complex, cached by the space's cells."""

    def __init__(self, c: DeltaComplex, p: int = 2):
        self.c = c
        self.p = p
        self._spaces: Dict[int, FrozenSet] = {}
        self._bspace: Dict[tuple, ColumnSpace] = {}

    def space(self, i: int) -> FrozenSet:
        if i not in self._spaces:
            self._spaces[i] = frozenset(self.c.space(i))
        return self._spaces[i]

    def boundaries(self, i: int, q: int) -> ColumnSpace:
        """Span of the boundaries of the (q+1)-cells of ``K_i``."""
        members = self.space(i)
        key = (members, q)
        cs = self._bspace.get(key)
        if cs is None:
            c, p = self.c, self.p
            cs = ColumnSpace(p, key=c.position)
            for cid in sorted(members, key=c.position):
                rec = c[cid]
                if rec.dim == q + 1:
                    col: Dict = {}
                    for face, coeff in rec.boundary:
                        col[face] = (col.get(face, 0) + coeff) % p
                    cs.add(col, cid)
            self._bspace[key] = cs
        return cs

    def betti(self, i: int, q: int) -> int:
        members = self.space(i)
        n_q = sum(1 for cid in members if self.c[cid].dim == q)
        if n_q == 0:
            return 0
        rank_q = self.boundaries(i, q - 1).rank if q > 0 else 0
        return n_q - rank_q - self.boundaries(i, q).rank

    def check_cycle(self, z: Chain, i: int, q: Optional[int] = None) -> List[str]:
        members = self.space(i)
        problems = []
        outside = [cid for cid in z if cid not in members]
        if outside:
            problems.append(f"cells {outside!r} are not in K_{i}")
        if q is not None and any(self.c[cid].dim != q for cid in z if cid in self.c):
            problems.append(f"chain is not {q}-dimensional")
        if not outside and boundary(z, self.c):
            problems.append(f"chain is not a cycle in K_{i}")
        return problems

    def is_boundary(self, z: Chain, i: int) -> bool:
        if not z:
            return True
        q = self.c[next(iter(z))].dim
        return dict(z.items()) in self.boundaries(i, q)

    def independent(self, zs: Sequence[Chain], i: int, q: int) -> bool:
        base = self.boundaries(i, q)
        cs = ColumnSpace(self.p, key=self.c.position)
        for vec, _ in base._basis.values():
            cs.add(vec)
        return all(cs.add(dict(z.items())) for z in zs)


def betti(c: DeltaComplex, i: int, q: int, p: int = 2, reduced: bool = False) -> int:
    """``dim H_q(K_i)`` over Z/pZ; ``reduced`` subtracts the augmentation class."""
    beta = Oracle(c, p).betti(i, q)
    if reduced and q == 0 and c.space(i):
        beta -= 1
    return beta


def class_is_nonzero(z: Chain, i: int, c: DeltaComplex, oracle: Optional[Oracle] = None) -> bool:
    oracle = oracle or Oracle(c, z.p)
    problems = oracle.check_cycle(z, i)
    if problems:
        raise PreconditionError("; ".join(problems))
    return not oracle.is_boundary(z, i)


def compatible(z_a: Chain, z_b: Chain, i_odd: int, c: DeltaComplex, oracle: Optional[Oracle] = None) -> bool:
    """Whether ``z_a`` and ``z_b`` are homologous in the odd space ``K_{i_odd}``."""
    if i_odd % 2 != 1:
        raise PreconditionError(f"{i_odd} is not an odd index")
    oracle = oracle or Oracle(c, z_a.p)
    for z in (z_a, z_b):
        problems = oracle.check_cycle(z, i_odd)
        if problems:
            raise PreconditionError("; ".join(problems))
    return oracle.is_boundary(z_a - z_b, i_odd)


def pointwise_basis_check(
    c: DeltaComplex, i: int, q: int, slices: Sequence[Chain], p: int = 2, oracle: Optional[Oracle] = None
) -> bool:
    """The slices form a basis of ``H_q(K_i)``."""
    oracle = oracle or Oracle(c, p)
    if any(oracle.check_cycle(z, i, q) for z in slices):
        return False
    if len(slices) != oracle.betti(i, q):
        return False
    return oracle.independent(slices, i, q)


# --------------------------------------------------------------------------
# Full report


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **payload) -> bool:
        if ok:
            self.passed += 1
        elif len(self.failures) < 20:
            self.failures.append(payload)
        else:
            self.failures.append({"truncated": True}) if not self.failures[-1].get("truncated") else None
        return ok


@dataclass
class VerificationReport:
    checks: Dict[str, CheckResult] = field(default_factory=dict)
    barcode: Optional[ZigzagBarcode] = None

    def __getitem__(self, name: str) -> CheckResult:
        if name not in self.checks:
            self.checks[name] = CheckResult(name)
        return self.checks[name]

    @property
    def ok(self) -> bool:
        return all(ch.ok for ch in self.checks.values())

    def summary(self) -> List[str]:
        return [
            f"{'PASS' if ch.ok else 'FAIL'} {name}: {ch.passed} ok, {len(ch.failures)} failed"
            for name, ch in self.checks.items()
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "checks": {
                name: {"ok": ch.ok, "passed": ch.passed, "failures": [_jsonable(f) for f in ch.failures]}
                for name, ch in self.checks.items()
            },
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return repr(x)


def full_verify(
    c: DeltaComplex,
    p: int = 2,
    mode: Mode = Mode.LAZY,
    general: bool = True,
    seed: int = 0,
) -> VerificationReport:
    """Run the pipeline on ``c`` and every certificate check on its output."""
    report = VerificationReport()
    bad = structural(validate(c, p))
    report["validate"].record(not bad, violations=[str(v) for v in bad])
    if bad:
        return report

    zz = zigzag_barcode(c, p, mode)
    report.barcode = zz
    c = zz.complex
    r = zz.reduction
    oracle = Oracle(c, p)

    problems = check_decomposition(r)
    report["decomposition"].record(not problems, problems=problems)
    if Mode(mode) is Mode.LAZY:
        report["lazy-law"].record(check_lazy(r))
    report["perfect-matching"].record(2 * len(r.pairs) == len(r.filtration))

    for bar in zz.bars:
        rep = zz.reps[bar.id]
        args = rep.args
        if bar.pair.kind.name == "EXTENDED_CC":
            off = [cell for cell in args.w_init if not c[cell].tmin <= bar.b <= c[cell].tmax]
            report["w-init-support"].record(not off, bar=bar.id, cells=off)
        if Mode(mode) is Mode.LAZY:
            lz = lazy_shortcut_failures(bar.pair, r)
            report["lazy-shortcut"].record(not lz, bar=bar.id, problems=lz)
        fast = lift_cycle(args, c)
        easy = lift_cycle_easy(args, c)
        report["lift-equivalence"].record(fast == easy, bar=bar.id, fast=fast, easy=easy)
        report["boundary-contract"].record(boundary_contract_holds(args, fast, c), bar=bar.id)
        off = membership_violations(fast, c)
        report["prism-membership"].record(not off, bar=bar.id, cells=off)
        fails = apex_failures(rep, c)
        report["apex"].record(not fails, bar=bar.id, problems=fails)

        reps = zz.representatives(bar.id)
        for i, z in reps.items():
            probs = oracle.check_cycle(z, i, bar.dim)
            report["slice-cycle"].record(not probs, bar=bar.id, index=i, chain=z, problems=probs)
            if not probs:
                report["slice-nonzero"].record(not oracle.is_boundary(z, i), bar=bar.id, index=i, chain=z)
        lo, hi = bar.span
        for i in range(lo, hi):
            odd = i if i % 2 else i + 1
            za, zb = reps[i], reps[i + 1]
            ok = not oracle.check_cycle(za, odd) and not oracle.check_cycle(zb, odd) and oracle.is_boundary(za - zb, odd)
            report["compatibility"].record(ok, bar=bar.id, index=i)
        # an open end must die under the map into the neighbouring odd space
        if lo % 2 == 0 and lo - 1 >= 0:
            report["endpoint"].record(oracle.is_boundary(reps[lo], lo - 1), bar=bar.id, index=lo, side="lo")
        if hi % 2 == 0 and hi + 1 <= c.n:
            report["endpoint"].record(oracle.is_boundary(reps[hi], hi + 1), bar=bar.id, index=hi, side="hi")

    all_reps = {bar.id: zz.representatives(bar.id) for bar in zz.bars}
    top = max(c.max_dim, 0)
    for i in range(c.n + 1):
        for q in range(top + 1):
            alive = [bar for bar in zz.bars if bar.dim == q and i in bar]
            slices = [all_reps[bar.id][i] for bar in alive]
            beta = oracle.betti(i, q)
            ok = len(alive) == beta and pointwise_basis_check(c, i, q, slices, p, oracle)
            report["pointwise-basis"].record(ok, index=i, dim=q, bars=[b.id for b in alive], betti=beta)

    if general:
        rng = random.Random(seed)
        pr = perturb(r, rng)
        problems = check_decomposition(pr)
        report["general-decomposition"].record(not problems, problems=problems)
        for bar in zz.bars:
            rep = apex_rep(bar.pair, pr, Mode.GENERAL)
            fails = apex_failures(rep, c)
            report["general-apex"].record(not fails, bar=bar.id, problems=fails)
            report["general-boundary-contract"].record(boundary_contract_holds(rep.args, rep.cycle, c), bar=bar.id)
    return report
