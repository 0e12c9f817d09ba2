"""Enumerate the (A, B) pairs of a family over one F_q, check the family's
conditions on each, optionally confirm by brute force, and compare the
count of passing pairs with the family's lower bound."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from pplab.ff import FFElement, FieldCtx, make_field
from pplab.families.trinomials import (
    TrinomialSpec,
    check_conditions,
    cubic_f4,
    require_congruence,
)
from pplab.upoly import DEFAULT_SEED, roots

from .bounds import LowerBound, lower_bound
from .bruteforce import DEFAULT_BUDGET, is_permutation_bruteforce


@dataclass
class CensusRow:
    A: FFElement
    B: FFElement
    passes: bool
    reasons: list
    bruteforce_pp: Optional[bool] = None
    split: Optional[bool] = None      # f4 only: F(y) has three roots in F_q


@dataclass
class CensusReport:
    family: str
    p: int
    h: int
    q: int
    pairs_on_curve: int
    pairs_passing: int
    pairs_bruteforce_pp: Optional[int]
    bruteforce_complete: bool
    bound: Optional[LowerBound]
    bound_satisfied: bool
    anomalies: list            # (A, B) with passes and not PP
    uncovered: list            # (A, B) PP without passing (informational)
    per_B: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    header: str = ""
    seed: int = DEFAULT_SEED

    @property
    def bound_value(self):
        return None if self.bound is None else self.bound.value.token()


def default_workers():
    try:
        return max(1, int(os.environ.get("PPLAB_WORKERS", "1")))
    except ValueError:
        return 1


def _cube_roots_table(F):
    table = {}
    for i in range(F.order):
        c = F.decode(i)
        table.setdefault(F.pow(c, 3), []).append(c)
    return table


def candidate_pairs(family: str, ctx: FieldCtx):
    """All (A, B) on the family's relation in canonical order: B first, then A."""
    F = ctx.base
    out = []
    if family in ("f1", "f2"):
        cubes = _cube_roots_table(F)
        for i in range(F.order):
            B = F.decode(i)
            t = F.sub(F.sub(B, F.mul(B, B)), F.one)   # -B^2 + B - 1
            for A in sorted(cubes.get(t, []), key=F.encode):
                out.append((FFElement(F, A), FFElement(F, B)))
    else:
        for i in range(F.order):
            B = F.decode(i)
            if F.add(F.add(F.mul(B, B), B), F.one) == F.zero:
                for j in range(F.order):
                    out.append((FFElement(F, F.decode(j)), FFElement(F, B)))
    return out


def _check_chunk(args):
    family, p, h, pairs, bruteforce, budget, seed = args
    ctx = make_field(p, h)
    F = ctx.base
    rows = []
    for a_code, b_code in pairs:
        A = FFElement(F, F.decode(a_code))
        B = FFElement(F, F.decode(b_code))
        spec = TrinomialSpec(family, A, B, ctx)
        rep = check_conditions(spec, seed)
        split = None
        if family == "f4" and not B.is_zero():
            split = len(roots(cubic_f4(A, B), seed)) == 3
        pp = None
        if bruteforce:
            pp = is_permutation_bruteforce(spec, budget=budget)
        rows.append((a_code, b_code, rep.passes, rep.reasons, pp, split))
    return rows


def run_census(family: str, p: int, h: int = 1, bruteforce: bool = False, workers: Optional[int] = None,
               budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED) -> CensusReport:
    """Census of one family over F_{p^h}.

    ``bruteforce`` runs the exhaustive permutation test on every pair; when
    q^3 is beyond the budget nothing is brute-forced and the report is
    marked incomplete.
    """
    ctx = make_field(p, h)
    require_congruence(family, ctx)
    q = ctx.q
    F = ctx.base
    pairs = [(A.encode(), B.encode()) for A, B in candidate_pairs(family, ctx)]
    brute_ok = bruteforce and q ** 3 <= budget
    workers = workers or default_workers()
    n_chunks = max(1, min(len(pairs), workers * 4))
    chunks = [pairs[i::n_chunks] for i in range(n_chunks)] if pairs else []
    tasks = [(family, p, h, ch, brute_ok, budget, seed) for ch in chunks]
    results = []
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_check_chunk, tasks):
                results.extend(part)
    else:
        for t in tasks:
            results.extend(_check_chunk(t))
    results.sort(key=lambda r: (r[1], r[0]))
    rows = [CensusRow(FFElement(F, F.decode(a)), FFElement(F, F.decode(b)), ok, reasons, pp, split)
            for a, b, ok, reasons, pp, split in results]
    passing = [r for r in rows if r.passes]
    anomalies = [(r.A, r.B) for r in rows if r.passes and r.bruteforce_pp is False]
    uncovered = [(r.A, r.B) for r in rows if not r.passes and r.bruteforce_pp]
    bound = None if family == "f3" else lower_bound(family, q)
    per_B = {}
    if family in ("f3", "f4"):
        for r in rows:
            d = per_B.setdefault(r.B.encode(), {"B": r.B, "passing": 0, "split_subcount": 0})
            if r.passes:
                d["passing"] += 1
                if r.split:
                    d["split_subcount"] += 1
    if bound is None:
        satisfied = True
    elif family == "f4":
        satisfied = all(bound.satisfied_by(d["passing"]) for d in per_B.values())
    else:
        satisfied = bound.satisfied_by(len(passing))
    return CensusReport(
        family=family, p=p, h=h, q=q,
        pairs_on_curve=len(rows),
        pairs_passing=len(passing),
        pairs_bruteforce_pp=sum(1 for r in rows if r.bruteforce_pp) if brute_ok else None,
        bruteforce_complete=brute_ok,
        bound=bound,
        bound_satisfied=satisfied,
        anomalies=anomalies,
        uncovered=uncovered,
        per_B=per_B,
        rows=rows,
        header=ctx.header(),
        seed=seed,
    )
