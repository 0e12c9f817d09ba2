"""Command-line entry point: ``pplab <command> [flags]``.

Every artifact carries the seed, a hash of the configuration and the
library version.  Nothing time-dependent is written, so a rerun with the
same configuration reproduces the output byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from pplab import __version__
from pplab.census import DEFAULT_BUDGET, BudgetExceeded, curve_point_count, default_workers, run_census
from pplab.census.curves import PROPS
from pplab.ff import make_field
from pplab.families import (
    BRANCHES,
    FAMILIES,
    CongruenceError,
    PipelineError,
    TrinomialSpec,
    check_conditions,
    identity_report,
    reciprocal_identity,
    run_resultant_pipeline,
)
from pplab.census.bruteforce import is_permutation_bruteforce
from pplab.upoly import DEFAULT_SEED

COMMANDS = ("verify", "census", "curves", "identities", "pipeline", "field-info")
CSV_COLUMNS = ["family", "p", "h", "q", "A", "B", "passes", "bruteforce_pp"]


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    p: Optional[int] = None
    h: int = 1
    family: Optional[str] = None
    branch: str = "a_nonzero"
    A: Optional[str] = None
    B: Optional[str] = None
    prop: Optional[str] = None
    all: bool = False
    bruteforce: bool = False
    probabilistic: bool = False
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    seed: int = DEFAULT_SEED
    out: Optional[str] = None
    format: str = "json"

    def validate(self):
        if self.budget <= 0:
            raise UsageError("--budget must be positive")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.format not in ("csv", "json"):
            raise UsageError("--format is csv or json")

    def config_hash(self):
        # worker count and output path do not change the artifact
        d = asdict(self)
        d.pop("workers")
        d.pop("out")
        blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def stamp(self):
        return {"seed": self.seed, "config_hash": self.config_hash(), "version": __version__}


def digits_token(el) -> str:
    return ";".join(str(d) for d in el.digits())


def parse_digits(text, ctx):
    """``3`` or ``3;1`` (base-p digits, low degree first) -> F_q element."""
    if text is None:
        raise UsageError("missing coefficient")
    parts = [t for t in text.replace(",", ";").split(";") if t.strip() != ""]
    try:
        ds = [int(t) for t in parts]
    except ValueError:
        raise UsageError(f"malformed digits {text!r}") from None
    if not ds or len(ds) > ctx.h or any(not 0 <= d < ctx.p for d in ds):
        raise UsageError(f"malformed digits {text!r}: need 1..{ctx.h} values in [0, {ctx.p})")
    ds = ds + [0] * (ctx.h - len(ds))
    return ctx.elem(ds)


def _need(cfg, *names):
    for n in names:
        if getattr(cfg, n) is None:
            raise UsageError(f"--{n} is required for {cfg.command}")


def _family(cfg, allowed=FAMILIES):
    _need(cfg, "family")
    if cfg.family not in allowed:
        raise UsageError(f"--family must be one of {', '.join(allowed)}")
    return cfg.family


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# commands -------------------------------------------------------------------

def cmd_verify(cfg):
    _need(cfg, "p")
    family = _family(cfg)
    ctx = make_field(cfg.p, cfg.h)
    A, B = parse_digits(cfg.A, ctx), parse_digits(cfg.B, ctx)
    spec = TrinomialSpec(family, A, B, ctx)
    rep = check_conditions(spec, cfg.seed)
    brute = "skipped"
    if cfg.bruteforce:
        try:
            brute = "PP" if is_permutation_bruteforce(spec, budget=cfg.budget) else "not-PP"
        except BudgetExceeded:
            brute = "skipped"
    anomaly = rep.passes and brute == "not-PP"
    out = {
        "command": "verify", "family": family, "header": ctx.header(), "q": ctx.q,
        "A": digits_token(A), "B": digits_token(B),
        "conditions": {"pass": rep.passes, "reasons": list(rep.reasons)},
        "bruteforce": brute, "anomaly": anomaly, **cfg.stamp(),
    }
    return _json(out), 1 if anomaly else 0


def census_csv(rep, cfg) -> str:
    buf = io.StringIO()
    buf.write(f"# {rep.header} seed={cfg.seed} config_hash={cfg.config_hash()} version={__version__}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rep.rows:
        pp = "" if r.bruteforce_pp is None else str(r.bruteforce_pp).lower()
        w.writerow([rep.family, rep.p, rep.h, rep.q, digits_token(r.A), digits_token(r.B),
                    str(r.passes).lower(), pp])
    return buf.getvalue()


def census_summary(rep, cfg) -> dict:
    pair = lambda ab: [digits_token(ab[0]), digits_token(ab[1])]
    return {
        "command": "census", "family": rep.family, "p": rep.p, "h": rep.h, "q": rep.q,
        "header": rep.header,
        "pairs_on_curve": rep.pairs_on_curve,
        "pairs_passing": rep.pairs_passing,
        "pairs_bruteforce_pp": rep.pairs_bruteforce_pp,
        "bruteforce_complete": rep.bruteforce_complete,
        "bound": None if rep.bound is None else rep.bound.token(),
        "bound_value": rep.bound_value,
        "bound_min_count": None if rep.bound is None else rep.bound.min_count(),
        "bound_satisfied": rep.bound_satisfied,
        "anomalies": [pair(ab) for ab in rep.anomalies],
        "uncovered": [pair(ab) for ab in rep.uncovered],
        "per_B": {digits_token(d["B"]): {"passing": d["passing"], "split_subcount": d["split_subcount"]}
                  for d in rep.per_B.values()},
        **cfg.stamp(),
    }


def cmd_census(cfg):
    _need(cfg, "p")
    family = _family(cfg)
    rep = run_census(family, cfg.p, cfg.h, bruteforce=cfg.bruteforce, workers=cfg.workers,
                     budget=cfg.budget, seed=cfg.seed)
    text = census_csv(rep, cfg) if cfg.format == "csv" else _json(census_summary(rep, cfg))
    return text, 1 if rep.anomalies else 0


def cmd_curves(cfg):
    _need(cfg, "p")
    q = cfg.p ** cfg.h
    if cfg.prop:
        if cfg.prop not in PROPS:
            raise UsageError(f"--prop must be one of {', '.join(PROPS)}")
        props = [cfg.prop]
    else:
        props = ["P1"] + (["P2", "P3"] if q % 3 == 1 else [])
    results = []
    bad = False
    for prop in props:
        r = curve_point_count(prop, cfg.p, cfg.h)
        bad = bad or not r.within_window
        entry = {
            "prop": prop, "q": r.q, "solution_count": r.solution_count,
            "lower_bound": r.lower_bound.value.token(),
            "lower_bound_min_count": r.lower_bound.min_count(),
            "hasse_weil_upper": r.hasse_weil_upper,
            "genus": r.genus, "within_window": r.within_window,
        }
        for k, v in r.details.items():
            if k == "degenerate_fibers":
                v = [[digits_token(x), digits_token(y)] for x, y in v]
            elif hasattr(v, "digits"):
                v = digits_token(v)
            entry[k] = v
        results.append(entry)
    out = {"command": "curves", "p": cfg.p, "h": cfg.h, "q": q, "counts": results, **cfg.stamp()}
    return _json(out), 1 if bad else 0


def cmd_identities(cfg):
    if cfg.all or cfg.family is None:
        fams = ["f1", "f2"]
    else:
        fams = [_family(cfg, ("f1", "f2"))]
    entries = []
    ok = True
    for fam in fams:
        r = identity_report(fam, probabilistic=cfg.probabilistic, seed=cfg.seed)
        ok = ok and r.holds
        entries.append({"family": fam, "holds": r.holds, "sign": r.sign, "mode": r.mode})
    if cfg.all or cfg.family is None:
        rec = reciprocal_identity()
        ok = ok and rec
        entries.append({"family": "reciprocal", "holds": rec, "sign": 1, "mode": "full"})
    out = {"command": "identities", "identities": entries, **cfg.stamp()}
    return _json(out), 0 if ok else 1


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if hasattr(v, "to_text"):
        return v.to_text()
    return str(v)


def cmd_pipeline(cfg):
    family = _family(cfg)
    if cfg.branch not in BRANCHES:
        raise UsageError(f"--branch must be one of {', '.join(BRANCHES)}")
    rep = run_resultant_pipeline(family, cfg.branch, probabilistic=cfg.probabilistic, seed=cfg.seed)
    golden = rep.reduced_resultant.to_text() + "\n"
    out = {
        "command": "pipeline", "family": family, "branch": cfg.branch, "mode": rep.mode,
        "structure_ok": rep.structure_ok,
        "certified_factors": [f.to_text() for f in rep.certified_factors],
        "details": _jsonable(rep.details),
        "golden_file": rep.golden_name(),
        **cfg.stamp(),
    }
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        with open(os.path.join(cfg.out, rep.golden_name()), "w") as fh:
            fh.write(golden)
    return _json(out), 0 if rep.structure_ok else 1


def cmd_field_info(cfg):
    _need(cfg, "p")
    ctx = make_field(cfg.p, cfg.h)
    q = ctx.q
    out = {
        "command": "field-info", "header": ctx.header(), "p": ctx.p, "h": ctx.h, "q": q,
        "q_mod_3": q % 3,
        "families": [f for f in FAMILIES if f in ("f1", "f2") or q % 3 == 1],
        "mu_order": q * q + q + 1,
        **cfg.stamp(),
    }
    return _json(out), 0


HANDLERS = {
    "verify": cmd_verify, "census": cmd_census, "curves": cmd_curves,
    "identities": cmd_identities, "pipeline": cmd_pipeline, "field-info": cmd_field_info,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="pplab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"pplab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int)
        sp.add_argument("--h", type=int, default=1)
        sp.add_argument("--family")
        sp.add_argument("--branch", default="a_nonzero")
        sp.add_argument("--A")
        sp.add_argument("--B")
        sp.add_argument("--prop", help="P1, P2 or P3 (curves only)")
        sp.add_argument("--all", action="store_true", help="every identity (identities only)")
        sp.add_argument("--bruteforce", action="store_true")
        sp.add_argument("--probabilistic", action="store_true")
        sp.add_argument("--workers", type=int, default=None)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--out")
        sp.add_argument("--format", choices=("csv", "json"),
                        default="csv" if name == "census" else "json")
    return ap


def config_from_args(ns) -> RunConfig:
    d = vars(ns).copy()
    if d.get("workers") is None:
        d["workers"] = default_workers()
    cfg = RunConfig(**d)
    cfg.validate()
    return cfg


def run(argv=None):
    """Parse, dispatch, and return (config, text, exit status)."""
    cfg = config_from_args(build_parser().parse_args(argv))
    text, status = HANDLERS[cfg.command](cfg)
    return cfg, text, status


def main(argv=None) -> int:
    try:
        cfg, text, status = run(argv)
    except (UsageError, CongruenceError, BudgetExceeded, PipelineError, ValueError) as e:
        print(f"pplab: error: {e}", file=sys.stderr)
        return 2
    # pipeline treats --out as the directory for golden candidates
    if cfg.out and cfg.command != "pipeline":
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
