"""Command-line surface: registry dumps, verification scopes, and the
presentation predictor.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error,
3 precision/capacity abort.  Identical configurations (including the seed)
produce byte-identical JSON output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import catalog as cat
from . import classify as cl
from . import defrings as dr
from .errors import PrecisionError, TameBlocksError, UsageError, VerificationError
from .gf import GF
from .witt import DEFAULT_PRECISION

SCHEMA_VERSION = 1
SCOPES = ("cartan", "algebra-dims", "biglist", "tubes", "claim2", "rings", "all")


@dataclass
class RunConfig:
    command: str
    scope: str = ""
    families: list = field(default_factory=list)
    n_min: int = 4
    n_max: int = 4
    c: int = 0
    a: int = 1
    p: list = field(default_factory=lambda: [1])
    precision: int = DEFAULT_PRECISION
    field_ext: int = 1
    fmt: str = "text"
    output: str = ""
    seed: int = 0
    jobs: int = 1
    recipe: str = ""
    dtype: str = ""

    def to_json(self):
        return asdict(self)


def default_precision() -> int:
    env = os.environ.get("TAMEBLOCKS_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"bad TAMEBLOCKS_PRECISION={env!r}")
    return DEFAULT_PRECISION


def parse_n_range(val: str):
    if ".." in val:
        lo, hi = val.split("..", 1)
        return int(lo), int(hi)
    n = int(val)
    return n, n


# ---------------------------------------------------------------------------
# verification tasks
# ---------------------------------------------------------------------------

def _scope_tasks(cfg: RunConfig):
    fams = cfg.families or [f.name for f in cat.list_families()]
    fams = [cat.family(f).name for f in fams]
    tasks = []
    for scope in (SCOPES[:-1] if cfg.scope == "all" else [cfg.scope]):
        if scope == "rings":
            dtypes = [cfg.dtype] if cfg.dtype else ["D", "SD", "Q"]
            for dtype in dtypes:
                for n in range(max(cfg.n_min, 3), cfg.n_max + 1):
                    if dtype == "SD" and n < 4:
                        continue
                    tasks.append(("rings", dtype, n, ""))
            continue
        for name in fams:
            fam = cat.family(name)
            for n in range(max(cfg.n_min, fam.n_min), cfg.n_max + 1):
                if scope in ("cartan", "algebra-dims", "biglist"):
                    tasks.append((scope, name, n, ""))
                elif scope in ("tubes", "claim2"):
                    for rec in fam.mo_recipes(n):
                        tasks.append((scope, name, n, rec.label))
    return sorted(set(tasks))


def _run_task(task, cfg_dict):
    scope, name, n, rec_label = task
    cfg = RunConfig(**cfg_dict)
    fld = GF(cfg.field_ext)
    try:
        if scope == "cartan":
            C = cat.cartan(name, n)
            head = cat.cartan_head(name, n)
            divs = cat.elementary_divisors(C)
            realizable = cat.realizable_at(name, n)
            ok = round(float(np.linalg.det(head))) == 2 ** n
            if realizable:
                ok = ok and divs[-1] == 2 ** n
            return {"check": "cartan", "family": name, "n": n,
                    "cartan": C.tolist(), "det": int(round(float(np.linalg.det(C)))),
                    "det_head": int(round(float(np.linalg.det(head)))),
                    "elementary_divisors": [int(d) for d in divs],
                    "realizable_as_block": bool(realizable),
                    "status": "ok" if ok else "failed"}
        if scope == "algebra-dims":
            alg = cat.algebra(name, n, fld)
            C = cat.cartan(name, n)
            realizable = cat.realizable_at(name, n)
            match = alg.dim == int(C.sum())
            status = "ok" if (match or not realizable) else "failed"
            return {"check": "algebra-dims", "family": name, "n": n,
                    "dim": alg.dim, "cartan_sum": int(C.sum()),
                    "dims_match": bool(match),
                    "realizable_as_block": bool(realizable),
                    "status": status}
        if scope == "biglist":
            return cl.verify_biglist(name, n, fld=fld, seed=cfg.seed)
        if scope == "tubes":
            fam = cat.family(name)
            rec = _find_recipe(fam, n, rec_label)
            return cl.verify_tube(name, n, rec, fld=fld, seed=cfg.seed)
        if scope == "claim2":
            fam = cat.family(name)
            rec = _find_recipe(fam, n, rec_label)
            return cl.verify_claim2(name, n, rec, fld=fld, seed=cfg.seed)
        if scope == "rings":
            dtype = name
            reports = [dr.verify_cn_identity(n, dtype, cfg.precision)
                       if n >= 4 else None,
                       dr.verify_h_iso(n, dtype, cfg.precision)]
            if dtype == "SD" and n >= 4:
                reports.append(dr.verify_theta_iso(n, cfg.precision))
            reports = [r for r in reports if r]
            ok = all(r["status"] == "ok" for r in reports)
            return {"check": "rings", "type": dtype, "n": n,
                    "certificates": reports, "status": "ok" if ok else "failed"}
    except PrecisionError as exc:
        return {"check": scope, "family": name, "n": n, "status": "precision",
                "error": str(exc)}
    raise UsageError(f"unknown scope {scope!r}")


def _find_recipe(fam, n, label):
    for rec in fam.mo_recipes(n):
        if rec.label == label:
            return rec
    raise UsageError(f"{fam.name}: no recipe labelled {label!r} at n={n}")


def select_recipes(fam, n, selector):
    recs = fam.mo_recipes(n)
    if not selector:
        return recs
    sel = selector.strip()
    hits = [r for r in recs if r.label.lower() == sel.lower()]
    if hits:
        return hits
    if sel.lower().startswith("top-t"):
        v = int(sel[5:])
        return [r for r in recs if r.top == (v,)]
    if sel.lower().startswith("socle-t"):
        v = int(sel[7:])
        return [r for r in recs if r.bottom == (v,)]
    return []


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _emit(cfg: RunConfig, payload: dict) -> str:
    if cfg.fmt == "json":
        body = {"schema_version": SCHEMA_VERSION, "config": cfg.to_json()}
        body.update(payload)
        return json.dumps(body, sort_keys=True, indent=2) + "\n"
    return payload["_text"]


def cmd_families(cfg: RunConfig) -> tuple:
    rows = []
    lines = [f"{'name':9} {'classical':16} {'quiver':6} {'type':4} {'n_min':5} "
             f"{'recipes':7} block"]
    for fam in cat.list_families():
        rows.append({
            "name": fam.name, "paper_name": fam.paper_name,
            "quiver": fam.quiver_id, "defect_type": fam.defect_type,
            "n_min": fam.n_min, "recipes": [r.label for r in fam.recipes_b],
            "realizable_as_block": fam.realizable_as_block,
        })
        lines.append(f"{fam.name:9} {fam.paper_name:16} {fam.quiver_id:6} "
                     f"{fam.defect_type:4} {fam.n_min:5} "
                     f"{len(fam.recipes_b):7} {fam.realizable_as_block}")
    return 0, _emit(cfg, {"families": rows, "_text": "\n".join(lines) + "\n"})


def cmd_decomp(cfg: RunConfig) -> tuple:
    name = cfg.families[0]
    n = cfg.n_min
    data = cat.family_to_json(name, n, GF(cfg.field_ext),
                              params={"c": cfg.c, "a": cfg.a, "p": tuple(cfg.p)})
    dm = cat.decomposition_matrix(name, n)
    lines = [f"{data['name']} = {data['paper_name']}   n={n}  type={data['defect_type']}"]
    for row, h in zip(dm.rows, dm.heights):
        lines.append("  " + " ".join(str(x) for x in row) + f"   (height {h})")
    lines.append("cartan: " + str(dm.cartan().tolist()))
    return 0, _emit(cfg, {"family": data, "_text": "\n".join(lines) + "\n"})


def cmd_verify(cfg: RunConfig) -> tuple:
    tasks = _scope_tasks(cfg)
    cfg_dict = cfg.to_json()
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_run_task, tasks,
                                    [cfg_dict] * len(tasks), chunksize=1))
    else:
        reports = [_run_task(t, cfg_dict) for t in tasks]
    key = lambda r: (r.get("check", ""), r.get("family", r.get("type", "")),
                     r.get("n", 0), r.get("recipe", ""))
    reports.sort(key=key)
    n_ok = sum(1 for r in reports if r["status"] == "ok")
    n_prec = sum(1 for r in reports if r["status"] == "precision")
    failed = [r for r in reports if r["status"] not in ("ok", "precision")]
    lines = []
    for r in reports:
        tag = r.get("family", r.get("type", ""))
        extra = f" {r['recipe']}" if r.get("recipe") else ""
        lines.append(f"[{r['status']:>6}] {r['check']:12} {tag:8} n={r.get('n','')}{extra}")
    lines.append(f"{n_ok}/{len(reports)} checks ok")
    if failed:
        lines.append("first failure: " + json.dumps(failed[0], sort_keys=True))
    payload = {"reports": reports,
               "summary": {"total": len(reports), "ok": n_ok,
                           "failed": len(failed), "precision": n_prec},
               "_text": "\n".join(lines) + "\n"}
    code = 0 if n_ok == len(reports) else (3 if n_prec and not failed else 1)
    return code, _emit(cfg, payload)


def cmd_predict(cfg: RunConfig) -> tuple:
    fam = cat.family(cfg.families[0])
    n = cfg.n_min
    if n < fam.n_min:
        raise UsageError(f"{fam.name}: n={n} below n_min={fam.n_min}")
    if n < 4 and not (fam.defect_type == "Q" and n == 3):
        raise UsageError(
            "no maximally ordinary candidates below n = 4; the only height-1 "
            "cases at n = 3 are the order-8 quaternion families")
    recs = select_recipes(fam, n, cfg.recipe)
    if not recs:
        raise UsageError(f"{fam.name}: recipe selector {cfg.recipe!r} matches nothing; "
                         f"available: {[r.label for r in fam.mo_recipes(n)]}")
    out = []
    lines = []
    for rec in recs:
        pres = dr.theorem_presentation(fam, n, rec, N=cfg.precision)
        out.append({"recipe": rec.label, "presentation": pres.to_json()})
        lines.append(f"{fam.name} n={n} recipe {rec.label} "
                     f"(layers {[list(l) for l in rec.layers]}):")
        lines.append("  " + pres.describe())
        lines.append(f"  complete intersection: {pres.complete_intersection}")
        lines.append("  subquotient witness: " + pres.witness["subquotient_chain"])
    return 0, _emit(cfg, {"predictions": out, "_text": "\n".join(lines) + "\n"})


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="tameblocks",
        description="verification toolkit for tame 2-block basic algebras and "
                    "their deformation-ring presentations")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_n=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output", default="")
        p.add_argument("--precision", "-N", type=int, default=None)
        p.add_argument("--field-ext", "-e", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--c", type=int, default=0, help="socle scalar parameter")
        p.add_argument("--a", type=int, default=1, help="socle scalar parameter (nonzero)")
        p.add_argument("--p", type=str, default="1",
                       help="comma-separated coefficients of the polynomial parameter")
        if with_n:
            p.add_argument("--n", type=str, default="4",
                           help="defect exponent or range lo..hi")

    p = sub.add_parser("families", help="list the 24 families")
    common(p, with_n=False)

    p = sub.add_parser("decomp", help="decomposition matrix of one family")
    p.add_argument("--family", required=True)
    common(p)

    p = sub.add_parser("verify", help="run verification certificates")
    p.add_argument("scope", choices=SCOPES)
    p.add_argument("--family", action="append", default=[])
    p.add_argument("--type", choices=("D", "SD", "Q"), default=None,
                   help="restrict to one defect type")
    p.add_argument("--jobs", type=int, default=1)
    common(p)

    p = sub.add_parser("predict", help="predicted deformation-ring presentation")
    p.add_argument("--family", required=True)
    p.add_argument("--recipe", default="",
                   help="recipe label (e.g. U001) or top-Tj / socle-Tj selector")
    common(p)
    return ap


def _config_from_args(args) -> RunConfig:
    n_lo, n_hi = parse_n_range(getattr(args, "n", "4"))
    fams = []
    if getattr(args, "family", None):
        fams = args.family if isinstance(args.family, list) else [args.family]
    if getattr(args, "type", None):
        pool = fams or [f.name for f in cat.list_families()]
        fams = [f for f in pool if cat.family(f).defect_type == args.type]
        if not fams:
            raise UsageError(f"no selected family has defect type {args.type}")
    return RunConfig(
        command=args.command,
        scope=getattr(args, "scope", ""),
        families=fams,
        n_min=n_lo, n_max=n_hi,
        c=args.c, a=args.a,
        p=[int(x) for x in str(args.p).split(",") if x != ""],
        precision=args.precision if args.precision else default_precision(),
        field_ext=args.field_ext,
        fmt=args.format, output=args.output,
        seed=args.seed, jobs=getattr(args, "jobs", 1),
        recipe=getattr(args, "recipe", ""),
        dtype=getattr(args, "type", None) or "",
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        handler = {"families": cmd_families, "decomp": cmd_decomp,
                   "verify": cmd_verify, "predict": cmd_predict}[args.command]
        code, text = handler(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PrecisionError as exc:
        print(f"precision error: {exc}; retry with a larger -N", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except TameBlocksError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
