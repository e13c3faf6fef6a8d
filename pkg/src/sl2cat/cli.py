"""Command-line driver for the verification suites.

Each suite expands into a list of tasks ``(suite, check, params)``.  Tasks are
run by :func:`run_task`, a module-level function so that a process pool can
pickle it, and the records are reassembled in a fixed order.  The JSON report
depends only on the configuration: timings are omitted unless requested.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .errors import InvalidArgument, ResourceLimit
from .linalg import Field, parse_field

log = logging.getLogger("sl2cat")

SUITES = (
    "qidentities",
    "nilhecke-relations",
    "basis",
    "differential",
    "theta-cohomology",
    "coho-structure",
    "rickard-gt",
    "rickard-quasi-iso",
    "gauss-props",
    "polsym",
    "hom-oracle",
)

CACHE_SAMPLE_RATE = 0.05


@dataclass
class RunConfig:
    suites: List[str]
    n_max: int = 3
    cutoff: int = 12
    field: str = "rational"
    seed: int = 0
    jobs: int = 1
    out: Optional[str] = None
    cache_dir: Optional[str] = None
    verify_cache: bool = False
    csv_path: Optional[str] = None
    timings: bool = False

    def validate(self) -> Field:
        if self.cutoff < 0:
            raise InvalidArgument("cutoff must be >= 0")
        if self.n_max < 0:
            raise InvalidArgument("n-max must be >= 0")
        if self.jobs < 1:
            raise InvalidArgument("jobs must be >= 1")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise InvalidArgument(f"unknown suites: {', '.join(unknown)}")
        fld = parse_field(self.field)
        if fld.p is not None and fld.p <= self.n_max:
            raise InvalidArgument(f"prime {fld.p} must exceed n-max {self.n_max}")
        return fld

    def echo(self) -> Dict[str, object]:
        return {"suites": sorted(set(self.suites)), "n_max": self.n_max, "cutoff": self.cutoff,
                "field": parse_field(self.field).name, "seed": self.seed}


# ---------------------------------------------------------------------------
# checks: each returns (ok, expected, got) with JSON-friendly payloads

Outcome = Tuple[bool, object, object]


def _all_true(d: Dict[str, object], keys: Optional[Sequence[str]] = None) -> bool:
    keys = keys if keys is not None else [k for k, v in d.items() if isinstance(v, bool)]
    return all(bool(d[k]) for k in keys)


def _c_hilbertsym(p, cutoff, fld) -> Outcome:
    from .qcalc import braced_fact, poincare_symmetric_group
    got, want = poincare_symmetric_group(p["n"]), braced_fact(p["n"])
    return got == want, want.to_text(), got.to_text()


def _c_qbinomial(p, cutoff, fld) -> Outcome:
    from .qcalc import subset_qsum, subset_qsum_closed_form
    g = p["ground_size"]
    bad = [r for r in range(g + 1) if subset_qsum(g, r) != subset_qsum_closed_form(g, r)]
    return not bad, [], bad


def _c_decomposition(p, cutoff, fld) -> Outcome:
    from .qcalc import check_decomposition_identities
    ok = check_decomposition_identities(p["a"], p["b"], p["lam"])
    return ok, True, ok


def _c_relations(p, cutoff, fld) -> Outcome:
    from .nilhecke import check_relations
    got = check_relations(p["n"])
    return _all_true(got), "all relations hold", got


def _c_faithfulness(p, cutoff, fld) -> Outcome:
    from .nilhecke import check_faithfulness
    got = check_faithfulness(p["n"], seed=p["seed"])
    return _all_true(got), "module and separating", got


def _c_idempotents(p, cutoff, fld) -> Outcome:
    from .nilhecke import check_idempotents
    got = check_idempotents(p["n"])
    return _all_true(got), "idempotent and orthogonal", got


def _c_grdim_hn(p, cutoff, fld) -> Outcome:
    from .nilhecke import enumerate_grdim_Hn
    from .qcalc import LaurentSeries, grdim_Hn
    got = LaurentSeries(enumerate_grdim_Hn(p["n"], cutoff), cutoff)
    want = grdim_Hn(p["n"], cutoff)
    return got == want, want.to_text(), got.to_text()


def _c_basis(p, cutoff, fld) -> Outcome:
    from .simple2rep import BimoduleTerm, check_absorption_on_basis, check_basis
    term = BimoduleTerm(p["n"], p["k"], p["l"], p["m"])
    got = check_basis(term, cutoff, fld)
    got["absorbs"] = check_absorption_on_basis(term)
    ok = got["independent"] and got["count_matches"] and got["absorbs"]
    return ok, got.pop("closed_form"), got


def _c_worked_example(p, cutoff, fld) -> Outcome:
    from .simple2rep import worked_example
    scalars = [str(c) for c, _, _ in worked_example()]
    return all(c == "1" for c in scalars), ["1", "1", "1"], scalars


def _c_prop_diff(p, cutoff, fld) -> Outcome:
    from .simple2rep import check_prop_diff
    got = check_prop_diff(p["n"], p["l"], p["k"], p["m"])
    key = "verbatim" if p.get("form") == "verbatim" else "signed"
    return got[key], f"{key} form holds", got


def _c_phi(p, cutoff, fld) -> Outcome:
    from .simple2rep import check_phi
    got = check_phi(p["n"])
    return _all_true(got), "injective with the stated image", got


def _c_kerim(p, cutoff, fld) -> Outcome:
    from .simple2rep import check_kerim
    got = check_kerim(p["n"], p["l"], p["k"], p["m"], cutoff, fld)
    return _all_true(got), {"kernel": True, "image": True}, got


def _c_dd(p, cutoff, fld) -> Outcome:
    from .simple2rep import check_dd, check_linearity
    got = {"dd_zero": check_dd(p["n"], p["l"], p["k"], p["m"]),
           "linear": check_linearity(p["n"], p["l"], p["k"], p["m"])}
    return _all_true(got), {"dd_zero": True, "linear": True}, got


def _c_step1(p, cutoff, fld) -> Outcome:
    from .simple2rep import check_step1
    ok = check_step1(p["n"], p["l"], p["m"], cutoff, fld)
    return ok, True, ok


def _c_theta_cohomology(p, cutoff, fld) -> Outcome:
    from .simple2rep import check_theta_cohomology
    got = check_theta_cohomology(p["n"], p["k"], cutoff, fld)
    ok = got["concentrated"] and got["top_matches"]
    return ok, got.pop("expected"), got


def _c_top_structure(p, cutoff, fld) -> Outcome:
    from .simple2rep import top_cohomology_structure
    got = top_cohomology_structure(p["n"], p["k"], cutoff, fld)
    ok = _all_true(got)
    return ok, got.pop("expected"), got


def _c_invertible(p, cutoff, fld) -> Outcome:
    from .rickard import check_theta_invertible_evidence
    got = check_theta_invertible_evidence(p["n"], p["k"], cutoff, fld)
    return got["status"] == "pass", "pass", got


def _c_gt_degree(p, cutoff, fld) -> Outcome:
    from .nilhecke import build_G, build_T
    k, l = p["k"], p["l"]
    got = [build_G(k, l).degree(), build_T(k, l).degree()]
    want = [2 * (l - k), 2 * (k - l)]
    return got == want, want, got


def _c_tg_gt(p, cutoff, fld) -> Outcome:
    from .nilhecke import check_absorption, check_TG_GT
    got = {"absorption": check_absorption(p["k"], p["l"]), "TG_GT": check_TG_GT(p["k"], p["l"])}
    return _all_true(got), {"absorption": True, "TG_GT": True}, got


def _c_morphcomp(p, cutoff, fld) -> Outcome:
    from .nilhecke import check_morphcomp
    got = check_morphcomp(p["k"], p["l"])
    return _all_true(got), "all identities hold", got


def _c_surjinj(p, cutoff, fld) -> Outcome:
    from .rickard import check_surjinj
    got = check_surjinj(p["n"], p["lam"], cutoff, fld)
    key = p.get("ranges", "corrected")
    return got[key], f"{key} ranges hold", got


def _c_descriptors(p, cutoff, fld) -> Outcome:
    from .rickard import check_descriptors
    ok = check_descriptors(p["n"], p["k"])
    return ok, True, ok


def _c_thetae(p, cutoff, fld) -> Outcome:
    from .rickard import check_thetae
    got = check_thetae(p["n"], p["lam"], cutoff, fld)
    return got["status"] == "pass", "pass", got


def _c_gauss(p, cutoff, fld) -> Outcome:
    from .gradedcx import check_gauss_props
    bad = []
    for s in range(p["first_seed"], p["first_seed"] + p["count"]):
        res = check_gauss_props(s, fld, cutoff=min(cutoff, 12))
        if not _all_true(res):
            bad.append({"seed": s, **res})
    return not bad, [], bad


def _c_polsym(p, cutoff, fld) -> Outcome:
    from .polyring import check_polsym
    ok = check_polsym(p["k"], p["l"], p["r"], min(cutoff, 10), fld)
    return ok, True, ok


def _c_hom_oracle(p, cutoff, fld) -> Outcome:
    from .simple2rep import check_hom_oracle
    got = check_hom_oracle(p["a"], p["b"], p["c"], p["d"], p["lam"], p["n"], -8, min(cutoff, 6), fld)
    exp = {str(k): v for k, v in sorted(got["expected"].items())}
    return got["ok"], exp, {str(k): v for k, v in sorted(got["got"].items())}


def _c_indec(p, cutoff, fld) -> Outcome:
    from .qcalc import check_indec, indec_series
    ok = check_indec(p["a"], p["b"], p["lam"], p["n"], min(cutoff, 8))
    return ok, "zero or 1 + qN[q]", indec_series(p["a"], p["b"], p["lam"], p["n"], min(cutoff, 8)).to_text()


CHECKS: Dict[str, Callable[[dict, int, Field], Outcome]] = {
    "hilbertsym": _c_hilbertsym,
    "qbinomial": _c_qbinomial,
    "decomposition": _c_decomposition,
    "relations": _c_relations,
    "faithfulness": _c_faithfulness,
    "idempotents": _c_idempotents,
    "grdim-Hn": _c_grdim_hn,
    "basis": _c_basis,
    "worked-example": _c_worked_example,
    "prop-diff": _c_prop_diff,
    "phi": _c_phi,
    "kerim": _c_kerim,
    "dd-linear": _c_dd,
    "step1": _c_step1,
    "theta-cohomology": _c_theta_cohomology,
    "top-structure": _c_top_structure,
    "theta-invertible": _c_invertible,
    "GT-degree": _c_gt_degree,
    "TG-GT": _c_tg_gt,
    "morphcomp": _c_morphcomp,
    "surjinj": _c_surjinj,
    "descriptors": _c_descriptors,
    "thetae": _c_thetae,
    "random-complexes": _c_gauss,
    "polsym": _c_polsym,
    "hom-oracle": _c_hom_oracle,
    "indec": _c_indec,
}


# ---------------------------------------------------------------------------
# suites

Task = Tuple[str, str, Dict[str, object]]


def _windows(n: int, k_top_offset: int = 1):
    for m in range(0, n + 1):
        for l in range(1, m + 2):
            for k in range(1, m + k_top_offset + 1):
                yield l, k, m


def suite_tasks(suite: str, cfg: RunConfig) -> List[Task]:
    N = cfg.n_max
    out: List[Tuple[str, Dict[str, object]]] = []
    if suite == "qidentities":
        out += [("hilbertsym", {"n": n}) for n in range(N + 1)]
        out += [("qbinomial", {"ground_size": g}) for g in range(N + 4)]
        out += [("decomposition", {"a": a, "b": b, "lam": lam})
                for a in range(3) for b in range(3) for lam in range(-3, 4)]
    elif suite == "nilhecke-relations":
        for n in range(1, min(N, 4) + 1):
            out += [("relations", {"n": n}), ("faithfulness", {"n": n, "seed": cfg.seed}),
                    ("idempotents", {"n": n})]
        out += [("grdim-Hn", {"n": n}) for n in range(1, min(N, 3) + 1)]
    elif suite == "basis":
        for n in range(1, min(N, 4) + 1):
            out += [("basis", {"n": n, "l": l, "k": k, "m": m}) for l, k, m in _windows(n)]
        if N >= 3:
            out.append(("worked-example", {"n": 3}))
    elif suite == "differential":
        for n in range(2, min(N, 4) + 1):
            for m in range(1, n):
                for l in range(1, m + 1):
                    for k in range(1, m + 1):
                        w = {"n": n, "l": l, "k": k, "m": m}
                        out.append(("prop-diff", {**w, "form": "signed"}))
                        out.append(("prop-diff", {**w, "form": "verbatim"}))
                for l in range(1, m + 2):
                    for k in range(1, m + 1):
                        out.append(("kerim", {"n": n, "l": l, "k": k, "m": m}))
                        out.append(("dd-linear", {"n": n, "l": l, "k": k, "m": m}))
                for l in range(1, m + 1):
                    out.append(("step1", {"n": n, "l": l, "m": m}))
        out += [("phi", {"n": n}) for n in range(2, min(N + 1, 5) + 1)]
    elif suite == "theta-cohomology":
        out += [("theta-cohomology", {"n": n, "k": k}) for n in range(min(N, 4) + 1) for k in range(n + 1)]
    elif suite == "coho-structure":
        for n in range(min(N, 3) + 1):
            for k in range(n + 1):
                out += [("top-structure", {"n": n, "k": k}), ("theta-invertible", {"n": n, "k": k})]
    elif suite == "rickard-gt":
        top = max(1, min(N + 1, 4))
        for k in range(1, top + 1):
            for l in range(1, top + 1):
                out += [("GT-degree", {"k": k, "l": l}), ("TG-GT", {"k": k, "l": l})]
                if k <= 3 and l <= 3:
                    out.append(("morphcomp", {"k": k, "l": l}))
        for n in range(min(N, 3) + 1):
            for k in range(n + 1):
                lam = -n + 2 * k
                out.append(("descriptors", {"n": n, "k": k}))
                out.append(("surjinj", {"n": n, "lam": lam, "ranges": "corrected"}))
                out.append(("surjinj", {"n": n, "lam": lam, "ranges": "stated"}))
    elif suite == "rickard-quasi-iso":
        out += [("thetae", {"n": n, "lam": -n + 2 * k}) for n in range(min(N, 3) + 1) for k in range(n + 1)]
    elif suite == "gauss-props":
        base = cfg.seed * 100003
        out += [("random-complexes", {"first_seed": base + 20 * i, "count": 20}) for i in range(10)]
    elif suite == "polsym":
        s = min(N, 5)
        out += [("polsym", {"k": k, "l": l, "r": r})
                for k in range(1, s + 1) for l in range(1, s + 1) for r in range(0, s + 1) if k + l + r <= s]
    elif suite == "hom-oracle":
        for n in range(min(N, 2) + 1):
            for lam in range(-n, n + 1, 2):
                for a in range(3):
                    for b in range(3):
                        for c in range(3):
                            d = c - a + b
                            if 0 <= d <= 2 and (lam >= b - a or (a * b == 0 and c * d == 0)):
                                out.append(("hom-oracle", {"n": n, "lam": lam, "a": a, "b": b, "c": c, "d": d}))
        for a in range(3):
            for b in range(3):
                for lam in range(b - a, b - a + 4):
                    out += [("indec", {"a": a, "b": b, "lam": lam, "n": n})
                            for n in range(max(N, 10) + 1) if (n - lam) % 2 == 0]
    else:
        raise InvalidArgument(f"unknown suite {suite!r}")
    return [(suite, check, params) for check, params in out]


def _order_key(task: Task):
    suite, check, params = task
    return (SUITES.index(suite), check, tuple((k, str(v) if isinstance(v, str) else v)
                                              for k, v in sorted(params.items())))


def plan(cfg: RunConfig) -> List[Task]:
    tasks = [t for s in sorted(set(cfg.suites), key=SUITES.index) for t in suite_tasks(s, cfg)]
    return sorted(tasks, key=_order_key)


# ---------------------------------------------------------------------------
# execution

def run_task(task: Task, cutoff: int, field_name: str) -> Dict[str, object]:
    suite, check, params = task
    fld = parse_field(field_name)
    start = time.perf_counter()
    try:
        ok, expected, got = CHECKS[check](dict(params), cutoff, fld)
        status = "pass" if ok else "fail"
    except ResourceLimit as exc:
        status, expected, got = "skipped", None, {"reason": str(exc)}
    elapsed = (time.perf_counter() - start) * 1000.0
    return {"suite": suite, "check": check, "params": params, "status": status,
            "expected": _jsonable(expected), "got": _jsonable(got), "runtime_ms": elapsed}


def _jsonable(x):
    return json.loads(json.dumps(x, sort_keys=True, default=str))


def cache_key(task: Task, cutoff: int, field_name: str) -> str:
    suite, check, params = task
    blob = json.dumps({"suite": suite, "check": check, "params": params,
                       "cutoff": cutoff, "field": field_name}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


class Cache:
    """Content-addressed JSON files, one per task."""

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)

    def path(self, key: str) -> str:
        return os.path.join(self.root, key[:2], key + ".json")

    def get(self, key: str) -> Optional[Dict[str, object]]:
        p = self.path(key)
        if not os.path.exists(p):
            return None
        try:
            with open(p) as fh:
                data = json.load(fh)
            if not isinstance(data, dict) or data.get("key") != key or "value" not in data:
                raise ValueError("malformed entry")
            return data["value"]
        except (ValueError, OSError):
            log.warning("corrupt cache entry %s; recomputing", p)
            return None

    def put(self, key: str, value: Dict[str, object]) -> None:
        p = self.path(key)
        os.makedirs(os.path.dirname(p), exist_ok=True)
        tmp = p + ".tmp"
        with open(tmp, "w") as fh:
            json.dump({"key": key, "value": value}, fh, sort_keys=True)
        os.replace(tmp, p)


def _strip(record: Dict[str, object]) -> Dict[str, object]:
    return {k: v for k, v in record.items() if k != "runtime_ms"}


def run(cfg: RunConfig) -> Dict[str, object]:
    fld = cfg.validate()
    tasks = plan(cfg)
    cache = Cache(cfg.cache_dir) if cfg.cache_dir else None
    records: List[Optional[Dict[str, object]]] = [None] * len(tasks)
    keys = [cache_key(t, cfg.cutoff, fld.name) for t in tasks]
    todo: List[int] = []
    verify: List[int] = []
    rng = random.Random(cfg.seed)
    for i, t in enumerate(tasks):
        hit = cache.get(keys[i]) if cache else None
        if hit is None:
            todo.append(i)
            continue
        records[i] = {**hit, "runtime_ms": None}
        if cfg.verify_cache and rng.random() < CACHE_SAMPLE_RATE:
            verify.append(i)
    if cfg.verify_cache and cache and not verify and len(todo) < len(tasks):
        verify.append(next(i for i in range(len(tasks)) if records[i] is not None))
    work = todo + verify
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(run_task, [tasks[i] for i in work],
                                    [cfg.cutoff] * len(work), [fld.name] * len(work)))
    else:
        results = [run_task(tasks[i], cfg.cutoff, fld.name) for i in work]
    mismatches = 0
    for i, rec in zip(work, results):
        if records[i] is not None and _strip(records[i]) != _strip(rec):
            mismatches += 1
            log.warning("cache entry for %s/%s %s differs from recomputation; overwriting",
                        tasks[i][0], tasks[i][1], tasks[i][2])
        records[i] = rec
        if cache:
            cache.put(keys[i], _strip(rec))
    if cfg.verify_cache:
        log.info("verified %d cached entries, %d mismatches", len(verify), mismatches)
    out_records = []
    for rec in records:
        rec = dict(rec)
        if not cfg.timings:
            rec["runtime_ms"] = None
        elif rec["runtime_ms"] is not None:
            rec["runtime_ms"] = round(rec["runtime_ms"], 3)
        out_records.append(rec)
    summary = {s: sum(1 for r in out_records if r["status"] == s) for s in ("pass", "fail", "skipped")}
    summary["total"] = len(out_records)
    return {"tool": "sl2cat", "version": __version__, "config": cfg.echo(),
            "checks": out_records, "summary": summary}


def report_json(report: Dict[str, object]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_csv(report: Dict[str, object], path: str) -> int:
    rows = []
    for rec in report["checks"]:
        if rec["check"] != "theta-cohomology" or not isinstance(rec["got"], dict):
            continue
        n, k = rec["params"]["n"], rec["params"]["k"]
        for cell in rec["got"].get("table", []):
            rows.append((n, k, cell["r"], cell["d"], cell["dim"]))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "k", "r", "d", "dim"])
        w.writerows(sorted(rows))
    return len(rows)


def exit_code(report: Dict[str, object]) -> int:
    return 1 if report["summary"]["fail"] else 0


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sl2cat", description="Run exact verification suites.")
    p.add_argument("--suite", action="append", choices=SUITES + ("all",), dest="suites",
                   help="suite to run; repeatable (default: qidentities)")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--cutoff", type=int, default=12, help="top internal q-degree")
    p.add_argument("--field", default="rational", help="rational or prime:<p>")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--cache-dir")
    p.add_argument("--verify-cache", action="store_true",
                   help="recompute a seeded 5%% sample of cache hits")
    p.add_argument("--csv", dest="csv_path", help="write cohomology tables (n,k,r,d,dim)")
    p.add_argument("--timings", action="store_true", help="record runtime_ms per check")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    suites = ns.suites or ["qidentities"]
    if "all" in suites:
        suites = list(SUITES)
    return RunConfig(suites=suites, n_max=ns.n_max, cutoff=ns.cutoff, field=ns.field, seed=ns.seed,
                     jobs=ns.jobs, out=ns.out, cache_dir=ns.cache_dir, verify_cache=ns.verify_cache,
                     csv_path=ns.csv_path, timings=ns.timings)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    cfg = config_from_args(ns)
    try:
        cfg.validate()
    except InvalidArgument as exc:
        parser.print_usage(sys.stderr)
        print(f"sl2cat: error: {exc}", file=sys.stderr)
        return 2
    if cfg.cache_dir is None and cfg.verify_cache:
        parser.print_usage(sys.stderr)
        print("sl2cat: error: --verify-cache needs --cache-dir", file=sys.stderr)
        return 2
    report = run(cfg)
    text = report_json(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.csv_path:
        write_csv(report, cfg.csv_path)
    s = report["summary"]
    print(f"sl2cat: {s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped", file=sys.stderr)
    for rec in report["checks"]:
        if rec["status"] == "fail":
            print(f"  FAIL {rec['suite']}/{rec['check']} {json.dumps(rec['params'], sort_keys=True)}",
                  file=sys.stderr)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
