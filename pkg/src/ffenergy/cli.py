"""Command line front end: configured runs, deterministic sweeps, reports.

Every subcommand reads a JSON config, writes ``<out>/report.json`` and
``<out>/table.csv``, and exits 0 iff every asserted check passed (1 on
check failure, 2 on config errors).  Reports contain no timestamps or
host state, so identical (config, seed, version) runs are byte-identical.
Rationals appear as "num/den" strings and floats as full-precision
decimal strings in report.json; table.csv shows floats to 6 significant
digits.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import (
    BudgetExceeded,
    ImproperHypothesis,
    InternalError,
    KernelConditionFails,
    ParameterError,
)
from .ffield import make_field
from .structsets import (
    BohrSpec,
    BoxSpec,
    ElementSet,
    GapSpec,
    enumerate_bohr,
    enumerate_box,
    enumerate_gap,
    gap_fourier,
    is_proper,
    parseval_check,
)
from .energy import mult_energy, product_set
from .latgeom import (
    dual_body,
    dual_lattice,
    gamma_box,
    gamma_gap,
    minkowski_certificate,
    successive_minima_auto,
    transference_certificate,
)
from .siegel import make_instance, seeded_instances, siegel_solve
from .verify import (
    admissible_H,
    lattice_certificates,
    shared_shapes,
    stability_max_ratio,
    stability_min_lower,
    theorem2_alphas,
    verify_lemma5,
    verify_lemma6,
    verify_membership_uniqueness,
    verify_reduction_lemma,
    verify_shao,
    verify_theorem1,
    verify_theorem2,
)

ARTIFACT_VERSION = "0.1.0"

SWEEP_KINDS = ("lemma5", "lemma6", "certificates", "membership",
               "thm1", "thm2", "reduction", "shao")
SWEEP_POINT_LIMIT = 20000
DEFAULT_SIZE_LIMIT = 200


class ConfigError(Exception):
    """Invalid configuration; maps to exit status 2."""


# ---------------------------------------------------------------------------
# serialization helpers


def to_jsonable(x):
    """JSON-safe form: Fractions as num/den strings, floats as repr strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def human_cell(x):
    """CSV cell: floats to 6 significant digits, everything else compact."""
    if isinstance(x, bool) or x is None:
        return "" if x is None else str(x).lower()
    if isinstance(x, float):
        return f"{x:.6g}"
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return " ".join(human_cell(v) for v in x)
    if isinstance(x, str):
        try:
            return f"{float(x):.6g}" if ("." in x or "e" in x) else x
        except ValueError:
            return x
    return str(x)


def write_report(out_dir: str, report: dict) -> str:
    path = os.path.join(out_dir, "report.json")
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def write_table(out_dir: str, columns, rows) -> str:
    path = os.path.join(out_dir, "table.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([human_cell(row.get(c)) for c in columns])
    return path


# ---------------------------------------------------------------------------
# config validation


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    return cfg


def check_keys(obj: dict, allowed, where: str) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def need(cfg: dict, key: str, where: str):
    if key not in cfg:
        raise ConfigError(f"missing required key '{key}' in {where}")
    return cfg[key]


def as_int(v, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where} must be an integer")
    return v


def as_int_list(v, where: str) -> list:
    if not isinstance(v, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise ConfigError(f"{where} must be a list of integers")
    return list(v)


def as_frac(v, where: str) -> Fraction:
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"{where} must be a rational like '1/4'")
    raise ConfigError(f"{where} must be an integer or a 'num/den' string")


def as_choice(v, options, where: str):
    if v not in options:
        raise ConfigError(f"{where} must be one of {options}")
    return v


def field_args(cfg: dict, where: str):
    """Optional poly/basis entries shared by field-based commands."""
    poly = cfg.get("poly")
    if poly is not None:
        poly = tuple(as_int_list(poly, f"{where}.poly"))
    basis = cfg.get("basis")
    if basis is not None:
        if not isinstance(basis, list):
            raise ConfigError(f"{where}.basis must be a list of rows")
        basis = tuple(tuple(as_int_list(r, f"{where}.basis row")) for r in basis)
    return poly, basis


# ---------------------------------------------------------------------------
# result cache


class ResultCache:
    """Append-only jsonl of digest-keyed payloads; bad lines are ignored."""

    def __init__(self, path: str):
        self.path = path
        self._mem = {}
        try:
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    try:
                        entry = json.loads(line)
                        if entry.get("version") == ARTIFACT_VERSION:
                            self._mem[entry["digest"]] = entry["payload"]
                    except (json.JSONDecodeError, KeyError, TypeError):
                        continue
        except OSError:
            pass

    def get(self, digest: str):
        return self._mem.get(digest)

    def put(self, digest: str, kind: str, payload) -> None:
        self._mem[digest] = payload
        entry = {"digest": digest, "kind": kind,
                 "version": ARTIFACT_VERSION, "payload": payload}
        try:
            with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
                fh.write(json.dumps(entry, ensure_ascii=False) + "\n")
        except OSError:
            pass


def task_digest(task: dict) -> str:
    blob = json.dumps({"version": ARTIFACT_VERSION, "task": task},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# sweep point execution (top level so worker pools can pickle tasks)


def _report_row(task: dict, rep) -> dict:
    row = dict(task)
    row.update(
        observed=to_jsonable(rep.observed_constant),
        passed=rep.passed,
        hypothesis_ok=rep.hypothesis_ok,
        skipped=False,
        skip_reason=None,
        witness=to_jsonable(rep.witnesses[0] if rep.witnesses else None),
        notes=list(rep.notes),
        details=to_jsonable(rep.details),
    )
    return row


def _skipped_row(task: dict, reason: str, witness) -> dict:
    row = dict(task)
    row.update(observed=None, passed=None, hypothesis_ok=False,
               skipped=True, skip_reason=reason,
               witness=to_jsonable(witness), notes=[], details={})
    return row


def _cs_entries(field, eset: ElementSet) -> dict:
    prod = product_set(field, eset)
    return {"product_size": prod.size, "cs_ok": prod.certified}


def run_sweep_task(task: dict) -> dict:
    kind = task["kind"]
    if kind in ("lemma5", "lemma6", "certificates", "membership"):
        basis = task.get("basis")
        field = make_field(task["q"], task["n"],
                           basis=tuple(tuple(r) for r in basis) if basis else None)
        H = tuple(task["H"])
        fn = {"lemma5": verify_lemma5, "lemma6": verify_lemma6,
              "certificates": lattice_certificates,
              "membership": verify_membership_uniqueness}[kind]
        return _report_row(task, fn(field, H))
    if kind == "thm1":
        field = make_field(task["q"], task["n"])
        rep = verify_theorem1(field, tuple(task["M"]), tuple(task["H"]))
        row = _report_row(task, rep)
        box = enumerate_box(field, BoxSpec(M=tuple(task["M"]), H=tuple(task["H"])))
        row.update(_cs_entries(field, box))
        return row
    if kind in ("thm2", "reduction", "shao"):
        q, d, H = task["q"], task["d"], task["H"]
        alphas = tuple(task["alphas"])
        spec = GapSpec(alphas, H, beta=task.get("beta", 0))
        field = make_field(q, 1)
        try:
            if kind == "thm2":
                rep = verify_theorem2(q, spec)
                eset = enumerate_gap(q, spec)
            elif kind == "reduction":
                rep = verify_reduction_lemma(q, spec)
                eset = enumerate_gap(q, spec)
            else:
                rep = verify_shao(q, alphas, H, Fraction(task["eps"]))
                eset = enumerate_bohr(q, BohrSpec(
                    alphas=alphas, eps=(Fraction(task["eps"]),) * d))
        except ImproperHypothesis as exc:
            return _skipped_row(task, "widened progression not proper",
                                exc.witness)
        except KernelConditionFails as exc:
            return _skipped_row(task, "kernel vector inside window",
                                exc.witness)
        row = _report_row(task, rep)
        if eset.size:
            row.update(_cs_entries(field, eset))
        return row
    raise InternalError(f"unknown sweep kind {kind!r}")


# ---------------------------------------------------------------------------
# sweep assembly


def _universe_h(cfg: dict, q: int, n: int, qs, where: str):
    spec = cfg.get("H", "admissible")
    if spec == "admissible":
        return list(admissible_H(q, n))
    if spec == "shared":
        return list(shared_shapes(qs, n))
    if isinstance(spec, list):
        shapes = []
        for h in spec:
            hl = as_int_list(h if isinstance(h, list) else [h], f"{where}.H entry")
            if len(hl) != n:
                continue
            shapes.append(tuple(hl))
        return shapes
    raise ConfigError(f"{where}.H must be 'admissible', 'shared', or a list")


def build_sweep_tasks(cfg: dict, seed: int):
    """Deterministic task list for a sweep config; draws all sampled
    parameters up front so worker scheduling cannot affect results."""
    where = "sweep config"
    kind = as_choice(need(cfg, "kind", where), SWEEP_KINDS, "sweep kind")
    rng = random.Random(seed)
    tasks = []
    if kind in ("lemma5", "lemma6", "certificates", "membership"):
        check_keys(cfg, {"kind", "q", "n", "H", "size_limit", "basis",
                         "samples", "growth_factor", "shrink_factor", "seed",
                         "out"}, where)
        qs = as_int_list(need(cfg, "q", where), "sweep q")
        ns = as_int_list(need(cfg, "n", where), "sweep n")
        limit = as_int(cfg.get("size_limit", DEFAULT_SIZE_LIMIT), "size_limit")
        basis_mode = as_choice(cfg.get("basis", "default"),
                               ("default", "sampled"), "sweep basis")
        samples = as_int(cfg.get("samples", 1), "samples")
        for q in qs:
            for n in ns:
                if q ** n > limit:
                    continue
                bases = [None]
                if basis_mode == "sampled":
                    bases = [_sample_basis(rng, q, n) for _ in range(samples)]
                for H in _universe_h(cfg, q, n, qs, where):
                    for b in bases:
                        t = {"kind": kind, "q": q, "n": n, "H": list(H)}
                        if b is not None:
                            t["basis"] = [list(r) for r in b]
                        tasks.append(t)
        return kind, tasks
    if kind == "thm1":
        check_keys(cfg, {"kind", "q", "n", "H", "size_limit", "M", "samples",
                         "growth_factor", "seed", "out"}, where)
        qs = as_int_list(need(cfg, "q", where), "sweep q")
        ns = as_int_list(need(cfg, "n", where), "sweep n")
        limit = as_int(cfg.get("size_limit", DEFAULT_SIZE_LIMIT), "size_limit")
        m_mode = as_choice(cfg.get("M", "zero"), ("zero", "sampled"), "sweep M")
        samples = as_int(cfg.get("samples", 1), "samples")
        for q in qs:
            for n in ns:
                if q ** n > limit:
                    continue
                for H in _universe_h(cfg, q, n, qs, where):
                    if _prod(H) < 2:
                        continue
                    if m_mode == "zero":
                        ms = [(0,) * n]
                    else:
                        ms = [tuple(rng.randrange(q) for _ in range(n))
                              for _ in range(samples)]
                    for M in ms:
                        tasks.append({"kind": kind, "q": q, "n": n,
                                      "H": list(H), "M": list(M)})
        return kind, tasks
    # thm2 family: q x d x H grids with derived generator tuples
    check_keys(cfg, {"kind", "q", "d", "H", "beta", "samples", "eps",
                     "growth_factor", "seed", "out"}, where)
    qs = as_int_list(need(cfg, "q", where), "sweep q")
    ds = as_int_list(need(cfg, "d", where), "sweep d")
    hs = as_int_list(need(cfg, "H", where), "sweep H")
    beta_mode = as_choice(cfg.get("beta", "zero"), ("zero", "sampled"),
                          "sweep beta")
    samples = as_int(cfg.get("samples", 1), "samples")
    eps = as_frac(cfg.get("eps", "1/4"), "sweep eps") if kind == "shao" else None
    for q in qs:
        for d in ds:
            for H in hs:
                alphas = theorem2_alphas(d, H)
                betas = [0]
                if kind == "thm2" and beta_mode == "sampled":
                    betas = [rng.randrange(q) for _ in range(samples)]
                for beta in betas:
                    t = {"kind": kind, "q": q, "d": d, "H": H,
                         "alphas": list(alphas), "beta": beta}
                    if kind == "shao":
                        t["eps"] = f"{eps.numerator}/{eps.denominator}"
                    tasks.append(t)
    return kind, tasks


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _sample_basis(rng: random.Random, q: int, n: int):
    """Random invertible basis matrix over F_q (rows are coordinates)."""
    from ._linalg import mat_inv_mod

    while True:
        rows = tuple(tuple(rng.randrange(q) for _ in range(n))
                     for _ in range(n))
        if mat_inv_mod(rows, q) is not None:
            return rows


def _family_key(row: dict):
    if "n" in row:
        return (row["n"], tuple(row["H"]))
    return (row["d"], row["H"])


def sweep_stability(kind: str, cfg: dict, rows) -> list:
    """Cross-q verdicts: ratio kinds compare global per-q maxima with a
    growth factor; lemma6 compares per-(n,H) minima with a shrink factor."""
    live = [r for r in rows if not r["skipped"]]
    qs = sorted({r["q"] for r in live})
    if len(qs) < 2:
        return []
    verdicts = []
    if kind in ("thm1", "thm2", "reduction", "shao"):
        gf = cfg.get("growth_factor", 2)
        per_q = {}
        for r in live:
            v = float(Fraction(r["observed"])) if "/" in str(r["observed"]) \
                else float(r["observed"])
            per_q[r["q"]] = max(per_q.get(r["q"], 0.0), v)
        ok, info = stability_max_ratio(
            {qs[0]: per_q[qs[0]], qs[-1]: per_q[qs[-1]]}, gf)
        verdicts.append({"rule": "max_growth", "factor": gf, "family": "all",
                         "ok": ok, **to_jsonable(info)})
    elif kind == "lemma6":
        sf = cfg.get("shrink_factor", 4)
        groups = {}
        for r in live:
            groups.setdefault(_family_key(r), {})[r["q"]] = Fraction(r["observed"])
        for fam in sorted(groups):
            per_q = groups[fam]
            if qs[0] not in per_q or qs[-1] not in per_q:
                continue
            ok, info = stability_min_lower(
                {qs[0]: per_q[qs[0]], qs[-1]: per_q[qs[-1]]}, sf)
            verdicts.append({"rule": "min_shrink", "factor": sf,
                             "family": to_jsonable(list(fam)), "ok": ok,
                             **to_jsonable(info)})
    return verdicts


def run_sweep(cfg: dict, ctx: dict):
    kind, tasks = build_sweep_tasks(cfg, ctx["seed"])
    if len(tasks) > SWEEP_POINT_LIMIT:
        raise BudgetExceeded(
            f"sweep would visit {len(tasks)} points (limit {SWEEP_POINT_LIMIT})")
    cache = ctx["cache"]
    rows = [None] * len(tasks)
    missing = []
    for i, task in enumerate(tasks):
        digest = task_digest(task)
        hit = cache.get(digest) if cache else None
        if hit is not None:
            rows[i] = hit
        else:
            missing.append((i, digest, task))
    if missing:
        if ctx["jobs"] > 1 and len(missing) > 1:
            with ProcessPoolExecutor(max_workers=ctx["jobs"]) as pool:
                computed = list(pool.map(run_sweep_task,
                                         [t for _, _, t in missing]))
        else:
            computed = [run_sweep_task(t) for _, _, t in missing]
        for (i, digest, task), row in zip(missing, computed):
            rows[i] = row
            if cache:
                cache.put(digest, kind, row)
    live = [r for r in rows if not r["skipped"]]
    observed = [Fraction(r["observed"]) if "/" in str(r["observed"])
                else float(r["observed"]) for r in live]
    aggregates = {
        "points": len(rows),
        "skipped": len(rows) - len(live),
        "observed_min": to_jsonable(min(observed)) if observed else None,
        "observed_max": to_jsonable(max(observed)) if observed else None,
    }
    verdicts = sweep_stability(kind, cfg, rows)
    passed = all(r["passed"] or not r["hypothesis_ok"] for r in live)
    passed = passed and all(v["ok"] for v in verdicts)
    failures = []
    for r in live:
        if not r["passed"] and r["hypothesis_ok"]:
            failures.append(f"FAIL {kind} point {_point_label(r)}: "
                            f"observed {r['observed']}, witness {r['witness']}")
    for v in verdicts:
        if not v["ok"]:
            failures.append(f"FAIL {kind} stability {v['family']}: {v}")
    report = {
        "meta": _meta(ctx, {"command": "sweep", "config": _echo_cfg(cfg)}),
        "rows": rows,
        "aggregates": aggregates,
        "stability": verdicts,
        "passed": passed,
    }
    columns = SWEEP_COLUMNS[kind]
    return report, rows, columns, passed, failures


def _point_label(row: dict) -> str:
    keys = [k for k in ("q", "n", "d", "H", "M", "beta", "eps") if k in row]
    return " ".join(f"{k}={row[k]}" for k in keys)


SWEEP_COLUMNS = {
    "lemma5": ["kind", "q", "n", "H", "basis", "observed", "passed",
               "hypothesis_ok", "skipped", "witness"],
    "lemma6": ["kind", "q", "n", "H", "basis", "observed", "passed",
               "hypothesis_ok", "skipped", "witness"],
    "certificates": ["kind", "q", "n", "H", "basis", "observed", "passed",
                     "hypothesis_ok", "skipped", "witness"],
    "membership": ["kind", "q", "n", "H", "basis", "observed", "passed",
                   "hypothesis_ok", "skipped", "witness"],
    "thm1": ["kind", "q", "n", "M", "H", "observed", "passed",
             "product_size", "cs_ok", "skipped"],
    "thm2": ["kind", "q", "d", "H", "beta", "observed", "passed",
             "product_size", "cs_ok", "skipped", "skip_reason"],
    "reduction": ["kind", "q", "d", "H", "observed", "passed",
                  "product_size", "cs_ok", "skipped", "skip_reason"],
    "shao": ["kind", "q", "d", "H", "eps", "observed", "passed",
             "product_size", "cs_ok", "skipped", "skip_reason"],
}


# ---------------------------------------------------------------------------
# single commands


def _meta(ctx: dict, extra: dict) -> dict:
    meta = {"version": ARTIFACT_VERSION, "seed": ctx["seed"]}
    meta.update(extra)
    return meta


def _echo_cfg(cfg: dict) -> dict:
    return {k: v for k, v in cfg.items() if k not in ("seed", "out")}


def run_field_info(cfg: dict, ctx: dict):
    check_keys(cfg, {"q", "n", "poly", "basis", "seed", "out"}, "field-info")
    q = as_int(need(cfg, "q", "field-info"), "q")
    n = as_int(need(cfg, "n", "field-info"), "n")
    poly, basis = field_args(cfg, "field-info")
    field = make_field(q, n, poly=poly, basis=basis)
    row = {"q": q, "n": n, "size": field.size,
           "modulus": list(field.modulus), "basis": to_jsonable(field.basis),
           "power_basis": field.power_basis}
    report = {"meta": _meta(ctx, {"command": "field-info",
                                  "config": _echo_cfg(cfg)}),
              "result": row, "passed": True}
    return report, [row], ["q", "n", "size", "modulus", "basis",
                           "power_basis"], True, []


def _config_set(field, cfg_set: dict):
    check_keys(cfg_set, {"kind", "M", "H", "alphas", "beta", "codes"},
               "energy set")
    kind = as_choice(need(cfg_set, "kind", "energy set"),
                     ("units", "box", "gap", "codes"), "set kind")
    if kind == "units":
        return ElementSet(tuple(range(1, field.size)), field.size - 1), "units"
    if kind == "box":
        M = tuple(as_int_list(need(cfg_set, "M", "box set"), "M"))
        H = tuple(as_int_list(need(cfg_set, "H", "box set"), "H"))
        return enumerate_box(field, BoxSpec(M=M, H=H)), "box"
    if kind == "gap":
        if field.n != 1:
            raise ConfigError("gap sets require n=1")
        alphas = tuple(as_int_list(need(cfg_set, "alphas", "gap set"), "alphas"))
        H = as_int(need(cfg_set, "H", "gap set"), "H")
        beta = as_int(cfg_set.get("beta", 0), "beta")
        return enumerate_gap(field.q, GapSpec(alphas, H, beta=beta)), "gap"
    codes = sorted(set(as_int_list(need(cfg_set, "codes", "codes set"),
                                   "codes")))
    if any(c < 0 or c >= field.size for c in codes):
        raise ConfigError("codes out of field range")
    return ElementSet(tuple(codes), len(codes)), "codes"


def run_energy(cfg: dict, ctx: dict):
    check_keys(cfg, {"q", "n", "poly", "basis", "set", "seed", "out"},
               "energy")
    q = as_int(need(cfg, "q", "energy"), "q")
    n = as_int(need(cfg, "n", "energy"), "n")
    poly, basis = field_args(cfg, "energy")
    field = make_field(q, n, poly=poly, basis=basis)
    cfg_set = need(cfg, "set", "energy")
    if not isinstance(cfg_set, dict):
        raise ConfigError("energy 'set' must be an object")
    eset, set_kind = _config_set(field, cfg_set)
    rep = mult_energy(field, eset)
    row = {"q": q, "n": n, "set": set_kind, "size": eset.size,
           "energy": rep.E, "zero_count": rep.zero_count,
           "distinct_ratios": len(rep.I_hist)}
    if eset.size:
        row.update(_cs_entries(field, eset))
    passed = bool(row.get("cs_ok", True))
    report = {"meta": _meta(ctx, {"command": "energy",
                                  "config": _echo_cfg(cfg)}),
              "result": row, "passed": passed}
    failures = [] if passed else [f"FAIL energy: certificate violated on {row}"]
    return report, [row], ["q", "n", "set", "size", "energy", "zero_count",
                           "product_size", "cs_ok"], passed, failures


def run_minima(cfg: dict, ctx: dict):
    check_keys(cfg, {"q", "n", "poly", "basis", "family", "z", "H", "alphas",
                     "w", "delta", "count", "dual", "seed", "out"}, "minima")
    q = as_int(need(cfg, "q", "minima"), "q")
    family = as_choice(cfg.get("family", "box"), ("box", "gap"), "family")
    want_dual = bool(cfg.get("dual", False))
    if family == "box":
        n = as_int(need(cfg, "n", "minima"), "n")
        poly, basis = field_args(cfg, "minima")
        field = make_field(q, n, poly=poly, basis=basis)
        z = cfg.get("z", 1)
        if isinstance(z, list):
            z = tuple(as_int_list(z, "z"))
        elif isinstance(z, bool) or not isinstance(z, int):
            raise ConfigError("z must be an element code or coordinate list")
        H = tuple(as_int_list(need(cfg, "H", "minima"), "H"))
        latt, body = gamma_box(field, z, H)
        dim = 2 * n
    else:
        alphas = tuple(as_int_list(need(cfg, "alphas", "minima"), "alphas"))
        H = as_int(need(cfg, "H", "minima"), "H")
        w = as_int(need(cfg, "w", "minima"), "w")
        delta = cfg.get("delta")
        if delta is not None:
            delta = tuple(as_frac(x, "delta") for x in delta)
        latt, body = gamma_gap(q, GapSpec(alphas, H), w, delta=delta)
        dim = 2 * len(alphas)
    count = cfg.get("count")
    count = dim if count is None else as_int(count, "count")
    rep = successive_minima_auto(latt, body, count=count)
    rows = [{"side": "primal", "index": j + 1,
             "lambda": to_jsonable(rep.minima[j]),
             "witness": to_jsonable(rep.witnesses[j])}
            for j in range(len(rep.minima))]
    result = {"minima": to_jsonable(rep.minima),
              "witnesses": to_jsonable(rep.witnesses),
              "s_index": rep.s_index,
              "det": to_jsonable(latt.det_abs),
              "volume": to_jsonable(body.volume)}
    if count == dim:
        lo, hi = minkowski_certificate(rep, body, latt)
        result["minkowski_margins"] = to_jsonable((lo, hi))
    if want_dual:
        dlatt, dbody = dual_lattice(latt), dual_body(body)
        drep = successive_minima_auto(dlatt, dbody, count=count)
        result["dual_minima"] = to_jsonable(drep.minima)
        result["dual_witnesses"] = to_jsonable(drep.witnesses)
        rows += [{"side": "dual", "index": j + 1,
                  "lambda": to_jsonable(drep.minima[j]),
                  "witness": to_jsonable(drep.witnesses[j])}
                 for j in range(len(drep.minima))]
        if count == dim:
            products = transference_certificate(rep, drep)
            result["transference_products"] = to_jsonable(products)
    report = {"meta": _meta(ctx, {"command": "minima",
                                  "config": _echo_cfg(cfg)}),
              "result": result, "passed": True}
    return report, rows, ["side", "index", "lambda", "witness"], True, []


def run_bohr(cfg: dict, ctx: dict):
    check_keys(cfg, {"q", "alphas", "eps", "seed", "out"}, "bohr")
    q = as_int(need(cfg, "q", "bohr"), "q")
    alphas = tuple(as_int_list(need(cfg, "alphas", "bohr"), "alphas"))
    eps_cfg = need(cfg, "eps", "bohr")
    if isinstance(eps_cfg, list):
        eps = tuple(as_frac(e, "eps") for e in eps_cfg)
    else:
        eps = (as_frac(eps_cfg, "eps"),) * len(alphas)
    bset = enumerate_bohr(q, BohrSpec(alphas=alphas, eps=eps))
    row = {"q": q, "alphas": list(alphas), "eps": to_jsonable(eps),
           "size": bset.size}
    result = dict(row)
    if bset.size <= 500:
        result["elements"] = list(bset.elements)
    report = {"meta": _meta(ctx, {"command": "bohr",
                                  "config": _echo_cfg(cfg)}),
              "result": result, "passed": True}
    return report, [row], ["q", "alphas", "eps", "size"], True, []


def run_siegel(cfg: dict, ctx: dict):
    check_keys(cfg, {"A", "seeded", "seed", "out"}, "siegel")
    rows = []
    passed = True
    failures = []
    if "A" in cfg:
        if "seeded" in cfg:
            raise ConfigError("give either 'A' or 'seeded', not both")
        A = need(cfg, "A", "siegel")
        if not isinstance(A, list) or not A:
            raise ConfigError("siegel 'A' must be a nonempty list of rows")
        mats = [tuple(tuple(as_int_list(r, "siegel row")) for r in A)]
    else:
        seeded = need(cfg, "seeded", "siegel")
        if not isinstance(seeded, dict):
            raise ConfigError("siegel 'seeded' must be an object")
        check_keys(seeded, {"count", "max_cols", "entry_bound"}, "siegel.seeded")
        count = as_int(need(seeded, "count", "siegel.seeded"), "count")
        mats = [inst.A for inst in seeded_instances(
            count, ctx["seed"],
            max_cols=as_int(seeded.get("max_cols", 6), "max_cols"),
            entry_bound=as_int(seeded.get("entry_bound", 5), "entry_bound"))]
    for idx, A in enumerate(mats):
        inst = make_instance(A)
        t = siegel_solve(A)
        sup = max(abs(x) for x in t)
        residual_zero = all(
            sum(a * x for a, x in zip(row, t)) == 0 for row in A)
        ok = residual_zero and any(t) and (
            inst.bound is None or sup <= inst.bound)
        rows.append({"index": idx, "rows": len(A), "cols": len(A[0]),
                     "gram_det": inst.gram_det, "bound": inst.bound,
                     "t": list(t), "sup_norm": sup, "ok": ok})
        if not ok:
            passed = False
            failures.append(f"FAIL siegel instance {idx}: t={t}")
    report = {"meta": _meta(ctx, {"command": "siegel",
                                  "config": _echo_cfg(cfg)}),
              "rows": rows, "passed": passed}
    return report, rows, ["index", "rows", "cols", "gram_det", "bound", "t",
                          "sup_norm", "ok"], passed, failures


def _single_verify(command: str, cfg: dict, ctx: dict):
    """Shared driver for the verify-* single-point commands."""
    if command in ("verify-lemma5", "verify-lemma6", "verify-membership"):
        check_keys(cfg, {"q", "n", "H", "poly", "basis", "seed", "out"},
                   command)
        q = as_int(need(cfg, "q", command), "q")
        n = as_int(need(cfg, "n", command), "n")
        poly, basis = field_args(cfg, command)
        field = make_field(q, n, poly=poly, basis=basis)
        H = tuple(as_int_list(need(cfg, "H", command), "H"))
        fn = {"verify-lemma5": verify_lemma5, "verify-lemma6": verify_lemma6,
              "verify-membership": verify_membership_uniqueness}[command]
        rep = fn(field, H)
        task = {"kind": rep.kind, "q": q, "n": n, "H": list(H)}
    elif command == "verify-thm1":
        check_keys(cfg, {"q", "n", "M", "H", "poly", "basis", "seed", "out"},
                   command)
        q = as_int(need(cfg, "q", command), "q")
        n = as_int(need(cfg, "n", command), "n")
        poly, basis = field_args(cfg, command)
        field = make_field(q, n, poly=poly, basis=basis)
        M = tuple(as_int_list(cfg.get("M", [0] * n), "M"))
        H = tuple(as_int_list(need(cfg, "H", command), "H"))
        rep = verify_theorem1(field, M, H)
        task = {"kind": rep.kind, "q": q, "n": n, "M": list(M), "H": list(H)}
    else:
        check_keys(cfg, {"q", "d", "H", "alphas", "beta", "eps", "eps_grid",
                         "seed", "out"}, command)
        q = as_int(need(cfg, "q", command), "q")
        H = as_int(need(cfg, "H", command), "H")
        if "alphas" in cfg:
            alphas = tuple(as_int_list(cfg["alphas"], "alphas"))
        else:
            alphas = theorem2_alphas(as_int(need(cfg, "d", command), "d"), H)
        beta = as_int(cfg.get("beta", 0), "beta")
        spec = GapSpec(alphas, H, beta=beta)
        task = {"kind": command[7:], "q": q, "d": len(alphas), "H": H,
                "alphas": list(alphas), "beta": beta}
        try:
            if command == "verify-thm2":
                rep = verify_theorem2(q, spec)
            elif command == "verify-reduction":
                grid = cfg.get("eps_grid")
                if grid is not None:
                    grid = tuple(as_frac(e, "eps_grid") for e in grid)
                rep = verify_reduction_lemma(q, spec, eps_grid=grid)
            else:
                eps = as_frac(cfg.get("eps", "1/4"), "eps")
                task["eps"] = f"{eps.numerator}/{eps.denominator}"
                rep = verify_shao(q, alphas, H, eps)
        except (ImproperHypothesis, KernelConditionFails) as exc:
            row = _skipped_row(task, str(exc), exc.witness)
            report = {"meta": _meta(ctx, {"command": command,
                                          "config": _echo_cfg(cfg)}),
                      "result": row, "passed": False}
            cols = list(row.keys())
            return report, [row], cols, False, [
                f"FAIL {command}: hypothesis not met, witness {exc.witness}"]
    row = _report_row(task, rep)
    row_ok = bool(rep.passed or not rep.hypothesis_ok)
    failures = []
    if not row_ok:
        failures.append(f"FAIL {command} {_point_label(row)}: observed "
                        f"{row['observed']}, witness {row['witness']}")
    report = {"meta": _meta(ctx, {"command": command,
                                  "config": _echo_cfg(cfg)}),
              "result": row, "passed": row_ok}
    cols = [c for c in ("kind", "q", "n", "d", "M", "H", "beta", "eps",
                        "observed", "passed", "hypothesis_ok", "witness")
            if c in row]
    return report, [row], cols, row_ok, failures


RUNNERS = {
    "field-info": run_field_info,
    "energy": run_energy,
    "minima": run_minima,
    "bohr": run_bohr,
    "siegel": run_siegel,
    "sweep": run_sweep,
}
for _cmd in ("verify-lemma5", "verify-lemma6", "verify-thm1", "verify-thm2",
             "verify-reduction", "verify-shao", "verify-membership"):
    RUNNERS[_cmd] = (lambda cfg, ctx, _c=_cmd: _single_verify(_c, cfg, ctx))


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffenergy",
        description="Finite-field multiplicative energy and lattice "
                    "certificate experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in RUNNERS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True,
                       help="path to a JSON config file")
        p.add_argument("--out", default=None,
                       help="output directory (default ./out)")
        p.add_argument("--seed", type=int, default=None,
                       help="64-bit seed for sampled choices")
        p.add_argument("--jobs", type=int, default=1,
                       help="worker processes for sweeps")
        p.add_argument("--no-cache", action="store_true",
                       help="disable the result cache")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        seed = args.seed if args.seed is not None else cfg.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool) \
                or not 0 <= seed < 2 ** 64:
            raise ConfigError("seed must be an integer in [0, 2^64)")
        if args.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        out_dir = args.out if args.out is not None else cfg.get("out", "out")
        if not isinstance(out_dir, str):
            raise ConfigError("out must be a path string")
        os.makedirs(out_dir, exist_ok=True)
        cache = None
        if not args.no_cache:
            cache = ResultCache(os.path.join(out_dir, "cache.jsonl"))
        ctx = {"seed": seed, "jobs": args.jobs, "cache": cache,
               "out": out_dir}
        report, rows, columns, passed, failures = \
            RUNNERS[args.command](cfg, ctx)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ParameterError, BudgetExceeded) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    report_path = write_report(out_dir, report)
    table_path = write_table(out_dir, columns, rows)
    for line in failures:
        print(line)
    status = "pass" if passed else "FAIL"
    print(f"{args.command}: {status} ({len(rows)} row(s)); "
          f"wrote {report_path} and {table_path}")
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
