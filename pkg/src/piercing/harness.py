"""Runs that tie generators, cover algorithms, oracles and bound checks together.

A :class:`RunRecord` only ever holds sizes of covers that passed
:func:`check_cover`, and its verdicts are recomputed from the recorded
numbers.  Reports use exact rational strings; wall-clock time is only
written when asked for, so repeated sweeps produce identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .aspect import AspectInstance, aspect_cover
from .errors import BudgetExceeded, HypothesisViolation
from .exact import DEFAULT_BUDGET, Cover, check_cover, exact_nu, exact_tau, gallai_stab
from .generate import GenSpec, generate
from .geometry import BoxFamily, aspect_ratio
from .karolyi import karolyi_cover, within_karolyi_bound
from .lp import fractional_tau
from .structured import structured_bound, structured_cover

ALGORITHMS = ("gallai", "karolyi", "structured", "structured-extremal", "aspect", "exact-tau")


def family_aspect(f: BoxFamily):
    return max((aspect_ratio(b) for b in f.boxes), default=1)


def run_algorithm(name: str, f: BoxFamily, r=None, budget: int = DEFAULT_BUDGET) -> Cover:
    """Cover ``f`` with the named algorithm; the cover is checked before it is returned."""
    if name == "gallai":
        cover = gallai_stab(f)
    elif name == "karolyi":
        cover = karolyi_cover(f, budget)
    elif name == "structured":
        cover = structured_cover(f, budget=budget)
    elif name == "structured-extremal":
        cover = structured_cover(f, extremal=True, budget=budget)
    elif name == "aspect":
        cover = aspect_cover(AspectInstance(f, family_aspect(f) if r is None else r), budget)
    elif name == "exact-tau":
        cover = exact_tau(f, budget)[1]
    else:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {', '.join(ALGORITHMS)}")
    if not check_cover(f, cover).ok:
        raise AssertionError(f"{name} returned an invalid cover")
    return cover


def within_bound(name: str, size: int, nu: int, d: int, r=None, tau=None) -> bool:
    """Whether ``size`` respects the guarantee of algorithm ``name``."""
    if name == "gallai":
        return size == nu
    if name == "karolyi":
        return within_karolyi_bound(size, nu, d)
    if name == "structured":
        return size <= structured_bound(d, nu, False)
    if name == "structured-extremal":
        return size <= structured_bound(d, nu, True)
    if name == "aspect":
        return size <= (14 + 2 * Fraction(r) ** 2) * nu
    if name == "exact-tau":
        return tau is None or size == tau
    raise ValueError(f"unknown algorithm {name!r}")


@dataclass
class RunRecord:
    id: int
    seed: int
    kind: str
    n: int
    d: int
    nu: int | None = None
    tau: int | None = None
    tau_star: Fraction | None = None
    sizes: dict = field(default_factory=dict)
    ok: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    wall_time: float | None = None

    def sandwich_holds(self) -> bool | None:
        """``ν ≤ τ* ≤ τ ≤`` every recorded cover size, over the values present."""
        chain = [v for v in (self.nu, self.tau_star, self.tau) if v is not None]
        if any(a > b for a, b in zip(chain, chain[1:])):
            return False
        lower = self.tau if self.tau is not None else self.tau_star if self.tau_star is not None else self.nu
        if lower is None:
            return None
        return all(s >= lower for s in self.sizes.values())

    def error_text(self) -> str:
        return "; ".join(f"{k}: {v}" for k, v in sorted(self.errors.items()))

    def to_json(self) -> dict:
        out = {
            "id": self.id, "seed": self.seed, "kind": self.kind, "n": self.n, "d": self.d,
            "nu": self.nu, "tau": self.tau,
            "tau_star": None if self.tau_star is None else str(self.tau_star),
            "sizes": dict(self.sizes), "ok": dict(self.ok), "errors": dict(self.errors),
        }
        if self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return out


def _oracles(rec: RunRecord, f: BoxFamily, budget: int, want_tau: bool, want_star: bool):
    try:
        rec.nu = exact_nu(f, budget)[0]
    except BudgetExceeded as exc:
        rec.errors["nu"] = str(exc)
    if want_tau:
        try:
            rec.tau = exact_tau(f, budget)[0]
        except BudgetExceeded as exc:
            rec.errors["tau"] = str(exc)
    if want_star:
        try:
            rec.tau_star = fractional_tau(f, budget).value
        except BudgetExceeded as exc:
            rec.errors["tau_star"] = str(exc)


def run_instance(f: BoxFamily, algos, *, id=0, seed=0, kind="file", r=None, budget: int = DEFAULT_BUDGET,
                 oracles: bool = True, timing: bool = False) -> RunRecord:
    """Run every algorithm in ``algos`` on ``f``; failures are recorded, not raised."""
    start = time.perf_counter()
    rec = RunRecord(id, seed, kind, len(f), f.dim)
    _oracles(rec, f, budget, oracles, oracles)
    for name in algos:
        try:
            cover = run_algorithm(name, f, r, budget)
        except (HypothesisViolation, BudgetExceeded, AssertionError, ValueError) as exc:
            rec.errors[name] = f"{type(exc).__name__}: {exc}"
            rec.ok[name] = False
            continue
        rec.sizes[name] = len(cover)
        if rec.nu is None:
            rec.ok[name] = True
        else:
            rr = r if r is not None else family_aspect(f)
            rec.ok[name] = within_bound(name, len(cover), rec.nu, f.dim, rr, rec.tau)
    if timing:
        rec.wall_time = round(time.perf_counter() - start, 6)
    return rec


@dataclass(frozen=True)
class SweepSpec:
    kind: str
    dim: int
    n: int
    seed: int = 0
    reps: int = 1
    r: object = None
    algos: tuple = ("karolyi",)
    budget: int = DEFAULT_BUDGET
    oracles: bool = True
    timing: bool = False

    def gen_spec(self, seed: int) -> GenSpec:
        return GenSpec(self.kind, self.dim, self.n, seed, r=self.r)


def _sweep_row(args) -> RunRecord:
    spec, i = args
    seed = spec.seed + i
    try:
        f = generate(spec.gen_spec(seed))
    except (BudgetExceeded, HypothesisViolation, ValueError) as exc:
        rec = RunRecord(i, seed, spec.kind, spec.n, spec.dim)
        rec.errors["generate"] = f"{type(exc).__name__}: {exc}"
        return rec
    return run_instance(f, spec.algos, id=i, seed=seed, kind=spec.kind, r=spec.r, budget=spec.budget,
                        oracles=spec.oracles, timing=spec.timing)


def sweep(spec: SweepSpec, jobs: int = 1) -> list:
    """One record per repetition, ordered by instance id."""
    work = [(spec, i) for i in range(spec.reps)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, work))
    else:
        rows = [_sweep_row(w) for w in work]
    return sorted(rows, key=lambda rec: rec.id)


def csv_columns(algos, timing: bool = False) -> list:
    cols = ["id", "seed", "kind", "n", "d", "nu", "tau", "tau_star"]
    for a in algos:
        cols += [f"size_{a}", f"ok_{a}"]
    cols += ["sandwich", "error"]
    if timing:
        cols.append("wall_time")
    return cols


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def to_csv(rows, algos, timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(csv_columns(algos, timing))
    for rec in rows:
        line = [rec.id, rec.seed, rec.kind, rec.n, rec.d, rec.nu, rec.tau, rec.tau_star]
        for a in algos:
            line += [rec.sizes.get(a), rec.ok.get(a)]
        line += [rec.sandwich_holds(), rec.error_text()]
        if timing:
            line.append(rec.wall_time)
        w.writerow([_cell(v) for v in line])
    return buf.getvalue()


def loglog_factor(nu: int) -> float:
    return max(1.0, math.log2(math.log2(nu))) if nu > 2 else 1.0


def summarize(rows, algos, kind: str | None = None) -> dict:
    """Worst observed ratios over successful rows, as exact strings."""
    done = [rec for rec in rows if rec.nu]
    out = {
        "rows": len(rows),
        "failed_rows": sum(1 for rec in rows if rec.errors),
        "max_size_over_nu": {},
        "all_ok": {a: all(rec.ok.get(a, False) for rec in rows) for a in algos},
        "sandwich_ok": all(rec.sandwich_holds() is not False for rec in rows),
    }
    for a in algos:
        ratios = [Fraction(rec.sizes[a], rec.nu) for rec in done if a in rec.sizes]
        out["max_size_over_nu"][a] = str(max(ratios)) if ratios else None
    taus = [Fraction(rec.tau, rec.nu) for rec in done if rec.tau is not None]
    stars = [Fraction(rec.tau_star) / rec.nu for rec in done if rec.tau_star is not None]
    out["max_tau_over_nu"] = str(max(taus)) if taus else None
    out["max_tau_star_over_nu"] = str(max(stars)) if stars else None
    if kind in ("cubes", "corner-intersecting"):
        norm = [rec.tau / (rec.nu * loglog_factor(rec.nu)) for rec in done if rec.tau is not None]
        out["max_tau_over_nu_loglog"] = f"{max(norm):.6f}" if norm else None
    return out


def dumps_summary(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True) + "\n"
