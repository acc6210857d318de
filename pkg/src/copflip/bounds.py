"""Closed-form bounds, the corpus verification runner and its report rows."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Any, Iterable, Iterator, Optional

from .colouring import degeneracy, scol_exact, wcol_exact
from .copgame import copwidth_exact
from .flipgame import flipwidth_exact, lift_cop_strategy, pi_k
from .graph import FamilySpec, Graph, enumerate_labeled_graphs, generate
from .ordering import VertexOrder, order_cost_scol, reach_M
from .strategy import verify_all_robbers

log = logging.getLogger(__name__)

INT64_MAX = (1 << 63) - 1


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------

def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def bound_scol_ktminor(t: int, r: int) -> int:
    """scol_r of a K_t-minor-free graph is at most C(t-1, 2) * (2r + 1)."""
    _need(t >= 2 and r >= 1, "need t >= 2 and r >= 1")
    return comb(t - 1, 2) * (2 * r + 1)


def bound_cw_ktminor(t: int, r: int) -> int:
    _need(t >= 2 and r >= 1, "need t >= 2 and r >= 1")
    return comb(t - 1, 2) * (8 * r + 1)


def bound_scol_gkplanar(g: int, k: int, r: int) -> int:
    _need(g >= 0 and k >= 0 and r >= 1, "need g, k >= 0 and r >= 1")
    return (4 * g + 6) * (k + 1) * (2 * r + 1)


def bound_cw_gkplanar(g: int, k: int, r: int) -> int:
    _need(g >= 0 and k >= 0 and r >= 1, "need g, k >= 0 and r >= 1")
    return (4 * g + 6) * (k + 1) * (8 * r + 1)


def bound_cw_from_wcol(wcol2r: int) -> int:
    _need(wcol2r >= 0, "wcol must be non-negative")
    return wcol2r + 1


def bound_fw_from_cw_kttfree(cw: int, t: int) -> int:
    """cw ** t, refused when it leaves the signed 64-bit range."""
    _need(cw >= 1 and t >= 1, "need cw >= 1 and t >= 1")
    value = cw ** t
    if value > INT64_MAX:
        raise OverflowError(f"{cw}**{t} exceeds 64-bit range")
    return value


def bound_fw_lift(pi: int, k: int) -> int:
    _need(pi >= 0 and k >= 0, "need pi, k >= 0")
    return pi + k


FORMULAS = {
    "scol-ktminor": (bound_scol_ktminor, ("t", "r")),
    "cw-ktminor": (bound_cw_ktminor, ("t", "r")),
    "scol-gkplanar": (bound_scol_gkplanar, ("g", "k", "r")),
    "cw-gkplanar": (bound_cw_gkplanar, ("g", "k", "r")),
    "cw-from-wcol": (bound_cw_from_wcol, ("wcol",)),
    "fw-kttfree": (bound_fw_from_cw_kttfree, ("cw", "t")),
    "fw-lift": (bound_fw_lift, ("pi", "k")),
}


# ---------------------------------------------------------------------------
# report rows
# ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    source: str
    lhs: Optional[int]
    relation: str
    rhs: Optional[int]
    status: str  # pass | fail | degenerate | skipped

    @classmethod
    def compare(cls, name: str, source: str, lhs: Optional[int], rhs: Optional[int],
                relation: str = "<=", degenerate: bool = False) -> "Check":
        if lhs is None or rhs is None:
            status = "skipped"
        elif degenerate:
            status = "degenerate"
        elif relation == "<=":
            status = "pass" if lhs <= rhs else "fail"
        elif relation == "==":
            status = "pass" if lhs == rhs else "fail"
        else:
            raise ValueError(f"unknown relation {relation!r}")
        return cls(name, source, lhs, relation, rhs, status)


@dataclass
class BoundReport:
    graph: str
    family: str
    params: dict[str, Any]
    n: int
    m: int
    r: int
    measured: dict[str, Any] = field(default_factory=dict)
    formulas: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    def sort_key(self) -> tuple:
        return (self.family, self.n, self.graph, self.r)


CSV_COLUMNS = ("graph", "family", "n", "m", "r", "check", "source", "lhs", "relation", "rhs", "status")


def reports_to_csv(reports: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        for c in rep.checks:
            w.writerow([rep.graph, rep.family, rep.n, rep.m, rep.r, c.name, c.source,
                        "" if c.lhs is None else c.lhs, c.relation,
                        "" if c.rhs is None else c.rhs, c.status])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# instances and hypotheses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Limits:
    scol: int = 16
    wcol: int = 8
    cop: int = 8
    strategy: int = 9
    lift: int = 8
    flip: int = 5


@dataclass(frozen=True)
class Instance:
    """A graph plus the structural facts known about it by construction.

    ``minor_t``: K_t-minor-free; ``planar``: (g, k) pair for (g, k)-planarity;
    ``ktt``: K_{t,t}-subgraph-free.
    """

    graph_id: str
    family: str
    params: tuple[tuple[str, Any], ...]
    graph: Graph
    minor_t: Optional[int] = None
    planar: Optional[tuple[int, int]] = None
    ktt: Optional[int] = None


def family_instance(spec: FamilySpec) -> Instance:
    g = generate(spec)
    fam = spec.family
    minor_t = planar = ktt = None
    if fam == "path":
        minor_t, planar, ktt = 3, (0, 0), 2
    elif fam == "cycle":
        minor_t, planar = 4, (0, 0)
    elif fam == "complete":
        minor_t = spec.n + 1
        planar = (0, 0) if spec.n <= 4 else None
    elif fam == "complete-bipartite":
        ktt = min(spec.a, spec.b) + 1
        planar = (0, 0) if min(spec.a, spec.b) <= 2 else None
        # stars are forests, K_{2,b} has treewidth 2
        minor_t = {1: 3, 2: 4}.get(min(spec.a, spec.b))
    elif fam in ("grid", "apollonian"):
        minor_t, planar = 5, (0, 0)
    elif fam == "hypercube" and spec.n <= 3:
        minor_t, planar = 5, (0, 0)
    if ktt is None and g.n < 6:
        ktt = 3
    params = tuple(sorted((k, v) for k, v in asdict(spec).items() if k != "family"))
    return Instance(spec.label(), fam, params, g, minor_t, planar, ktt)


def labeled_instances(max_n: int, min_n: int = 1) -> Iterator[Instance]:
    """All labeled graphs; a graph on n vertices is K_{n+1}-minor-free and,
    below 6 vertices, K_{3,3}-subgraph-free."""
    for n in range(min_n, max_n + 1):
        for code, g in enumerate(enumerate_labeled_graphs(n)):
            yield Instance(f"labeled(n={n},code={code})", "labeled", (("code", code), ("n", n)), g,
                           minor_t=n + 1, ktt=3 if n < 6 else None)


# ---------------------------------------------------------------------------
# measurement
# ---------------------------------------------------------------------------

def max_mset(g: Graph, order: VertexOrder, r: int) -> int:
    """max over i <= j of |M(v_i, v_j, 2r)|."""
    best = 0
    seq = order.seq
    for i in range(len(seq)):
        for j in range(i, len(seq)):
            best = max(best, reach_M(g, order, seq[i], seq[j], 2 * r).bit_count())
    return best


def _guarded(skipped: list[str], what: str, fn, *args):
    # a solver guard trips: record the skip, keep going with the rest
    try:
        return fn(*args)
    except ValueError as exc:
        log.info("%s skipped: %s", what, exc)
        skipped.append(what)
        return None


def measure(inst: Instance, r: int, limits: Limits = Limits()) -> BoundReport:
    g = inst.graph
    n = g.n
    rep = BoundReport(inst.graph_id, inst.family, dict(inst.params), n, g.m, r)
    meas, forms, checks = rep.measured, rep.formulas, rep.checks

    scol4 = scol1 = order = None
    if n <= limits.scol:
        scol4, order = scol_exact(g, 4 * r)
        scol1, _ = scol_exact(g, 1)
        meas["scol_4r"] = scol4
        meas["scol_4r_order"] = list(order.seq)
        meas["scol_1"] = scol1
    degen, _ = degeneracy(g)
    meas["degeneracy"] = degen
    checks.append(Check.compare("scol_1 == degeneracy + 1", "degeneracy-identity", scol1, degen + 1, "=="))

    skipped: list[str] = []
    wcol2 = _guarded(skipped, "wcol_2r", wcol_exact, g, 2 * r) if n <= limits.wcol else None
    wcol2 = None if wcol2 is None else wcol2[0]
    meas["wcol_2r"] = wcol2
    cw = _guarded(skipped, "cw_r", copwidth_exact, g, r) if n <= limits.cop else None
    meas["cw_r"] = cw

    checks.append(Check.compare("cw_r <= scol_4r", "cops-vs-scol", cw, scol4))
    checks.append(Check.compare("cw_r <= wcol_2r + 1", "wcol-cop-bound", cw,
                                None if wcol2 is None else bound_cw_from_wcol(wcol2)))

    strat = None
    if order is not None:
        checks.append(Check.compare("max |M(v_i,v_j,2r)| <= cost_4r", "mset-size",
                                    max_mset(g, order, r), order_cost_scol(g, order, 4 * r)))
        if n <= limits.strategy:
            strat = _guarded(skipped, "strategy", verify_all_robbers, g, order, r)
        if strat is not None:
            meas["strategy"] = {"ok": strat.ok, "max_cops": strat.max_cops,
                                "rounds_worst_case": strat.max_rounds, "invariants": strat.invariants}
            checks.append(Check.compare("strategy ok", "cops-vs-scol", int(strat.ok), 1, "=="))
            checks.append(Check.compare("strategy cops <= scol_4r", "cops-vs-scol", strat.max_cops, scol4))
            checks.append(Check.compare("strategy rounds <= n - 1", "cops-vs-scol", strat.max_rounds, n - 1))

    fw = None
    if n <= limits.flip:
        fw = _guarded(skipped, "fw_r", flipwidth_exact, g, r)
        meas["fw_r"] = fw if fw is not None else ">2"
        if inst.family == "complete":
            checks.append(Check.compare("fw_r == 1 on complete graphs", "complete-flip", fw, 1, "=="))
    if cw is not None:
        pk = pi_k(g, cw)
        meas["pi_cw"] = pk
        meas["pi_cw_ratio"] = round(pk / cw, 6)
        lift_bound = bound_fw_lift(pk, cw)
        forms["fw_lift"] = lift_bound
        if n <= limits.flip:
            if fw is not None:
                checks.append(Check.compare("fw_r <= pi(cw) + cw", "flip-lift", fw, lift_bound))
            elif lift_bound <= 2:
                # flipper loses with 2 flips, yet the bound promises <= 2
                checks.append(Check("fw_r <= pi(cw) + cw", "flip-lift", 3, "<=", lift_bound, "fail"))
            else:
                checks.append(Check("fw_r <= pi(cw) + cw", "flip-lift", None, "<=", lift_bound, "skipped"))
        if inst.ktt is not None:
            try:
                kt = bound_fw_from_cw_kttfree(cw, inst.ktt)
            except OverflowError:
                kt = None
            forms["fw_kttfree"] = kt
            if n <= limits.flip and (fw is not None or (kt is not None and kt <= 2)):
                checks.append(Check.compare("fw_r <= cw_r ** t", "kttfree-fw", 3 if fw is None else fw, kt))
    lift = _guarded(skipped, "lift", lift_cop_strategy, g, order, r) \
        if order is not None and n <= limits.lift else None
    if lift is not None:
        k_used = lift.max_cops
        meas["lift"] = {"ok": lift.ok, "max_width": lift.max_width, "max_cops": k_used,
                        "rounds_worst_case": lift.max_rounds}
        checks.append(Check.compare("lift ok", "flip-lift", int(lift.ok), 1, "=="))
        checks.append(Check.compare("lift width <= pi(k) + k", "flip-lift", lift.max_width,
                                    bound_fw_lift(pi_k(g, k_used), k_used)))

    if inst.minor_t is not None:
        t = inst.minor_t
        degenerate = comb(t - 1, 2) == 0
        forms["scol_ktminor_4r"] = bound_scol_ktminor(t, 4 * r)
        forms["cw_ktminor"] = bound_cw_ktminor(t, r)
        checks.append(Check.compare("scol_4r <= C(t-1,2)(8r+1)", "ktminor-scol", scol4,
                                    forms["scol_ktminor_4r"], degenerate=degenerate))
        checks.append(Check.compare("cw_r <= C(t-1,2)(8r+1)", "ktminor-cw", cw,
                                    forms["cw_ktminor"], degenerate=degenerate))
        if strat is not None:
            checks.append(Check.compare("strategy cops <= K_t-minor cw bound", "ktminor-cw",
                                        strat.max_cops, forms["cw_ktminor"], degenerate=degenerate))
    if inst.planar is not None:
        gg, kk = inst.planar
        forms["scol_gkplanar_4r"] = bound_scol_gkplanar(gg, kk, 4 * r)
        forms["cw_gkplanar"] = bound_cw_gkplanar(gg, kk, r)
        checks.append(Check.compare("scol_4r <= (4g+6)(k+1)(8r+1)", "gkplanar-scol", scol4,
                                    forms["scol_gkplanar_4r"]))
        checks.append(Check.compare("cw_r <= (4g+6)(k+1)(8r+1)", "gkplanar-cw", cw, forms["cw_gkplanar"]))
        if strat is not None:
            checks.append(Check.compare("strategy cops <= (g,k)-planar cw bound", "gkplanar-cw",
                                        strat.max_cops, forms["cw_gkplanar"]))
    if skipped:
        meas["guard_skipped"] = skipped
    return rep


def _measure_star(args: tuple) -> BoundReport:
    return measure(*args)


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

@dataclass
class VerifyConfig:
    radii: tuple[int, ...] = (1, 2)
    labeled_max_n: int = 0
    families: tuple[FamilySpec, ...] = ()
    limits: Limits = Limits()
    jobs: int = 1

    @classmethod
    def from_dict(cls, d: dict) -> "VerifyConfig":
        known = {"radii", "labeled_max_n", "families", "limits", "jobs"}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        fams = []
        for f in d.get("families", []):
            if "family" not in f:
                raise ValueError(f"family entry without 'family': {f}")
            fams.append(FamilySpec(**f))
        radii = tuple(d.get("radii", (1, 2)))
        if not radii or any(not isinstance(r, int) or r < 1 for r in radii):
            raise ValueError("radii must be a non-empty list of positive integers")
        return cls(radii, int(d.get("labeled_max_n", 0)), tuple(fams),
                   Limits(**d.get("limits", {})), int(d.get("jobs", 1)))


def instances(config: VerifyConfig) -> list[Instance]:
    out = list(labeled_instances(config.labeled_max_n)) if config.labeled_max_n else []
    out.extend(family_instance(spec) for spec in config.families)
    return out


def run_verification(config: VerifyConfig) -> list[BoundReport]:
    """Measure every (instance, radius) pair; rows come back sorted."""
    tasks = [(inst, r, config.limits) for inst in instances(config) for r in config.radii]
    log.info("verifying %d instance/radius pairs", len(tasks))
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            reports = list(pool.map(_measure_star, tasks, chunksize=16))
    else:
        reports = [measure(*t) for t in tasks]
    reports.sort(key=BoundReport.sort_key)
    return reports


def summarize(reports: Iterable[BoundReport]) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for rep in reports:
        for c in rep.checks:
            bucket = out.setdefault(c.name, {})
            bucket[c.status] = bucket.get(c.status, 0) + 1
    return dict(sorted(out.items()))
