"""Seeded, parallel Monte Carlo engine for type-I-error and power studies.

Each replication r owns an independent counter-based stream keyed by
mix64(seed, r) feeding a Philox generator, so results are bitwise
identical for any worker count and any chunking of the replication range.
Within a replication the draw order is fixed: per subject, entry-time
uniform, event-time uniform, then the random-censoring uniform when the
scheme has one.

Replications are processed in fixed-size chunks.  A chunk draws its
uniforms stream by stream, then computes every replication's Kaplan-Meier
estimate and Greenwood sum at the analysis time with vectorized
arithmetic: observations are sorted by time with events preceding
censorings at ties, and processing events one at a time in that order
reproduces the grouped product-limit and Greenwood formulas exactly.  All
five transformations are tested on the same fit.
"""

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import design as dsg
from .errors import DomainError
from .normal import norm_ppf
from .presets import STUDIES
from .surv_model import CensoringScheme, ParametricSurvival, hazard_from_survival
from .transforms import ALL_KINDS, TransformKind, direction, transform

CHUNK = 4096

_MASK64 = (1 << 64) - 1


def mix64(seed: int, r: int) -> int:
    """Derive the 64-bit stream key for replication r (splitmix64 finalizer)."""
    x = (seed ^ (r * 0x9E3779B97F4A7C15)) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def replication_rng(seed: int, r: int) -> np.random.Generator:
    """The RNG stream owned by replication r."""
    return np.random.Generator(np.random.Philox(key=mix64(seed, r)))


@dataclass(frozen=True)
class Scenario:
    """One simulation cell: generating law, scheme, test settings, and n."""

    family: str
    shape: float
    s0: float
    s1: float
    t: float
    accrual: float
    followup: float
    random_fraction: float
    alpha: float
    n: int

    def __post_init__(self):
        for name, s in (("s0", self.s0), ("s1", self.s1)):
            if not 0.0 < s < 1.0:
                raise DomainError(f"{name} must be in (0, 1), got {s}")
        if self.n < 1:
            raise DomainError(f"sample size must be at least 1, got {self.n}")
        if not 0.0 < self.alpha < 0.5:
            raise DomainError(f"alpha must be in (0, 0.5), got {self.alpha}")
        if not self.t < self.accrual + self.followup:
            raise DomainError("analysis time must precede accrual+followup")

    @property
    def truth(self) -> str:
        """Null when data are generated at s0, alternative otherwise."""
        return "null" if self.s1 == self.s0 else "alternative"

    def generating_dist(self) -> ParametricSurvival:
        return ParametricSurvival(hazard_from_survival(self.shape, self.s1, self.t),
                                  self.shape)

    def scheme(self) -> CensoringScheme:
        return CensoringScheme(self.accrual, self.followup, self.random_fraction)


@dataclass(frozen=True)
class SimResult:
    counts: dict[str, int]
    reps: int
    seed: int

    @property
    def p_hat(self) -> dict[str, float]:
        return {k: c / self.reps for k, c in self.counts.items()}

    @property
    def mc_se(self) -> dict[str, float]:
        return {k: math.sqrt(p * (1.0 - p) / self.reps)
                for k, p in self.p_hat.items()}


def _km_at_time(obs: np.ndarray, event: np.ndarray, t: float):
    """Vectorized S_hat(t) and Greenwood sum per row of (reps, n) arrays."""
    n = obs.shape[1]
    order = np.lexsort((~event, obs), axis=-1)
    obs_s = np.take_along_axis(obs, order, axis=1)
    ev_s = np.take_along_axis(event, order, axis=1)
    mask = ev_s & (obs_s <= t)
    at_risk = (n - np.arange(n)).astype(np.float64)
    ratio = (at_risk - 1.0) / at_risk
    gterm = np.where(at_risk > 1.0, 1.0 / (at_risk * np.maximum(at_risk - 1.0, 1.0)), 0.0)
    s_hat = np.where(mask, ratio, 1.0).prod(axis=1)
    g_sum = np.where(mask, gterm, 0.0).sum(axis=1)
    return s_hat, g_sum


def _g_np(kind: TransformKind, s: np.ndarray) -> np.ndarray:
    if kind is TransformKind.IDENTITY:
        return s
    if kind is TransformKind.LOG:
        return np.log(s)
    if kind is TransformKind.LOGLOG:
        return np.log(-np.log(s))
    if kind is TransformKind.LOGIT:
        return np.log(s / (1.0 - s))
    return np.arcsin(np.sqrt(s))


def _abs_gprime_np(kind: TransformKind, s: np.ndarray) -> np.ndarray:
    if kind is TransformKind.IDENTITY:
        return np.ones_like(s)
    if kind is TransformKind.LOG:
        return 1.0 / s
    if kind is TransformKind.LOGLOG:
        return np.abs(1.0 / (s * np.log(s)))
    if kind is TransformKind.LOGIT:
        return 1.0 / (s * (1.0 - s))
    return 1.0 / (2.0 * np.sqrt(s * (1.0 - s)))


def _chunk_counts(scenario: Scenario, seed: int, lo: int, hi: int) -> dict[str, int]:
    """Rejection counts per transformation for replications [lo, hi)."""
    n = scenario.n
    dist = scenario.generating_dist()
    k, lam = dist.shape, dist.rate
    p = scenario.random_fraction
    rho = p / (1.0 - p) if p > 0.0 else 0.0
    draws = 3 if p > 0.0 else 2
    m = hi - lo

    u = np.empty((m, n, draws))
    bg = np.random.Philox(key=0)
    gen = np.random.Generator(bg)
    state = bg.state
    for j in range(m):
        # equivalent to replication_rng(seed, lo + j), reusing one bit generator
        state["state"]["key"][0] = mix64(seed, lo + j)
        state["state"]["key"][1] = 0
        state["state"]["counter"][:] = 0
        state["buffer_pos"] = 4
        state["has_uint32"] = 0
        state["uinteger"] = 0
        bg.state = state
        u[j] = gen.random((n, draws))

    entry = scenario.accrual * u[:, :, 0]
    horizon = (scenario.accrual + scenario.followup) - entry
    with np.errstate(divide="ignore"):
        x = (-np.log(u[:, :, 1])) ** (1.0 / k) / lam
    if p > 0.0:
        with np.errstate(divide="ignore"):
            u_cens = (-np.log(u[:, :, 2]) / rho) ** (1.0 / k) / lam
        limit = np.minimum(u_cens, horizon)
    else:
        limit = horizon
    event = x <= limit
    obs = np.where(event, x, limit)

    s_hat, g_sum = _km_at_time(obs, event, scenario.t)
    var = s_hat * s_hat * g_sum

    z_crit = norm_ppf(1.0 - scenario.alpha)
    at_one = s_hat >= 1.0
    interior = ~at_one & (s_hat > 0.0) & (var > 0.0)
    n_at_one = int(at_one.sum())
    s_int = s_hat[interior]
    sd_int = np.sqrt(var[interior])
    counts = {}
    for kind in ALL_KINDS:
        g0 = transform(kind, scenario.s0)
        z = direction(kind) * (_g_np(kind, s_int) - g0) \
            / (_abs_gprime_np(kind, s_int) * sd_int)
        counts[kind.value] = n_at_one + int((z > z_crit).sum())
    return counts


def simulate(scenario: Scenario, reps: int, seed: int,
             workers: int = 1) -> SimResult:
    """Estimate per-transformation rejection rates over seeded replications."""
    if reps < 1:
        raise DomainError(f"replication count must be at least 1, got {reps}")
    if workers < 1:
        raise DomainError(f"worker count must be at least 1, got {workers}")
    bounds = [(lo, min(lo + CHUNK, reps)) for lo in range(0, reps, CHUNK)]
    totals = {kind.value: 0 for kind in ALL_KINDS}
    if workers == 1 or len(bounds) == 1:
        partials = (_chunk_counts(scenario, seed, lo, hi) for lo, hi in bounds)
        for part in partials:
            for key, c in part.items():
                totals[key] += c
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_chunk_counts, scenario, seed, lo, hi)
                       for lo, hi in bounds]
            for fut in futures:
                for key, c in fut.result().items():
                    totals[key] += c
    return SimResult(counts=totals, reps=reps, seed=seed)


def run_power_cell(spec: dsg.DesignSpec, method: str, reps: int, seed: int,
                   workers: int = 1) -> tuple[int, SimResult]:
    """Size the design with the given formula, then simulate at that n."""
    result = dsg.sample_size(spec, method)
    scenario = Scenario(family=spec.family, shape=spec.shape, s0=spec.s0,
                        s1=spec.s1, t=spec.t, accrual=spec.scheme.accrual,
                        followup=spec.scheme.followup,
                        random_fraction=spec.scheme.random_fraction,
                        alpha=spec.alpha, n=result.n)
    return result.n, simulate(scenario, reps, seed, workers)


# ---------------------------------------------------------------------------
# Published table grids
# ---------------------------------------------------------------------------

_FAMILIES = {"exp": ("exponential", 1.0), "w05": ("weibull", 0.5),
             "w2": ("weibull", 2.0)}

_T1_SETTINGS = dict(t=12.0, accrual=24.0, followup=12.0, alpha=0.05)
_T1_N = (25, 50, 100)
_T1_S0 = (0.1, 0.3, 0.5, 0.7, 0.9)

_POWER_ROWS = ((0.1, 0.2), (0.4, 0.5), (0.7, 0.8))
_POWER_SETTINGS = dict(t=12.0, accrual=24.0)
_SUPP_AB = ((0.05, 0.80), (0.10, 0.80), (0.05, 0.90), (0.10, 0.90))

TABLE_IDS = ("T1", "T2", "T3", "S1", "S2", "S3", "S4", "S5", "S6", "S7")

CSV_COLUMNS = ("table", "cell", "family", "shape", "b", "s0", "s1", "alpha",
               "power", "censor_frac", "n_identity", "n_log", "n_existing",
               "n_loglog", "n_logit", "n_arcsin", "phat_identity", "phat_log",
               "phat_existing", "phat_loglog", "phat_logit", "phat_arcsin",
               "reps", "seed")


def _type1_cells(table: str, p: float):
    for fam_key, (family, shape) in _FAMILIES.items():
        for n in _T1_N:
            for s0 in _T1_S0:
                yield {"table": table, "kind": "type1", "family": family,
                       "shape": shape, "n": n, "s0": s0, "s1": s0,
                       "censor_frac": p, "b": _T1_SETTINGS["followup"],
                       "t": _T1_SETTINGS["t"], "a": _T1_SETTINGS["accrual"],
                       "alpha": _T1_SETTINGS["alpha"], "power": None,
                       "cell": f"{table}:{fam_key}:n={n}:s0={s0:g}"}


def _power_cells(table: str, family_key: str, p_list, b_list, ab_list):
    family, shape = _FAMILIES[family_key]
    for p in p_list:
        for b in b_list:
            for s0, s1 in _POWER_ROWS:
                for alpha, power in ab_list:
                    cens = "with" if p > 0 else "without"
                    yield {"table": table, "kind": "power", "family": family,
                           "shape": shape, "s0": s0, "s1": s1,
                           "censor_frac": p, "b": float(b),
                           "t": _POWER_SETTINGS["t"], "a": _POWER_SETTINGS["accrual"],
                           "alpha": alpha, "power": power,
                           "cell": (f"{table}:{family_key}:{cens}:b={b:g}:s0={s0:g}"
                                    f":a={alpha:g}:pw={power:g}")}


def _t3_cells():
    for row in STUDIES:
        yield {"table": "T3", "kind": "power", "family": "exponential",
               "shape": 1.0, "s0": row["s0"], "s1": row["s1"],
               "censor_frac": 0.0, "b": row["b"], "t": row["t"], "a": row["a"],
               "alpha": row["alpha"], "power": row["power"],
               "cell": f"T3:study-{row['study']}"}


def table_cells(table_id: str):
    """The exact scenario grid of a published table."""
    if table_id == "T1":
        return list(_type1_cells("T1", 0.0))
    if table_id == "S1":
        return list(_type1_cells("S1", 0.2))
    if table_id == "T2":
        return list(_power_cells("T2", "exp", (0.0, 0.2), (12, 6), ((0.05, 0.80),)))
    if table_id == "T3":
        return list(_t3_cells())
    if table_id in ("S2", "S3", "S4"):
        fam = {"S2": "exp", "S3": "w05", "S4": "w2"}[table_id]
        return list(_power_cells(table_id, fam, (0.0,), (12, 6), _SUPP_AB))
    if table_id in ("S5", "S6", "S7"):
        fam = {"S5": "exp", "S6": "w05", "S7": "w2"}[table_id]
        return list(_power_cells(table_id, fam, (0.2,), (12, 6), _SUPP_AB))
    raise DomainError(f"unknown table {table_id!r}; expected one of {', '.join(TABLE_IDS)}")


_N_COLS = ("n_identity", "n_log", "n_existing", "n_loglog", "n_logit", "n_arcsin")
_P_COLS = ("phat_identity", "phat_log", "phat_existing", "phat_loglog",
           "phat_logit", "phat_arcsin")
_COL_KINDS = (TransformKind.IDENTITY, TransformKind.LOG, None,
              TransformKind.LOGLOG, TransformKind.LOGIT, TransformKind.ARCSIN)


def _cell_scenario(cell: dict, n: int) -> Scenario:
    return Scenario(family=cell["family"], shape=cell["shape"], s0=cell["s0"],
                    s1=cell["s1"], t=cell["t"], accrual=cell["a"],
                    followup=cell["b"], random_fraction=cell["censor_frac"],
                    alpha=cell["alpha"], n=n)


def _run_cell(cell: dict, cell_index: int, reps: int, seed: int, workers: int,
              design_only: bool) -> dict:
    row = {key: cell.get(key) for key in
           ("table", "cell", "family", "shape", "b", "s0", "s1", "alpha",
            "power", "censor_frac")}
    row["reps"] = None if design_only else reps
    row["seed"] = None if design_only else seed
    cell_seed = mix64(seed, cell_index)
    if cell["kind"] == "type1":
        for col in _N_COLS:
            row[col] = cell["n"] if col != "n_existing" else None
        for col in _P_COLS:
            row[col] = None
        if not design_only:
            sim = simulate(_cell_scenario(cell, cell["n"]), reps, cell_seed, workers)
            for col, kind in zip(_P_COLS, _COL_KINDS):
                row[col] = None if kind is None else sim.p_hat[kind.value]
        return row
    scheme = CensoringScheme(cell["a"], cell["b"], cell["censor_frac"])
    for col_index, (col, pcol, kind) in enumerate(zip(_N_COLS, _P_COLS, _COL_KINDS)):
        method = dsg.EXISTING if kind is None else dsg.PROPOSED
        spec = dsg.DesignSpec(s0=cell["s0"], s1=cell["s1"], t=cell["t"],
                              alpha=cell["alpha"], beta=1.0 - cell["power"],
                              kind=kind or TransformKind.LOG, scheme=scheme,
                              family=cell["family"], shape=cell["shape"])
        n = dsg.sample_size(spec, method).n
        row[col] = n
        if design_only:
            row[pcol] = None
        else:
            sim = simulate(_cell_scenario(cell, n), reps, mix64(cell_seed, col_index),
                           workers)
            row[pcol] = sim.p_hat[(kind or TransformKind.LOG).value]
    return row


def run_table(table_id: str, reps: int, seed: int, workers: int = 1,
              cell_filter: Optional[str] = None) -> list[dict]:
    """Reproduce one published table; rows carry sample sizes and p_hat per kind.

    ``cell_filter`` either selects cells whose id contains the given
    substring or, with the special value "design-only", skips simulation
    and emits the deterministic columns alone.
    """
    design_only = cell_filter == "design-only"
    if not design_only and reps < 1:
        raise DomainError(f"replication count must be at least 1, got {reps}")
    rows = []
    for index, cell in enumerate(table_cells(table_id)):
        if cell_filter and not design_only and cell_filter not in cell["cell"]:
            continue
        rows.append(_run_cell(cell, index, reps, seed, workers, design_only))
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    """Render table rows with the fixed CSV column order."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: ("" if row.get(key) is None else row[key])
                         for key in CSV_COLUMNS})
    return buf.getvalue()
