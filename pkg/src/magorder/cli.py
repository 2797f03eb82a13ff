"""Command-line experiment harness.

Subcommands: ``run`` executes replicated learn-and-score experiments
from a JSON config and/or flags and writes a versioned JSON report;
``selfcheck`` runs the built-in oracle property suite; ``gen`` emits a
synthetic instance to files; ``score`` compares two edge-list graphs.
Exit codes: 0 success, 1 check/run failure, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import t as student_t

from .ci import DataMatrix, FisherZCiTester, OracleCiTester
from .data import (
    bundled_networks,
    erdos_renyi_dag,
    load_bundled,
    load_network,
    make_latent_instance,
    random_sem,
    sample_sem,
    save_data,
    save_network,
    score,
    standardize_sem,
)
from .discovery import NeighborFinder, cost_vector, learn_skeleton, orient
from .errors import ConfigError, EdgeListParseError, OrientationConflict
from .graph import MixedGraph, bits, is_maximal, m_separated, mask_of
from .orders import enumerate_c_orders, enumerate_r_orders, is_r_order
from .search import HcConfig, hill_climb, policy_gradient, value_iteration

SCHEMA_VERSION = 1

GRAPH_KINDS = ("er", "file", "bundled")
TESTER_KINDS = ("oracle", "fisher_z")
SEARCHER_KINDS = ("hc", "vi", "pg")


# -- configuration -----------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: graph source, tester, searcher, replication plan.

    The three variant parts are plain dicts with a ``kind`` key so the
    whole config round-trips through JSON unchanged.
    """

    graph: dict
    tester: dict = field(default_factory=lambda: {"kind": "oracle"})
    searcher: dict = field(default_factory=lambda: {"kind": "hc"})
    latent: dict | None = None
    replications: int = 1
    seed: int = 0
    workers: int = 1
    max_sep_size: int | None = None
    output: str | None = None

    def __post_init__(self):
        if self.graph.get("kind") not in GRAPH_KINDS:
            raise ConfigError(f"graph kind must be one of {GRAPH_KINDS}")
        kind = self.graph["kind"]
        if kind == "er":
            n, p = self.graph.get("n"), self.graph.get("p")
            if not isinstance(n, int) or n < 1:
                raise ConfigError("er graph needs a positive integer n")
            if p is None or not 0 <= p <= 1:
                raise ConfigError("er graph needs p in [0, 1]")
        elif kind == "file":
            if not self.graph.get("path"):
                raise ConfigError("file graph needs a path")
        elif not self.graph.get("name"):
            raise ConfigError("bundled graph needs a name")
        if self.tester.get("kind") not in TESTER_KINDS:
            raise ConfigError(f"tester kind must be one of {TESTER_KINDS}")
        if self.tester["kind"] == "fisher_z":
            alpha = self.tester.get("alpha", 0.01)
            if not 0 < alpha < 1:
                raise ConfigError("alpha must be in (0, 1)")
            num = self.tester.get("num_samples")
            if num is not None and (not isinstance(num, int) or num < 1):
                raise ConfigError("num_samples must be a positive integer")
            if not isinstance(self.tester.get("standardize", False), bool):
                raise ConfigError("standardize must be a boolean")
        if self.searcher.get("kind") not in SEARCHER_KINDS:
            raise ConfigError(
                f"searcher kind must be one of {SEARCHER_KINDS}")
        if self.latent is not None:
            frac, count = self.latent.get("fraction"), self.latent.get(
                "count")
            if (frac is None) == (count is None):
                raise ConfigError(
                    "latent spec needs exactly one of fraction or count")
            if frac is not None and not 0 <= frac < 1:
                raise ConfigError("latent fraction must lie in [0, 1)")
            if count is not None and (not isinstance(count, int)
                                      or count < 0):
                raise ConfigError("latent count must be a nonnegative int")
        if self.replications < 1:
            raise ConfigError("replications must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.max_sep_size is not None and self.max_sep_size < 0:
            raise ConfigError("max_sep_size must be nonnegative")

    @classmethod
    def from_dict(cls, raw):
        known = {"graph", "tester", "searcher", "latent", "replications",
                 "seed", "workers", "max_sep_size", "output"}
        extra = set(raw) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        if "graph" not in raw:
            raise ConfigError("config needs a graph section")
        return cls(**raw)

    def to_dict(self):
        return {"graph": dict(self.graph), "tester": dict(self.tester),
                "searcher": dict(self.searcher),
                "latent": dict(self.latent) if self.latent else None,
                "replications": self.replications, "seed": self.seed,
                "workers": self.workers, "max_sep_size": self.max_sep_size,
                "output": self.output}


def _build_graph(config, seed):
    kind = config.graph["kind"]
    if kind == "er":
        return erdos_renyi_dag(config.graph["n"], config.graph["p"],
                               seed=seed)
    if kind == "file":
        return load_network(config.graph["path"],
                            manifest=config.graph.get("manifest"))
    return load_bundled(config.graph["name"])


# -- one replication ---------------------------------------------------------

def _run_replication(config, index, seed_seq):
    started = time.perf_counter()
    row = {"index": index, "error": None, "metrics": None, "cost": None,
           "trace": None, "ci_tests": None, "order": None,
           "orientation_conflict": None, "wall_clock": None}
    try:
        streams = seed_seq.spawn(5)
        graph_seed, latent_seed, sem_seed, data_seed, search_seed = streams
        base = _build_graph(config, graph_seed)
        truth, observed = base, tuple(range(base.n))
        if config.latent is not None:
            truth, observed = make_latent_instance(
                base, config.latent.get("fraction", 0.0), seed=latent_seed,
                num_latent=config.latent.get("count"))
        tester = _build_tester(config, base, truth, observed,
                               sem_seed, data_seed)
        order, skeleton, trace = _search(
            config, tester, truth.n, search_seed)
        try:
            orient(skeleton, names=truth.names)
        except OrientationConflict as exc:
            row["orientation_conflict"] = str(exc)
        row["metrics"] = score(skeleton, truth).as_dict()
        row["cost"] = skeleton.cost()
        row["trace"] = trace
        row["ci_tests"] = tester.query_count
        row["order"] = list(order)
    except Exception as exc:  # recorded, run continues
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["wall_clock"] = time.perf_counter() - started
    return row


def _build_tester(config, base, truth, observed, sem_seed, data_seed):
    if config.tester["kind"] == "oracle":
        return OracleCiTester(truth)
    if base.bidirected or not base.is_dag():
        raise ConfigError("fisher_z needs a DAG graph source")
    spec = random_sem(base, seed=sem_seed)
    if config.tester.get("standardize", False):
        spec = standardize_sem(spec)
    num = config.tester.get("num_samples") or 50 * len(observed)
    data = sample_sem(spec, num, seed=data_seed)
    values = data.values[:, observed]
    names = None
    if data.names is not None:
        names = tuple(data.names[i] for i in observed)
    return FisherZCiTester(DataMatrix(values, names),
                           alpha=config.tester.get("alpha", 0.01))


def _search(config, tester, n, search_seed):
    finder = NeighborFinder(tester, config.max_sep_size)
    spec = config.searcher
    kind = spec["kind"]
    if kind == "hc":
        cfg = HcConfig(
            max_iter=spec.get("max_iter", 20),
            max_swap=min(spec.get("max_swap", 10), n - 1),
            initializer=spec.get("initializer", "mb_size_sort"),
            seed=int(search_seed.generate_state(1)[0]))
        res = hill_climb(tester, cfg, finder=finder)
        return res.order, res.skeleton, [cost for _, cost, _ in res.trace]
    if kind == "vi":
        res = value_iteration(tester, cap=spec.get("cap", 20),
                              finder=finder)
        skeleton = learn_skeleton(res.order, tester, finder=finder)
        return res.order, skeleton, [res.total_cost]
    res = policy_gradient(
        tester,
        episodes=spec.get("episodes", 500),
        learning_rate=spec.get("learning_rate", 0.5),
        seed=int(search_seed.generate_state(1)[0]),
        batch_size=spec.get("batch_size", 10),
        num_buckets=spec.get("num_buckets", 4),
        temperature=spec.get("temperature", 1.0),
        finder=finder)
    skeleton = learn_skeleton(res.order, tester, finder=finder)
    return res.order, skeleton, [-r for r in res.rewards]


def _run_replication_args(packed):
    return _run_replication(*packed)


# -- the run command ---------------------------------------------------------

def _mean_ci(values):
    k = len(values)
    if k == 0:
        return None
    mean = float(np.mean(values))
    if k == 1:
        return {"mean": mean, "ci80": None}
    half = float(student_t.ppf(0.90, k - 1)
                 * np.std(values, ddof=1) / np.sqrt(k))
    return {"mean": mean, "ci80": [mean - half, mean + half]}


def _aggregate(rows):
    good = [r for r in rows if r["error"] is None]
    out = {"replications": len(rows), "failures": len(rows) - len(good)}
    for key in ("shd", "f1", "precision", "recall"):
        out[key] = _mean_ci([r["metrics"][key] for r in good])
    out["cost"] = _mean_ci([r["cost"] for r in good])
    out["ci_tests"] = _mean_ci([r["ci_tests"] for r in good])
    out["wall_clock"] = _mean_ci([r["wall_clock"] for r in good])
    return out


@dataclass
class RunReport:
    config: dict
    rows: list
    aggregate: dict
    elapsed: float
    schema_version: int = SCHEMA_VERSION

    def to_dict(self):
        return {"schema_version": self.schema_version,
                "config": self.config, "replications": self.rows,
                "aggregate": self.aggregate, "elapsed": self.elapsed}

    def summary_text(self):
        agg = self.aggregate
        lines = [f"replications: {agg['replications']} "
                 f"(failures: {agg['failures']})"]
        for key in ("shd", "f1", "precision", "recall", "cost", "ci_tests"):
            stats = agg[key]
            if stats is None:
                lines.append(f"{key:>10}: n/a")
                continue
            text = f"{key:>10}: {stats['mean']:.4f}"
            if stats["ci80"] is not None:
                lo, hi = stats["ci80"]
                text += f"  (80% CI {lo:.4f} .. {hi:.4f})"
            lines.append(text)
        for row in self.rows:
            if row["error"] is not None:
                lines.append(f"rep {row['index']} failed: {row['error']}")
        return "\n".join(lines)


def run(config):
    """Execute all replications of ``config`` and return a RunReport.

    Replication seeds are spawned from the master seed by index, so
    reports are identical across runs and worker counts (wall-clock
    fields aside).  A failed replication is recorded in its row and the
    remaining replications still run.
    """
    started = time.perf_counter()
    children = np.random.SeedSequence(config.seed).spawn(
        config.replications)
    jobs = [(config, i, child) for i, child in enumerate(children)]
    if config.workers == 1:
        rows = [_run_replication(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_run_replication_args, jobs))
    rows.sort(key=lambda r: r["index"])
    return RunReport(config=config.to_dict(), rows=rows,
                     aggregate=_aggregate(rows),
                     elapsed=time.perf_counter() - started)


# -- selfcheck ---------------------------------------------------------------

def _unshielded_colliders(g):
    out = set()
    for v in range(g.n):
        pa = list(bits(g.parents_mask(v)))
        for i, a in enumerate(pa):
            for b in pa[i + 1:]:
                if not g.has_skeleton_edge(a, b):
                    out.add((a, v, b))
    return out


def _dag_mec(g):
    edges = sorted(g.skeleton_edges())
    target = _unshielded_colliders(g)
    out = []
    for flips in range(1 << len(edges)):
        directed = [(v, u) if (flips >> i) & 1 else (u, v)
                    for i, (u, v) in enumerate(edges)]
        h = MixedGraph(g.n, directed=directed)
        if h.is_dag() and _unshielded_colliders(h) == target:
            out.append(h)
    return out

def _check_order_predicates(cap, rng):
    for _ in range(10):
        g = erdos_renyi_dag(min(cap, 5), 0.5,
                            seed=int(rng.integers(1 << 30)))
        mec = _dag_mec(g)
        r_sets = [frozenset(enumerate_r_orders(m)) for m in mec]
        if len(set(r_sets)) != 1:
            return False, "r-order sets differ inside one equivalence class"
        c_sets = [frozenset(enumerate_c_orders(m)) for m in mec]
        for cs, rs in zip(c_sets, r_sets):
            if not cs <= rs:
                return False, "found a c-order that is not an r-order"
        for a_set, b_set in itertools.combinations(c_sets, 2):
            if a_set & b_set:
                return False, "c-orders shared between distinct members"
    return True, ""


def _small_instances(cap, rng):
    out = []
    for _ in range(3):
        out.append(erdos_renyi_dag(cap, 0.4,
                                   seed=int(rng.integers(1 << 30))))
        big = erdos_renyi_dag(cap + 2, 0.4, seed=int(rng.integers(1 << 30)))
        mag, _ = make_latent_instance(big, 0.0, num_latent=2,
                                      seed=int(rng.integers(1 << 30)))
        out.append(mag)
    return out


def _check_min_cost_orders(cap, rng):
    for g in _small_instances(cap, rng):
        tester = OracleCiTester(g)
        finder = NeighborFinder(tester)
        best, argmin = None, set()
        for order in itertools.permutations(range(g.n)):
            cost = sum(cost_vector(order, tester, finder=finder))
            if best is None or cost < best:
                best, argmin = cost, {order}
            elif cost == best:
                argmin.add(order)
        if argmin != set(enumerate_r_orders(g)):
            return False, f"cost minimisers differ from r-orders on {g!r}"
        vi = value_iteration(tester, finder=finder)
        if vi.total_cost != best:
            return False, f"dynamic program missed the optimum on {g!r}"
    return True, ""


def _check_skeleton_recovery(cap, rng):
    for g in _small_instances(cap, rng):
        tester = OracleCiTester(g)
        finder = NeighborFinder(tester)
        true_edges = g.skeleton_edges()
        for order in itertools.permutations(range(g.n)):
            learned = learn_skeleton(order, tester, finder=finder).edges
            if is_r_order(g, order):
                if learned != true_edges:
                    return False, f"r-order missed the skeleton on {g!r}"
            elif not (learned > true_edges):
                return False, f"non-r-order lacked extra edges on {g!r}"
    return True, ""


def _check_hill_climb(cap, rng):
    for g in _small_instances(cap, rng):
        tester = OracleCiTester(g)
        res = hill_climb(tester, HcConfig(max_swap=g.n - 1))
        costs = [cost for _, cost, _ in res.trace]
        if any(b >= a for a, b in zip(costs, costs[1:])):
            return False, "accepted swap did not decrease the cost"
    return True, ""


def _check_projection(cap, rng):
    for _ in range(5):
        g = erdos_renyi_dag(cap, 0.4, seed=int(rng.integers(1 << 30)))
        mag, observed = make_latent_instance(
            g, 0.0, num_latent=2, seed=int(rng.integers(1 << 30)))
        if not is_maximal(mag):
            return False, "projection produced a non-maximal graph"
        m = mag.n
        for i in range(m):
            for j in range(i + 1, m):
                free = mask_of(range(m)) & ~(1 << i) & ~(1 << j)
                for z in range(1 << m):
                    if z & ~free:
                        continue
                    lifted = mask_of(observed[k] for k in bits(z))
                    if m_separated(mag, i, j, z) != m_separated(
                            g, observed[i], observed[j], lifted):
                        return False, "projection changed a separation"
    return True, ""


_FIXTURE_STATS = {"asia": (8, 8, 2, 4), "sachs": (11, 17, 3, 7),
                  "insurance": (27, 52, 3, 9), "alarm": (37, 46, 4, 6)}


def _check_fixtures(cap, rng):
    if bundled_networks() != tuple(sorted(_FIXTURE_STATS)):
        return False, "bundled catalogue does not match expectations"
    for name, (n, e, max_in, max_deg) in _FIXTURE_STATS.items():
        g = load_bundled(name)
        got = (g.n, g.edge_count(), g.max_in_degree(), g.max_degree())
        if got != (n, e, max_in, max_deg) or not g.is_dag():
            return False, f"{name}: expected {(n, e, max_in, max_deg)}, " \
                          f"got {got}"
    return True, ""


CHECKS = (
    ("order-predicates", _check_order_predicates),
    ("min-cost-orders-are-r-orders", _check_min_cost_orders),
    ("skeleton-exact-iff-r-order", _check_skeleton_recovery),
    ("hill-climb-monotone", _check_hill_climb),
    ("projection-preserves-separation", _check_projection),
    ("fixtures-intact", _check_fixtures),
)


def selfcheck(cap=5, seed=0):
    """Run the embedded oracle property suite.

    ``cap`` bounds the exhaustive-permutation checks (cap! orders per
    instance).  Returns a list of {name, ok, detail} rows.
    """
    if not 2 <= cap <= 8:
        raise ConfigError("selfcheck cap must lie in [2, 8]")
    rows = []
    for name, fn in CHECKS:
        rng = np.random.default_rng(seed)
        try:
            ok, detail = fn(cap, rng)
        except Exception as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append({"name": name, "ok": ok, "detail": detail})
    return rows


# -- argument parsing ---------------------------------------------------------

def _add_run_flags(sub):
    sub.add_argument("--config", help="JSON config file")
    sub.add_argument("--er", nargs=2, metavar=("N", "P"),
                     help="Erdos-Renyi graph source")
    sub.add_argument("--graph-file", help="edge-list graph source")
    sub.add_argument("--network", help="bundled network source",
                     choices=bundled_networks())
    sub.add_argument("--latent-fraction", type=float)
    sub.add_argument("--latent-count", type=int)
    sub.add_argument("--tester", choices=TESTER_KINDS)
    sub.add_argument("--alpha", type=float)
    sub.add_argument("--samples", type=int,
                     help="sample size (default 50 per observed variable)")
    sub.add_argument("--standardize", action="store_true", default=None,
                     help="rescale the SEM to unit population variances")
    sub.add_argument("--searcher", choices=SEARCHER_KINDS)
    sub.add_argument("--max-iter", type=int)
    sub.add_argument("--max-swap", type=int)
    sub.add_argument("--initializer",
                     choices=("random", "mb_size_sort", "mb_recursive"))
    sub.add_argument("--vi-cap", type=int)
    sub.add_argument("--episodes", type=int)
    sub.add_argument("--learning-rate", type=float)
    sub.add_argument("--replications", type=int)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--workers", type=int)
    sub.add_argument("--max-sep-size", type=int)
    sub.add_argument("--output", help="write the JSON report here")


def _config_from_args(args):
    raw = {}
    if args.config:
        with open(args.config) as fh:
            raw = json.load(fh)
    sources = [s for s in (args.er and "er", args.graph_file and "file",
                           args.network and "bundled") if s]
    if len(sources) > 1:
        raise ConfigError("give at most one graph source flag")
    if sources:
        if sources[0] == "er":
            try:
                n, p = int(args.er[0]), float(args.er[1])
            except ValueError:
                raise ConfigError("--er needs an integer N and a float P") \
                    from None
            raw["graph"] = {"kind": "er", "n": n, "p": p}
        elif sources[0] == "file":
            raw["graph"] = {"kind": "file", "path": args.graph_file}
        else:
            raw["graph"] = {"kind": "bundled", "name": args.network}
    if args.latent_fraction is not None or args.latent_count is not None:
        raw["latent"] = {}
        if args.latent_fraction is not None:
            raw["latent"]["fraction"] = args.latent_fraction
        if args.latent_count is not None:
            raw["latent"]["count"] = args.latent_count
    tester = dict(raw.get("tester", {}))
    if args.tester:
        tester["kind"] = args.tester
    if args.alpha is not None:
        tester["alpha"] = args.alpha
    if args.samples is not None:
        tester["num_samples"] = args.samples
    if args.standardize is not None:
        tester["standardize"] = args.standardize
    if tester:
        tester.setdefault("kind", "fisher_z")
        raw["tester"] = tester
    searcher = dict(raw.get("searcher", {}))
    if args.searcher:
        searcher["kind"] = args.searcher
    for key, value in (("max_iter", args.max_iter),
                       ("max_swap", args.max_swap),
                       ("initializer", args.initializer),
                       ("cap", args.vi_cap),
                       ("episodes", args.episodes),
                       ("learning_rate", args.learning_rate)):
        if value is not None:
            searcher[key] = value
    if searcher:
        searcher.setdefault("kind", "hc")
        raw["searcher"] = searcher
    for key, value in (("replications", args.replications),
                       ("seed", args.seed), ("workers", args.workers),
                       ("max_sep_size", args.max_sep_size),
                       ("output", args.output)):
        if value is not None:
            raw[key] = value
    return ExperimentConfig.from_dict(raw)


def cmd_run(args):
    config = _config_from_args(args)
    report = run(config)
    if config.output:
        with open(config.output, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
    print(report.summary_text())
    return 0 if report.aggregate["failures"] < len(report.rows) else 1


def cmd_selfcheck(args):
    rows = selfcheck(cap=args.cap, seed=args.seed)
    for row in rows:
        if row["ok"]:
            print(f"ok   {row['name']}")
        else:
            print(f"FAIL {row['name']}: {row['detail']}")
    return 0 if all(row["ok"] for row in rows) else 1


def cmd_gen(args):
    seeds = np.random.SeedSequence(args.seed).spawn(4)
    graph_seed, latent_seed, sem_seed, data_seed = seeds
    dag = erdos_renyi_dag(args.n, args.p, seed=graph_seed)
    wrote = []
    save_network(dag, f"{args.out}.edges")
    wrote.append(f"{args.out}.edges")
    observed = tuple(range(dag.n))
    if args.latent_count is not None:
        mag, observed = make_latent_instance(
            dag, 0.0, seed=latent_seed, num_latent=args.latent_count)
        save_network(mag, f"{args.out}_observed.edges")
        wrote.append(f"{args.out}_observed.edges")
        with open(f"{args.out}_observed.json", "w") as fh:
            json.dump({"observed": list(observed)}, fh)
            fh.write("\n")
        wrote.append(f"{args.out}_observed.json")
    if args.samples is not None:
        spec = random_sem(dag, seed=sem_seed)
        if args.standardize:
            spec = standardize_sem(spec)
        data = sample_sem(spec, args.samples, seed=data_seed)
        if len(observed) != dag.n:
            data = DataMatrix(data.values[:, observed])
        save_data(data, f"{args.out}.csv")
        wrote.append(f"{args.out}.csv")
    for path in wrote:
        print(path)
    return 0


def cmd_score(args):
    learned = load_network(args.learned)
    truth = load_network(args.truth)
    try:
        metrics = score(learned, truth)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print(json.dumps(metrics.as_dict(), indent=2))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magorder",
        description="Order-based structure learning experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a replicated experiment")
    _add_run_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_check = sub.add_parser("selfcheck",
                             help="run the oracle property suite")
    p_check.add_argument("--cap", type=int, default=5,
                         help="vertex cap for exhaustive checks")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(func=cmd_selfcheck)

    p_gen = sub.add_parser("gen", help="emit a synthetic instance")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--p", type=float, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--latent-count", type=int)
    p_gen.add_argument("--samples", type=int)
    p_gen.add_argument("--standardize", action="store_true",
                       help="rescale the SEM to unit population variances")
    p_gen.add_argument("--out", required=True,
                       help="output path prefix")
    p_gen.set_defaults(func=cmd_gen)

    p_score = sub.add_parser("score", help="compare two edge-list graphs")
    p_score.add_argument("learned")
    p_score.add_argument("truth")
    p_score.set_defaults(func=cmd_score)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, EdgeListParseError, FileNotFoundError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
