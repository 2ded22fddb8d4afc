"""Verification campaigns: check the dominating-set / augmentation
equivalence on whole instance families, exercise the swap rules on sampled
augmenting sets, and emit a per-instance CSV report plus a summary figure.

Everything here is deterministic given the campaign config (sizes, seed,
variant), so repeated runs produce byte-identical reports.
"""

from __future__ import annotations

import csv
import io
import itertools
import random
from dataclasses import dataclass, field

from . import swaprules
from .errors import RuleUnsoundError, ToolkitError
from .gadget import (
    CLOSED_NEIGHBORHOOD,
    GadgetGraph,
    build_gadget,
    forward_map,
)
from .graph import (
    Edge,
    Graph,
    diameter,
    diameter_with_augmentation,
    from_edge_list,
    is_connected,
    is_dominating,
    normalize_edge,
    random_connected_graph,
)
from .solvers import (
    minimum_augmentation_size,
    minimum_dominating_set_size,
    solve_diameter_augmentation,
    solve_dominating_set,
    uncovered_pairs,
)

#: swap-rule trials run per campaign instance
RULE_TRIALS_PER_INSTANCE = 5


def connected_graphs_exhaustive(n: int) -> list[Graph]:
    """All connected graphs on n vertices, one per isomorphism class.

    Enumerates edge subsets and keeps the lexicographically least edge
    list over all vertex relabelings; fine for n <= 6."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return [from_edge_list(1, [])]
    all_pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen = set()
    out = []
    for bits in range(1 << len(all_pairs)):
        edges = [all_pairs[i] for i in range(len(all_pairs)) if (bits >> i) & 1]
        if len(edges) < n - 1:
            continue
        g = from_edge_list(n, edges)
        if not is_connected(g):
            continue
        canon = min(
            tuple(sorted(normalize_edge(p[u], p[v]) for u, v in edges))
            for p in perms
        )
        if canon in seen:
            continue
        seen.add(canon)
        out.append(g)
    return out


def base_graph(gadget: GadgetGraph) -> Graph:
    """Recover G1 as the subgraph induced by the U1 copy."""
    n1 = gadget.n1
    edges = [(u, v) for u, v in gadget.graph.edges if u < n1 and v < n1]
    return from_edge_list(n1, edges)


def verify_equivalence(g1: Graph, k: int, variant: str) -> dict:
    """Compare the two solvers at budget k and, on a yes augmentation,
    run the normalize-and-extract pipeline end to end."""
    ds = solve_dominating_set(g1, k)
    gadget = build_gadget(g1, variant)
    aug = solve_diameter_augmentation(gadget.graph, k, 2)
    record = {
        "n": g1.n,
        "k": k,
        "variant": variant,
        "answer_ds": ds.answer,
        "answer_aug": aug.answer,
        "match": ds.answer == aug.answer,
        "extracted": None,
        "extracted_ok": None,
        "violation": None,
    }
    if aug.answer:
        try:
            proper, trace = swaprules.normalize(gadget, aug.witness)
            dom = swaprules.extract_dominating_set(gadget, proper)
            record["extracted"] = tuple(sorted(dom))
            record["extracted_ok"] = (
                is_dominating(g1, dom) and len(dom) <= k
            )
            record["trace_steps"] = len(trace.steps)
        except (RuleUnsoundError, ToolkitError) as exc:
            record["extracted_ok"] = False
            record["violation"] = str(exc)
    return record


def _random_dominating_set(g1: Graph, rng: random.Random) -> set[int]:
    """A (possibly redundant) dominating set built greedily in random order."""
    d: set[int] = set()
    undominated = set(range(g1.n))
    while undominated:
        v = rng.choice(sorted(undominated))
        pick = rng.choice(sorted({v} | set(g1.adj[v])))
        d.add(pick)
        undominated -= {pick} | set(g1.adj[pick])
    # extra members make individual edges rewritable without breaking cover
    for _ in range(rng.randint(0, 2)):
        d.add(rng.randrange(g1.n))
    return d


def sample_augmenting_set(gadget: GadgetGraph, rng: random.Random) -> frozenset[Edge]:
    """A valid but usually non-proper augmenting set: start from the image
    of a random dominating set, rewrite edges into z-edges or x-Y edges
    where the diameter-2 check still passes, then add noise edges."""
    g1 = base_graph(gadget)
    x, z = gadget.x_id, gadget.z_id
    s = set(forward_map(gadget, _random_dominating_set(g1, rng)))
    u_all = list(gadget.u_vertices)

    # under twin-only wiring the image of a dominating set need not augment;
    # patch in direct x-edges until every pair is within distance 2
    while not swaprules.is_augmenting(gadget, s):
        w, _x = uncovered_pairs(gadget.graph, s, 2)[0]
        s.add(normalize_edge(x, w))

    for e in sorted(s):
        if rng.random() > 0.6:
            continue
        u = e[0]
        choice = rng.randrange(3)
        if choice == 0:
            rewrite = normalize_edge(z, u)
        elif choice == 1:
            w = rng.choice([w for w in u_all if w != u])
            rewrite = normalize_edge(x, gadget.pair_to_y[normalize_edge(u, w)])
        else:
            rewrite = normalize_edge(x, gadget.twin[u])
        trial = (s - {e}) | {rewrite}
        if swaprules.is_augmenting(gadget, trial):
            s = trial

    g2 = gadget.graph
    for _ in range(rng.randint(0, 3)):
        kind = rng.randrange(3)
        if kind == 0:
            e = normalize_edge(z, rng.choice(u_all))
        elif kind == 1:
            y = rng.choice(sorted(gadget.y_to_pair))
            e = normalize_edge(x, y)
        else:
            a, b = rng.sample(u_all, 2)
            e = normalize_edge(a, b)
        if not g2.has_edge(*e):
            s.add(e)  # supersets of an augmenting set stay augmenting
    return frozenset(s)


def verify_rules_on_random_sets(
    gadget: GadgetGraph, trials: int, seed: int
) -> dict:
    """Normalize sampled augmenting sets and audit every claimed rule
    invariant; unsound swaps are recorded with their trace, not raised."""
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = random.Random(seed)
    g1 = base_graph(gadget)
    record = {
        "trials": trials,
        "violations": [],
        "proper_failures": 0,
        "size_increases": 0,
        "u_minus_nonempty": 0,
        "extract_failures": 0,
        "trace_steps_total": 0,
    }
    for _ in range(trials):
        s = sample_augmenting_set(gadget, rng)
        try:
            final, trace = swaprules.normalize(gadget, s)
        except RuleUnsoundError as exc:
            record["violations"].append(
                {
                    "message": str(exc),
                    "initial": sorted(s),
                    "trace": swaprules.trace_as_dict(exc.trace)
                    if exc.trace
                    else None,
                }
            )
            continue
        record["trace_steps_total"] += len(trace.steps)
        if not swaprules.is_proper(gadget, final):
            record["proper_failures"] += 1
            continue
        if len(final) > len(s):
            record["size_increases"] += 1
        if swaprules.partition_u(gadget, final).u_minus:
            record["u_minus_nonempty"] += 1
        dom = swaprules.extract_dominating_set(gadget, final)
        if not (is_dominating(g1, dom) and len(dom) <= len(s)):
            record["extract_failures"] += 1
    return record


@dataclass
class CampaignConfig:
    n_min: int = 1
    n_max: int = 4
    samples: int | None = None  # None -> exhaustive families
    edge_prob: float = 0.4
    seed: int = 0
    variant: str = CLOSED_NEIGHBORHOOD
    k_max: int = 3
    rule_trials: int = RULE_TRIALS_PER_INSTANCE

    def validate(self) -> None:
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValueError(f"bad size range [{self.n_min}, {self.n_max}]")
        if self.samples is not None and self.samples < 1:
            raise ValueError("random mode needs samples >= 1")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError("edge_prob must be in [0,1]")
        if self.k_max < 0:
            raise ValueError("k_max must be >= 0")


@dataclass
class InstanceRecord:
    instance_id: str
    n: int
    m: int
    seed: str
    gamma: int
    min_aug: int | None
    match: bool
    gadget_structure_ok: bool
    forward_ok: bool | None
    prop1_ok: bool | None
    violations: int
    trace_steps: int


@dataclass
class VerificationReport:
    config: CampaignConfig
    records: list[InstanceRecord] = field(default_factory=list)
    violation_details: list[dict] = field(default_factory=list)

    @property
    def instances(self) -> int:
        return len(self.records)

    @property
    def matches(self) -> int:
        return sum(1 for r in self.records if r.match)

    @property
    def mismatches(self) -> int:
        return self.instances - self.matches

    @property
    def total_violations(self) -> int:
        return sum(r.violations for r in self.records)

    @property
    def hard_failures(self) -> int:
        """Mismatches and rule violations count as hard only under the
        default wiring; under twin-only they are the expected finding."""
        if self.config.variant != CLOSED_NEIGHBORHOOD:
            return 0
        bad_structure = sum(1 for r in self.records if not r.gadget_structure_ok)
        return self.mismatches + self.total_violations + bad_structure


def _campaign_instances(config: CampaignConfig):
    if config.samples is None:
        for n in range(config.n_min, config.n_max + 1):
            for i, g in enumerate(connected_graphs_exhaustive(n)):
                yield f"x{n}-{i:03d}", "-", g
    else:
        rng = random.Random(config.seed)
        for i in range(config.samples):
            n = rng.randint(config.n_min, config.n_max)
            sub_seed = rng.randrange(1 << 32)
            g = random_connected_graph(n, config.edge_prob, sub_seed)
            yield f"r-{i:04d}", str(sub_seed), g


def _gadget_structure_ok(g1: Graph, gadget: GadgetGraph) -> bool:
    n = g1.n
    expected_v2 = 2 * n + (2 * n) * (2 * n - 1) // 2 + 2
    if gadget.graph.n != expected_v2:
        return False
    if diameter(gadget.graph) != 3:
        return False
    far = uncovered_pairs(gadget.graph, (), 2)
    expected = sorted((w, gadget.x_id) for w in gadget.u_vertices)
    return far == expected


def run_campaign(config: CampaignConfig) -> VerificationReport:
    config.validate()
    report = VerificationReport(config=config)
    for instance_id, seed_str, g1 in _campaign_instances(config):
        gamma = minimum_dominating_set_size(g1)
        gadget = build_gadget(g1, config.variant)
        structure_ok = _gadget_structure_ok(g1, gadget)

        k_cap = max(config.k_max, gamma)
        min_aug, witness = minimum_augmentation_size(gadget.graph, k_cap)
        match = min_aug == gamma

        ds_witness = solve_dominating_set(g1, gamma).witness
        fwd = forward_map(gadget, set(ds_witness))
        fwd_diam = diameter_with_augmentation(gadget.graph, fwd)
        forward_ok = (
            fwd_diam is not None and fwd_diam <= 2 and len(fwd) == len(ds_witness)
        )

        prop1_ok: bool | None = None
        violations = 0
        trace_steps = 0
        if witness is not None:
            try:
                final, trace = swaprules.normalize(gadget, witness)
                trace_steps += len(trace.steps)
                prop1_ok = (
                    not swaprules.partition_u(gadget, final).u_minus
                    and swaprules.is_proper(gadget, final)
                )
            except RuleUnsoundError as exc:
                violations += 1
                prop1_ok = False
                report.violation_details.append(
                    {"instance": instance_id, "message": str(exc)}
                )

        trial_seed = (config.seed, instance_id)
        trial_record = verify_rules_on_random_sets(
            gadget, config.rule_trials, seed=hash_free_seed(trial_seed)
        )
        violations += len(trial_record["violations"])
        trace_steps += trial_record["trace_steps_total"]
        for v in trial_record["violations"]:
            report.violation_details.append(
                {"instance": instance_id, "message": v["message"]}
            )
        if trial_record["u_minus_nonempty"] or trial_record["proper_failures"]:
            prop1_ok = False

        report.records.append(
            InstanceRecord(
                instance_id=instance_id,
                n=g1.n,
                m=g1.m,
                seed=seed_str,
                gamma=gamma,
                min_aug=min_aug,
                match=match,
                gadget_structure_ok=structure_ok,
                forward_ok=forward_ok,
                prop1_ok=prop1_ok,
                violations=violations,
                trace_steps=trace_steps,
            )
        )
    return report


def hash_free_seed(material) -> int:
    """Deterministic integer seed from nested ints/strings (no str hash)."""
    acc = 0
    for part in material if isinstance(material, tuple) else (material,):
        if isinstance(part, str):
            for ch in part:
                acc = (acc * 131 + ord(ch)) % (1 << 62)
        else:
            acc = (acc * 1_000_003 + int(part)) % (1 << 62)
    return acc


# --- report emission --------------------------------------------------------

CSV_FIELDS = [
    "instance_id",
    "n",
    "m",
    "seed",
    "gamma",
    "min_aug",
    "match",
    "gadget_structure_ok",
    "forward_ok",
    "prop1_ok",
    "violations",
    "trace_steps",
]


def report_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in report.records:
        writer.writerow(
            [
                r.instance_id,
                r.n,
                r.m,
                r.seed,
                r.gamma,
                "" if r.min_aug is None else r.min_aug,
                int(r.match),
                int(r.gadget_structure_ok),
                "" if r.forward_ok is None else int(r.forward_ok),
                "" if r.prop1_ok is None else int(r.prop1_ok),
                r.violations,
                r.trace_steps,
            ]
        )
    return buf.getvalue()


def report_summary(report: VerificationReport) -> str:
    c = report.config
    mode = "exhaustive" if c.samples is None else f"random({c.samples})"
    lines = [
        f"variant {c.variant}",
        f"mode {mode}",
        f"sizes {c.n_min}..{c.n_max}",
        f"seed {c.seed}",
        f"instances {report.instances}",
        f"matches {report.matches}",
        f"mismatches {report.mismatches}",
        f"rule_violations {report.total_violations}",
        f"hard_failures {report.hard_failures}",
    ]
    for detail in report.violation_details:
        lines.append(f"violation {detail['instance']}: {detail['message']}")
    mismatched = [r.instance_id for r in report.records if not r.match]
    if mismatched:
        lines.append("mismatched_instances " + " ".join(mismatched))
    return "\n".join(lines) + "\n"


def render_report_figure(report: VerificationReport, path: str) -> None:
    """Two-panel overview: gamma vs minimum augmenting size, and outcome
    counts.  Written deterministically (no embedded timestamps)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    gammas = sorted({r.gamma for r in report.records})
    per_gamma = [sum(1 for r in report.records if r.gamma == g) for g in gammas]
    per_gamma_match = [
        sum(1 for r in report.records if r.gamma == g and r.match) for g in gammas
    ]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    width = 0.38
    xs = range(len(gammas))
    ax1.bar([x - width / 2 for x in xs], per_gamma, width, label="instances")
    ax1.bar(
        [x + width / 2 for x in xs],
        per_gamma_match,
        width,
        label="min aug = gamma",
    )
    ax1.set_xticks(list(xs))
    ax1.set_xticklabels([str(g) for g in gammas])
    ax1.set_xlabel("gamma(G1)")
    ax1.set_ylabel("count")
    ax1.legend(fontsize=8)
    ax1.set_title("equivalence per gamma")

    labels = ["match", "mismatch", "violations"]
    values = [report.matches, report.mismatches, report.total_violations]
    ax2.bar(labels, values, color=["tab:green", "tab:red", "tab:orange"])
    ax2.set_title(f"outcomes ({report.config.variant})")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Date": None})
    plt.close(fig)
