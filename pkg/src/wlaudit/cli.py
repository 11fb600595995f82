"""Command-line interface: fetch, audit, pairwise inspection, motif reports.

Exit codes: 0 ok, 2 fetch failure, 3 parse failure, 4 compute failure,
5 budget exhausted. ``audit`` and ``motifs`` write byte-reproducible CSV/JSON.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .audit import fmt_pct, run_audit
from .errors import (
    BudgetError,
    CountingInfeasible,
    DatasetError,
    FetchError,
    MalformedLineError,
    WlAuditError,
)
from .graph import build_graph
from .iso import exact_isomorphic
from .motifs import (
    DEFAULT_CENSUS_BUDGET,
    MOTIF_FIELDS,
    motif_identifiability,
    motif_vector,
)
from .refine import ColorTable, dataset_signatures
from .tudata import (
    FetchConfig,
    canonical_dataset_name,
    fetch_dataset,
    parse_tu_dataset,
)

EXIT_OK = 0
EXIT_FETCH = 2
EXIT_PARSE = 3
EXIT_COMPUTE = 4
EXIT_BUDGET = 5


@dataclass
class RunConfig:
    command: str
    datasets: list = field(default_factory=list)
    k_max: int = 3
    label_mode: str = "auto"
    dedup: bool = True
    output_format: str = "table"
    out_dir: Path = None
    cache_dir: Path = None
    base_url: str = ""
    motif_max_size: int = 4
    census_budget: int = DEFAULT_CENSUS_BUDGET
    iso_budget: int = None
    timeout: float = 60.0
    parallel: int = 0
    per_graph: bool = False
    seed: int = None  # reserved for synthetic-fixture tooling


def _fetch_config(cfg):
    return FetchConfig(base_url=cfg.base_url, cache_dir=cfg.cache_dir,
                       timeout=cfg.timeout)


def _load_dataset(cfg, name):
    name = canonical_dataset_name(name)
    directory = fetch_dataset(_fetch_config(cfg), name)
    return parse_tu_dataset(directory, name)


def _emit(cfg, name, csv_text, json_text, table_text):
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}_audit.csv").write_text(csv_text)
        (out / f"{name}_audit.json").write_text(json_text)
    if cfg.output_format == "csv":
        sys.stdout.write(csv_text)
    elif cfg.output_format == "json":
        sys.stdout.write(json_text)
    else:
        sys.stdout.write(table_text)


def _audit_one(cfg, name):
    dataset = _load_dataset(cfg, name)
    report = run_audit(dataset, cfg.k_max, label_mode=cfg.label_mode,
                       dedup=cfg.dedup, iso_budget=cfg.iso_budget)
    return report.to_csv(), report.to_json(), report.to_table()


def cmd_audit(cfg):
    jobs = [canonical_dataset_name(n) for n in cfg.datasets]
    if cfg.parallel > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.parallel) as pool:
            results = list(pool.map(_audit_one, [cfg] * len(jobs), jobs))
        for name, (csv_text, json_text, table_text) in zip(jobs, results):
            _emit(cfg, name, csv_text, json_text, table_text)
    else:
        for name in jobs:
            csv_text, json_text, table_text = _audit_one(cfg, name)
            _emit(cfg, name, csv_text, json_text, table_text)
    return EXIT_OK


def cmd_motifs(cfg):
    rows = []
    per_graph_rows = []
    for name in (canonical_dataset_name(n) for n in cfg.datasets):
        dataset = _load_dataset(cfg, name)
        try:
            ident, ub = motif_identifiability(dataset, max_size=cfg.motif_max_size,
                                              budget=cfg.census_budget)
            rows.append((name, fmt_pct(ident), fmt_pct(ub), "ok"))
            if cfg.per_graph:
                for i, g in enumerate(dataset.graphs):
                    vec = motif_vector(g, max_size=cfg.motif_max_size,
                                       budget=cfg.census_budget)
                    counts = vec.as_dict()
                    per_graph_rows.append(
                        [name, i] + [counts.get(f, "") for f in MOTIF_FIELDS])
        except CountingInfeasible:
            rows.append((name, "", "", "skipped: CountingInfeasible"))
    csv_lines = ["dataset,identifiable_pct,upper_bound_pct,status"]
    for r in rows:
        csv_lines.append(",".join(str(x) for x in r))
    csv_text = "\n".join(csv_lines) + "\n"
    json_text = json.dumps(
        {r[0]: {"identifiable_pct": r[1], "upper_bound_pct": r[2], "status": r[3]}
         for r in rows},
        indent=2, sort_keys=True) + "\n"
    table_lines = [f"motifs up to size {cfg.motif_max_size}",
                   "  dataset        identifiable   upper_bound"]
    for name, ident, ub, status in rows:
        if status == "ok":
            table_lines.append(f"  {name:<14} {ident:>12}   {ub:>11}")
        else:
            table_lines.append(f"  {name:<14} {status}")
    table_text = "\n".join(table_lines) + "\n"
    per_graph_text = None
    if cfg.per_graph:
        lines = ["dataset,graph," + ",".join(MOTIF_FIELDS)]
        lines += [",".join(str(x) for x in row) for row in per_graph_rows]
        per_graph_text = "\n".join(lines) + "\n"
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "motifs.csv").write_text(csv_text)
        (out / "motifs.json").write_text(json_text)
        if per_graph_text is not None:
            (out / "motifs_per_graph.csv").write_text(per_graph_text)
    if cfg.output_format == "csv":
        sys.stdout.write(csv_text)
        if per_graph_text is not None:
            sys.stdout.write(per_graph_text)
    elif cfg.output_format == "json":
        sys.stdout.write(json_text)
    else:
        sys.stdout.write(table_text)
    return EXIT_OK


def read_edge_list(path):
    """Parse the pairwise input format: ``u v`` per line for an edge,
    ``label u l`` for a node label, ``#`` comments and blank lines ignored.
    Node indices are 0-based; node count is 1 + the largest index seen."""
    path = Path(path)
    edges = []
    labels = {}
    max_node = -1
    if not path.is_file():
        raise MalformedLineError(path, 0, "file not found")
    for i, line in enumerate(path.read_text().splitlines()):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        try:
            if parts[0] == "label" and len(parts) == 3:
                u, lab = int(parts[1]), int(parts[2])
                labels[u] = lab
                max_node = max(max_node, u)
            elif len(parts) == 2:
                u, v = int(parts[0]), int(parts[1])
                edges.append((u, v))
                max_node = max(max_node, u, v)
            else:
                raise ValueError
        except ValueError:
            raise MalformedLineError(path, i + 1, f"unparseable line {text!r}")
    n = max_node + 1
    node_labels = None
    if labels:
        node_labels = [labels.get(v, 0) for v in range(n)]
    return build_graph(n, edges, node_labels, graph_id=path.name)


def cmd_pair(cfg, file_a, file_b, use_labels, max_k):
    a = read_edge_list(file_a)
    b = read_edge_list(file_b)
    from .iso import wl_test

    result = wl_test(a, b, use_labels=use_labels, max_k=max_k)
    print(f"WL: {result.verdict}")
    try:
        iso = exact_isomorphic(a, b, use_labels=use_labels)
        print("exact: " + ("isomorphic" if iso else "non-isomorphic"))
    except BudgetError as exc:
        print(f"exact: unknown ({exc})")
    k = result.iteration
    table = ColorTable()
    sigs = dataset_signatures([a, b], k, use_labels, table=table)
    print(f"signature A (k={k}): {sigs[0][k].text()}")
    print(f"signature B (k={k}): {sigs[1][k].text()}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wlaudit",
        description="Audit graph-classification datasets with color "
                    "refinement: identifiability, uniqueness, accuracy "
                    "upper bounds, motif baselines.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--dataset", action="append", required=True,
                       dest="datasets", metavar="NAME",
                       help="dataset name (repeatable)")
        p.add_argument("--format", default="table",
                       choices=["table", "csv", "json"], dest="output_format")
        p.add_argument("--out", type=Path, dest="out_dir", metavar="DIR",
                       help="also write CSV/JSON reports into DIR")
        p.add_argument("--cache-dir", type=Path, default=None)
        p.add_argument("--base-url", default="",
                       help="archive mirror (default: public TU mirror or "
                            "WLAUDIT_BASE_URL)")
        p.add_argument("--timeout", type=float, default=60.0)
        p.add_argument("--seed", type=int, default=None)

    p_audit = sub.add_parser("audit", help="refinement audit of datasets")
    add_common(p_audit)
    p_audit.add_argument("--k", type=int, default=3, dest="k_max",
                         help="report rows for iterations 0..k")
    p_audit.add_argument("--label-mode", default="auto",
                         choices=["auto", "with", "without", "both"])
    p_audit.add_argument("--no-node-labels", action="store_const",
                         const="without", dest="label_mode",
                         help="shorthand for --label-mode without")
    p_audit.add_argument("--raw-identifiability", action="store_false",
                         dest="dedup",
                         help="count duplicate graphs against identifiability "
                              "instead of deduplicating isomorphism classes")
    p_audit.add_argument("--iso-budget", type=int, default=None,
                         help="node-expansion cap per isomorphism test")
    p_audit.add_argument("--parallel", type=int, default=0, metavar="N",
                         help="process up to N datasets concurrently")

    p_pair = sub.add_parser("pair", help="compare two edge-list files")
    p_pair.add_argument("file_a")
    p_pair.add_argument("file_b")
    p_pair.add_argument("--use-labels", action="store_true")
    p_pair.add_argument("--max-k", type=int, default=None)

    p_motifs = sub.add_parser("motifs", help="motif-histogram report")
    add_common(p_motifs)
    p_motifs.add_argument("--max-size", type=int, default=4, choices=[2, 3, 4],
                          dest="motif_max_size")
    p_motifs.add_argument("--budget", type=float, default=DEFAULT_CENSUS_BUDGET,
                          help="per-graph cap on enumerated subgraphs")
    p_motifs.add_argument("--per-graph", action="store_true", dest="per_graph",
                          help="also emit one census row per graph "
                               "(fixed column order)")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "pair":
            return cmd_pair(RunConfig(command="pair"), args.file_a, args.file_b,
                            args.use_labels, args.max_k)
        cfg = RunConfig(
            command=args.command,
            datasets=args.datasets,
            output_format=args.output_format,
            out_dir=args.out_dir,
            cache_dir=args.cache_dir,
            base_url=args.base_url,
            timeout=args.timeout,
            seed=args.seed,
        )
        if args.command == "audit":
            cfg.k_max = args.k_max
            cfg.label_mode = args.label_mode
            cfg.dedup = args.dedup
            cfg.iso_budget = args.iso_budget
            cfg.parallel = args.parallel
            return cmd_audit(cfg)
        if args.command == "motifs":
            cfg.motif_max_size = args.motif_max_size
            cfg.census_budget = int(args.budget)
            cfg.per_graph = args.per_graph
            return cmd_motifs(cfg)
        parser.error(f"unknown command {args.command}")
    except FetchError as exc:
        print(f"error (fetch): {exc}", file=sys.stderr)
        return EXIT_FETCH
    except DatasetError as exc:
        print(f"error (parse): {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as exc:
        print(f"error (budget): {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except WlAuditError as exc:
        print(f"error (compute): {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
