"""Dataset expressiveness metrics.

Two conventions, deliberately different, drive the two headline numbers:

* identifiable fraction is computed over exact-isomorphism classes (one
  representative each), so duplicated graphs do not count against a dataset's
  identifiability;
* the accuracy upper bound is computed over raw graphs, so duplicated graphs
  with conflicting class labels do depress the bound.

Both are exposed with the opposite convention behind a flag. All percentages
are exact fractions internally and are formatted to two decimals with
round-half-away-from-zero.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyDatasetError, MissingLabelsError
from .iso import isomorphism_classes
from .refine import dataset_signatures


def pct(numerator, denominator):
    """Exact percentage as a Fraction; 0 over an empty denominator."""
    if denominator == 0:
        return Fraction(0)
    return Fraction(100 * numerator, denominator)


def fmt_pct(x):
    """Two-decimal string, round half away from zero (table convention)."""
    f = Fraction(x)
    sign = "-" if f < 0 else ""
    f = abs(f)
    hundredths = (200 * f.numerator + f.denominator) // (2 * f.denominator)
    return f"{sign}{hundredths // 100}.{hundredths % 100:02d}"


def _require_labels(dataset, use_labels):
    if use_labels and not dataset.has_node_labels:
        raise MissingLabelsError(dataset.name)


@dataclass(frozen=True)
class SignatureGrouping:
    """Graphs (or class representatives) grouped by equal iteration-k histograms."""

    k: int
    dedup: bool
    groups: tuple  # tuple of (signature pairs, tuple of member graph indices)

    @property
    def num_groups(self):
        return len(self.groups)

    def singleton_groups(self):
        return sum(1 for _, members in self.groups if len(members) == 1)


def _group(keys, members):
    table = {}
    for i in members:
        table.setdefault(keys[i], []).append(i)
    return tuple(sorted(
        ((key, tuple(idxs)) for key, idxs in table.items()),
        key=lambda kv: kv[1],
    ))


def group_by_signature(dataset, k, use_labels, dedup=True,
                       iso_index=None, signatures=None):
    """Group graphs by their iteration-k refinement histogram.

    With ``dedup`` the grouping runs over one representative per
    exact-isomorphism class (the class index is computed under the same label
    mode unless one is passed in).
    """
    _require_labels(dataset, use_labels)
    if signatures is None:
        signatures = dataset_signatures(dataset.graphs, k, use_labels)
    keys = [sigs[k].pairs for sigs in signatures]
    if dedup:
        if iso_index is None:
            iso_index = isomorphism_classes(dataset, use_labels=use_labels)
        members = iso_index.representatives()
    else:
        members = range(len(dataset.graphs))
    return SignatureGrouping(k=k, dedup=dedup, groups=_group(keys, members))


def identifiable_fraction(dataset, k, use_labels, dedup=True,
                          iso_index=None, signatures=None):
    """Percentage of isomorphism classes whose iteration-k histogram is
    shared with no other class (raw-graph variant via ``dedup=False``)."""
    grouping = group_by_signature(dataset, k, use_labels, dedup=dedup,
                                  iso_index=iso_index, signatures=signatures)
    total = sum(len(m) for _, m in grouping.groups)
    return pct(grouping.singleton_groups(), total)


def upper_bound_accuracy(dataset, k, use_labels, signatures=None):
    """Best achievable accuracy for any deterministic function of the
    iteration-k histogram: majority vote inside each equal-histogram group,
    over raw graphs."""
    grouping = group_by_signature(dataset, k, use_labels, dedup=False,
                                  signatures=signatures)
    correct = 0
    for _, members in grouping.groups:
        votes = {}
        for i in members:
            lab = dataset.class_labels[i]
            votes[lab] = votes.get(lab, 0) + 1
        # ties break toward the smallest class id; the count is tie-invariant
        correct += max(votes.values())
    return pct(correct, len(dataset.graphs))


def majority_labels(dataset, grouping):
    """Majority class per group (ties to the smallest class id)."""
    out = []
    for _, members in grouping.groups:
        votes = {}
        for i in members:
            lab = dataset.class_labels[i]
            votes[lab] = votes.get(lab, 0) + 1
        best = max(votes.values())
        out.append(min(lab for lab, c in votes.items() if c == best))
    return tuple(out)


def k0_baseline(dataset, use_labels, iso_index=None):
    """(identifiable %, upper-bound %) on iteration-0 histograms: the label
    histogram when labels are used, node count otherwise."""
    sigs = dataset_signatures(dataset.graphs, 0, use_labels)
    ident = identifiable_fraction(dataset, 0, use_labels,
                                  iso_index=iso_index, signatures=sigs)
    ub = upper_bound_accuracy(dataset, 0, use_labels, signatures=sigs)
    return ident, ub


@dataclass(frozen=True)
class AuditRow:
    label_mode: str  # "with" | "without"
    k: int
    identifiable_pct: Fraction
    upper_bound_pct: Fraction

    def formatted(self):
        return fmt_pct(self.identifiable_pct), fmt_pct(self.upper_bound_pct)


@dataclass(frozen=True)
class AuditReport:
    """Per-dataset audit: one row per (label mode, iteration)."""

    dataset: str
    num_graphs: int
    k_max: int
    dedup: bool
    rows: tuple                 # AuditRow, ordered (label_mode, k)
    unique_pct: dict            # label_mode -> Fraction (percent of graphs)
    num_classes: dict           # label_mode -> int
    timings: dict = field(default_factory=dict, compare=False)

    def row(self, label_mode, k):
        for r in self.rows:
            if r.label_mode == label_mode and r.k == k:
                return r
        raise KeyError((label_mode, k))

    def label_modes(self):
        seen = []
        for r in self.rows:
            if r.label_mode not in seen:
                seen.append(r.label_mode)
        return seen

    def to_csv(self):
        """CSV rows: dataset,label_mode,k,identifiable_pct,upper_bound_pct,unique_pct."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["dataset", "label_mode", "k", "identifiable_pct",
                         "upper_bound_pct", "unique_pct"])
        for r in self.rows:
            writer.writerow([
                self.dataset, r.label_mode, r.k,
                fmt_pct(r.identifiable_pct), fmt_pct(r.upper_bound_pct),
                fmt_pct(self.unique_pct[r.label_mode]),
            ])
        return buf.getvalue()

    def to_json(self):
        """Stable JSON document (timings excluded for reproducible bytes)."""
        doc = {
            "dataset": self.dataset,
            "num_graphs": self.num_graphs,
            "k_max": self.k_max,
            "dedup": "classes" if self.dedup else "raw",
            "label_modes": {
                mode: {
                    "unique_pct": fmt_pct(self.unique_pct[mode]),
                    "num_classes": self.num_classes[mode],
                    "rows": [
                        {
                            "k": r.k,
                            "identifiable_pct": fmt_pct(r.identifiable_pct),
                            "upper_bound_pct": fmt_pct(r.upper_bound_pct),
                        }
                        for r in self.rows if r.label_mode == mode
                    ],
                }
                for mode in self.label_modes()
            },
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_table(self):
        lines = [
            f"dataset {self.dataset}: {self.num_graphs} graphs, "
            f"dedup={'classes' if self.dedup else 'raw'}"
        ]
        for mode in self.label_modes():
            frac = self.unique_pct[mode] / 100
            lines.append(
                f"  [{mode} labels] unique {float(frac):.2f} "
                f"({self.num_classes[mode]} classes)"
            )
            lines.append("    k   identifiable   upper_bound")
            for r in self.rows:
                if r.label_mode == mode:
                    ident, ub = r.formatted()
                    lines.append(f"    {r.k:<3} {ident:>12}   {ub:>11}")
        if self.timings:
            total = sum(self.timings.values())
            lines.append(f"  timing: {total:.2f}s "
                         + " ".join(f"{k}={v:.2f}s" for k, v in sorted(self.timings.items())))
        return "\n".join(lines) + "\n"


def run_audit(dataset, k_max, label_mode="auto", dedup=True, iso_budget=None):
    """Full audit of one dataset: identifiable fraction and accuracy upper
    bound for k = 0..k_max, plus the unique-graph fraction, per label mode.

    ``label_mode``: "with", "without", "both", or "auto" (= "both" when the
    dataset has node labels, else "without").
    """
    if len(dataset.graphs) == 0:
        raise EmptyDatasetError(dataset.name)
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if label_mode == "auto":
        label_mode = "both" if dataset.has_node_labels else "without"
    if label_mode == "both":
        modes = ["with", "without"]
    elif label_mode in ("with", "without"):
        modes = [label_mode]
    else:
        raise ValueError(f"unknown label_mode {label_mode!r}")
    if "with" in modes:
        _require_labels(dataset, True)

    kwargs = {} if iso_budget is None else {"budget": iso_budget}
    rows = []
    unique_pct = {}
    num_classes = {}
    timings = {}
    n = len(dataset.graphs)
    for mode in modes:
        use = mode == "with"
        t0 = time.perf_counter()
        index = isomorphism_classes(dataset, use_labels=use, **kwargs)
        timings[f"iso_{mode}"] = time.perf_counter() - t0
        unique_pct[mode] = pct(index.singleton_count, n)
        num_classes[mode] = index.num_classes

        t0 = time.perf_counter()
        sigs = dataset_signatures(dataset.graphs, k_max, use)
        for k in range(k_max + 1):
            ident = identifiable_fraction(dataset, k, use, dedup=dedup,
                                          iso_index=index, signatures=sigs)
            ub = upper_bound_accuracy(dataset, k, use, signatures=sigs)
            rows.append(AuditRow(mode, k, ident, ub))
        timings[f"metrics_{mode}"] = time.perf_counter() - t0

    return AuditReport(
        dataset=dataset.name,
        num_graphs=n,
        k_max=k_max,
        dedup=dedup,
        rows=tuple(rows),
        unique_pct=unique_pct,
        num_classes=num_classes,
        timings=timings,
    )
