"""TU-collection flat-file datasets: parsing, fetching, caching.

A dataset directory holds ``NAME_A.txt`` (1-based edge rows, usually listed
in both directions), ``NAME_graph_indicator.txt`` (graph id per node),
``NAME_graph_labels.txt`` and optionally ``NAME_node_labels.txt``. Node and
class labels are remapped to dense 0-based ids; the raw-to-dense mappings are
kept in ``Dataset.metadata`` so reports stay readable.
"""

from __future__ import annotations

import os
import shutil
import tempfile
import urllib.error
import urllib.request
import zipfile
from dataclasses import dataclass, field
from hashlib import sha256
from pathlib import Path

from .errors import (
    ChecksumError,
    DanglingEdgeError,
    EmptyDatasetError,
    ExtractError,
    FetchError,
    MalformedLineError,
    MissingFileError,
)
from .graph import build_graph

DEFAULT_BASE_URL = "https://www.chrsmrrs.com/graphkerneldatasets"
CACHE_ENV = "WLAUDIT_CACHE_DIR"
BASE_URL_ENV = "WLAUDIT_BASE_URL"

# common short names -> archive names on the benchmark mirror
DATASET_ALIASES = {
    "IMDB-B": "IMDB-BINARY",
    "IMDB-M": "IMDB-MULTI",
    "REDDIT-B": "REDDIT-BINARY",
    "REDDIT-M-5K": "REDDIT-MULTI-5K",
    "REDDIT-5K": "REDDIT-MULTI-5K",
}


def canonical_dataset_name(name):
    return DATASET_ALIASES.get(name.upper(), name)


def default_cache_dir():
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "wlaudit"


def default_base_url():
    return os.environ.get(BASE_URL_ENV, DEFAULT_BASE_URL)


@dataclass(frozen=True)
class Dataset:
    name: str
    graphs: tuple
    class_labels: tuple
    has_node_labels: bool
    num_classes: int
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.graphs) != len(self.class_labels):
            raise ValueError("graphs and class_labels must have equal length")

    def __len__(self):
        return len(self.graphs)

    @property
    def num_node_labels(self):
        return len(self.metadata.get("node_label_map", {}))

    def __repr__(self):
        return (f"Dataset({self.name!r}, graphs={len(self.graphs)}, "
                f"classes={self.num_classes}, "
                f"node_labels={self.has_node_labels})")


def _read_lines(path):
    if not path.is_file():
        raise MissingFileError(path)
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read().splitlines()


def _parse_int(token, path, line_no):
    try:
        return int(token.strip())
    except ValueError:
        raise MalformedLineError(path, line_no, f"expected integer, got {token!r}")


def parse_tu_dataset(directory, name):
    """Parse the flat files in ``directory`` into a :class:`Dataset`.

    Node ids are renumbered per graph from 0; the symmetric duplicate rows of
    the edge file collapse to one undirected edge each. Trailing blank lines
    are tolerated, interior blank lines are not.
    """
    directory = Path(directory)

    ind_path = directory / f"{name}_graph_indicator.txt"
    node_graph = []  # graph id (1-based raw) per node, node i = line i+1
    for i, line in enumerate(_strip_trailing(_read_lines(ind_path))):
        node_graph.append(_parse_int(line, ind_path, i + 1))
    if not node_graph:
        raise EmptyDatasetError(name)

    graph_ids = sorted(set(node_graph))
    gindex = {gid: i for i, gid in enumerate(graph_ids)}

    # local node numbering per graph, in global node order
    local = [0] * len(node_graph)
    sizes = [0] * len(graph_ids)
    for v, gid in enumerate(node_graph):
        gi = gindex[gid]
        local[v] = sizes[gi]
        sizes[gi] += 1

    a_path = directory / f"{name}_A.txt"
    edge_lists = [[] for _ in graph_ids]
    for i, line in enumerate(_strip_trailing(_read_lines(a_path))):
        parts = line.split(",")
        if len(parts) != 2:
            raise MalformedLineError(a_path, i + 1, "expected 'u, v'")
        u = _parse_int(parts[0], a_path, i + 1)
        v = _parse_int(parts[1], a_path, i + 1)
        if not (1 <= u <= len(node_graph)) or not (1 <= v <= len(node_graph)):
            raise MalformedLineError(a_path, i + 1, f"node id out of range: {line!r}")
        gu, gv = node_graph[u - 1], node_graph[v - 1]
        if gu != gv:
            raise DanglingEdgeError(u, v, gu, gv)
        edge_lists[gindex[gu]].append((local[u - 1], local[v - 1]))

    gl_path = directory / f"{name}_graph_labels.txt"
    raw_graph_labels = []
    for i, line in enumerate(_strip_trailing(_read_lines(gl_path))):
        raw_graph_labels.append(_parse_int(line, gl_path, i + 1))
    if len(raw_graph_labels) != len(graph_ids):
        raise MalformedLineError(
            gl_path, len(raw_graph_labels),
            f"{len(raw_graph_labels)} labels for {len(graph_ids)} graphs")
    label_map = {raw: i for i, raw in enumerate(sorted(set(raw_graph_labels)))}
    class_labels = tuple(label_map[raw] for raw in raw_graph_labels)

    nl_path = directory / f"{name}_node_labels.txt"
    node_labels = None
    node_label_map = {}
    if nl_path.is_file():
        raw = []
        for i, line in enumerate(_strip_trailing(_read_lines(nl_path))):
            raw.append(_parse_int(line, nl_path, i + 1))
        if len(raw) != len(node_graph):
            raise MalformedLineError(
                nl_path, len(raw), f"{len(raw)} labels for {len(node_graph)} nodes")
        node_label_map = {r: i for i, r in enumerate(sorted(set(raw)))}
        node_labels = [node_label_map[r] for r in raw]

    per_graph_labels = None
    if node_labels is not None:
        per_graph_labels = [[] for _ in graph_ids]
        for v, gid in enumerate(node_graph):
            per_graph_labels[gindex[gid]].append(node_labels[v])

    graphs = []
    for gi in range(len(graph_ids)):
        labels = per_graph_labels[gi] if per_graph_labels is not None else None
        graphs.append(build_graph(sizes[gi], edge_lists[gi], labels, graph_id=gi))

    return Dataset(
        name=name,
        graphs=tuple(graphs),
        class_labels=class_labels,
        has_node_labels=node_labels is not None,
        num_classes=len(label_map),
        metadata={
            "source_dir": str(directory),
            "class_label_map": label_map,
            "node_label_map": node_label_map,
        },
    )


def _strip_trailing(lines):
    end = len(lines)
    while end > 0 and not lines[end - 1].strip():
        end -= 1
    return lines[:end]


@dataclass(frozen=True)
class FetchConfig:
    base_url: str = ""
    cache_dir: Path = None
    timeout: float = 60.0
    checksum: str = None

    def resolved(self):
        base = self.base_url or default_base_url()
        cache = Path(self.cache_dir) if self.cache_dir else default_cache_dir()
        return base.rstrip("/"), cache


def fetch_dataset(cfg, name):
    """Return a directory containing the extracted flat files for ``name``.

    A warm cache short-circuits the download. The zip is fetched from
    ``<base_url>/<name>.zip``, optionally checksum-verified, and extracted
    under the cache directory. Concurrent fetchers for the same dataset are
    serialized with a lock file. Common short names (IMDB-B, REDDIT-B, ...)
    resolve to their archive names.
    """
    name = canonical_dataset_name(name)
    base_url, cache = cfg.resolved()
    target = cache / name
    if (target / f"{name}_A.txt").is_file():
        return target

    cache.mkdir(parents=True, exist_ok=True)
    lock_path = cache / f"{name}.lock"
    with open(lock_path, "w") as lock:
        _flock(lock)
        if (target / f"{name}_A.txt").is_file():  # racer finished first
            return target
        url = f"{base_url}/{name}.zip"
        try:
            with urllib.request.urlopen(url, timeout=cfg.timeout) as resp:
                payload = resp.read()
        except (urllib.error.URLError, OSError, ValueError) as exc:
            raise FetchError(f"download failed for {url}: {exc}") from exc
        if cfg.checksum:
            digest = sha256(payload).hexdigest()
            if digest != cfg.checksum.lower():
                raise ChecksumError(cfg.checksum.lower(), digest)
        _extract_zip(payload, name, target)
    return target


def _flock(fh):
    try:
        import fcntl

        fcntl.flock(fh, fcntl.LOCK_EX)
    except ImportError:  # non-POSIX: single-process use is still safe
        pass


def _extract_zip(payload, name, target):
    tmp = Path(tempfile.mkdtemp(prefix=f"{name}-", dir=target.parent))
    try:
        zpath = tmp / f"{name}.zip"
        zpath.write_bytes(payload)
        try:
            with zipfile.ZipFile(zpath) as zf:
                zf.extractall(tmp / "x")
        except zipfile.BadZipFile as exc:
            raise ExtractError(f"bad archive for {name}: {exc}") from exc
        marker = f"{name}_A.txt"
        root = None
        for cand in (tmp / "x", tmp / "x" / name):
            if (cand / marker).is_file():
                root = cand
                break
        if root is None:
            hits = list((tmp / "x").rglob(marker))
            if not hits:
                raise ExtractError(f"{marker} not found inside archive")
            root = hits[0].parent
        if target.exists():
            shutil.rmtree(target)
        shutil.move(str(root), str(target))
    finally:
        shutil.rmtree(tmp, ignore_errors=True)


def strip_node_labels(dataset):
    """Replace every graph's node labels with the constant 0.

    Graphs without labels are kept as-is (their coloring is already
    constant); the operation is idempotent.
    """
    graphs = []
    for g in dataset.graphs:
        if g.node_labels is None or all(x == 0 for x in g.node_labels):
            graphs.append(g)
        else:
            graphs.append(g.relabel([0] * g.node_count))
    meta = dict(dataset.metadata)
    meta["node_label_map"] = {0: 0} if dataset.has_node_labels else {}
    meta["node_labels_stripped"] = True
    return Dataset(
        name=dataset.name,
        graphs=tuple(graphs),
        class_labels=dataset.class_labels,
        has_node_labels=dataset.has_node_labels,
        num_classes=dataset.num_classes,
        metadata=meta,
    )
