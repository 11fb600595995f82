import http.server
import io
import random
import threading
import zipfile
from hashlib import sha256

import pytest

from wlaudit import (
    FetchConfig,
    build_graph,
    fetch_dataset,
    parse_tu_dataset,
    strip_node_labels,
)
from wlaudit.errors import (
    ChecksumError,
    DanglingEdgeError,
    EmptyDatasetError,
    ExtractError,
    FetchError,
    MalformedLineError,
    MissingFileError,
)
from util import k3, make_dataset, p3, random_graph, write_tu_files


def test_inline_single_path_fixture(tmp_path):
    d = tmp_path / "TOY"
    d.mkdir()
    (d / "TOY_graph_indicator.txt").write_text("1\n1\n1\n")
    (d / "TOY_A.txt").write_text("1, 2\n2, 1\n2, 3\n3, 2\n")
    (d / "TOY_graph_labels.txt").write_text("1\n")
    ds = parse_tu_dataset(d, "TOY")
    assert len(ds) == 1
    assert ds.num_classes == 1
    assert ds.class_labels == (0,)
    g = ds.graphs[0]
    assert g.edges == ((0, 1), (1, 2))
    assert not ds.has_node_labels


def test_roundtrip_random_dataset(tmp_path):
    rng = random.Random(0)
    graphs = [random_graph(rng, n_min=2, n_max=9, labeled=True) for _ in range(12)]
    labels = [rng.randrange(3) for _ in graphs]
    write_tu_files(tmp_path / "RT", "RT", graphs, labels)
    ds = parse_tu_dataset(tmp_path / "RT", "RT")
    assert len(ds) == len(graphs)
    assert ds.has_node_labels
    for original, parsed, cls in zip(graphs, ds.graphs, ds.class_labels):
        assert parsed.node_count == original.node_count
        assert parsed.edges == original.edges
    # class labels remap to dense ids but preserve the grouping
    remap = ds.metadata["class_label_map"]
    assert ds.class_labels == tuple(remap[x] for x in labels)


def test_class_labels_remapped_dense(tmp_path):
    write_tu_files(tmp_path / "NEG", "NEG", [p3(), k3(), p3()], [-1, 1, -1])
    ds = parse_tu_dataset(tmp_path / "NEG", "NEG")
    assert ds.num_classes == 2
    assert ds.class_labels == (0, 1, 0)
    assert ds.metadata["class_label_map"] == {-1: 0, 1: 1}


def test_node_labels_remapped_dense(tmp_path):
    a = build_graph(3, [(0, 1), (1, 2)], node_labels=[7, 3, 7])
    write_tu_files(tmp_path / "NL", "NL", [a], [1])
    ds = parse_tu_dataset(tmp_path / "NL", "NL")
    assert ds.num_node_labels == 2
    assert ds.graphs[0].node_labels == (1, 0, 1)


def test_whitespace_and_trailing_blanks(tmp_path):
    d = tmp_path / "WS"
    d.mkdir()
    (d / "WS_graph_indicator.txt").write_text("1\n1\n\n\n")
    (d / "WS_A.txt").write_text("1 ,  2\n 2,1 \n\n")
    (d / "WS_graph_labels.txt").write_text(" 4 \n")
    ds = parse_tu_dataset(d, "WS")
    assert ds.graphs[0].edges == ((0, 1),)


def test_single_direction_edge_rows(tmp_path):
    # some archives list each undirected edge only once
    d = tmp_path / "ONE"
    d.mkdir()
    (d / "ONE_graph_indicator.txt").write_text("1\n1\n1\n")
    (d / "ONE_A.txt").write_text("1, 2\n2, 3\n")
    (d / "ONE_graph_labels.txt").write_text("0\n")
    ds = parse_tu_dataset(d, "ONE")
    assert ds.graphs[0].edges == ((0, 1), (1, 2))


def test_missing_file(tmp_path):
    d = tmp_path / "MISS"
    d.mkdir()
    (d / "MISS_graph_indicator.txt").write_text("1\n")
    with pytest.raises(MissingFileError):
        parse_tu_dataset(d, "MISS")


def test_malformed_edge_line(tmp_path):
    d = tmp_path / "BAD"
    d.mkdir()
    (d / "BAD_graph_indicator.txt").write_text("1\n1\n")
    (d / "BAD_A.txt").write_text("1, 2\nnope\n")
    (d / "BAD_graph_labels.txt").write_text("1\n")
    with pytest.raises(MalformedLineError) as err:
        parse_tu_dataset(d, "BAD")
    assert err.value.line_no == 2


def test_dangling_edge(tmp_path):
    d = tmp_path / "DANGLE"
    d.mkdir()
    (d / "DANGLE_graph_indicator.txt").write_text("1\n2\n")
    (d / "DANGLE_A.txt").write_text("1, 2\n")
    (d / "DANGLE_graph_labels.txt").write_text("1\n2\n")
    with pytest.raises(DanglingEdgeError):
        parse_tu_dataset(d, "DANGLE")


def test_empty_dataset(tmp_path):
    d = tmp_path / "EMPTY"
    d.mkdir()
    (d / "EMPTY_graph_indicator.txt").write_text("")
    (d / "EMPTY_A.txt").write_text("")
    (d / "EMPTY_graph_labels.txt").write_text("")
    with pytest.raises(EmptyDatasetError):
        parse_tu_dataset(d, "EMPTY")


def test_graph_label_count_mismatch(tmp_path):
    d = tmp_path / "MM"
    d.mkdir()
    (d / "MM_graph_indicator.txt").write_text("1\n1\n")
    (d / "MM_A.txt").write_text("1, 2\n")
    (d / "MM_graph_labels.txt").write_text("1\n1\n")
    with pytest.raises(MalformedLineError):
        parse_tu_dataset(d, "MM")


def test_node_count_conservation(tmp_path):
    rng = random.Random(1)
    graphs = [random_graph(rng, n_min=1, n_max=6) for _ in range(8)]
    write_tu_files(tmp_path / "NC", "NC", graphs, [0] * 8)
    ds = parse_tu_dataset(tmp_path / "NC", "NC")
    lines = (tmp_path / "NC" / "NC_graph_indicator.txt").read_text().split()
    assert sum(g.node_count for g in ds.graphs) == len(lines)


def test_strip_node_labels():
    g = build_graph(3, [(0, 1), (1, 2)], node_labels=[5, 2, 5])
    d = make_dataset([g], [0])
    stripped = strip_node_labels(d)
    assert stripped.graphs[0].node_labels == (0, 0, 0)
    assert stripped.has_node_labels
    again = strip_node_labels(stripped)
    assert again.graphs[0].node_labels == (0, 0, 0)


def test_strip_unlabeled_dataset_is_noop():
    d = make_dataset([p3(), k3()], [0, 1])
    stripped = strip_node_labels(d)
    assert all(g.node_labels is None for g in stripped.graphs)
    assert not stripped.has_node_labels


# fetching against a local fixture server


def _zip_payload(name, graphs, labels, nest=True):
    buf = io.BytesIO()
    import tempfile
    from pathlib import Path

    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp) / name
        write_tu_files(root, name, graphs, labels)
        with zipfile.ZipFile(buf, "w") as zf:
            for f in sorted(root.iterdir()):
                arcname = f"{name}/{f.name}" if nest else f.name
                zf.write(f, arcname)
    return buf.getvalue()


class _Handler(http.server.BaseHTTPRequestHandler):
    payloads = {}

    def do_GET(self):
        name = self.path.strip("/")
        if name in self.payloads:
            body = self.payloads[name]
            self.send_response(200)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
        else:
            self.send_error(404)

    def log_message(self, *args):
        pass


@pytest.fixture()
def fixture_server():
    server = http.server.HTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_address[1]}", _Handler
    finally:
        server.shutdown()
        _Handler.payloads = {}


def test_fetch_cold_then_warm(tmp_path, fixture_server):
    base_url, handler = fixture_server
    payload = _zip_payload("FAKE", [p3(), k3()], [1, 2])
    handler.payloads = {"FAKE.zip": payload}
    cfg = FetchConfig(base_url=base_url, cache_dir=tmp_path, timeout=5)
    directory = fetch_dataset(cfg, "FAKE")
    assert (directory / "FAKE_A.txt").is_file()
    ds = parse_tu_dataset(directory, "FAKE")
    assert len(ds) == 2
    # warm cache: no network involved anymore
    handler.payloads = {}
    assert fetch_dataset(cfg, "FAKE") == directory


def test_fetch_flat_zip_layout(tmp_path, fixture_server):
    base_url, handler = fixture_server
    handler.payloads = {"FLAT.zip": _zip_payload("FLAT", [p3()], [0], nest=False)}
    cfg = FetchConfig(base_url=base_url, cache_dir=tmp_path, timeout=5)
    directory = fetch_dataset(cfg, "FLAT")
    assert (directory / "FLAT_A.txt").is_file()


def test_fetch_404(tmp_path, fixture_server):
    base_url, _ = fixture_server
    cfg = FetchConfig(base_url=base_url, cache_dir=tmp_path, timeout=5)
    with pytest.raises(FetchError):
        fetch_dataset(cfg, "NOPE")


def test_fetch_unreachable(tmp_path):
    cfg = FetchConfig(base_url="http://127.0.0.1:9", cache_dir=tmp_path, timeout=2)
    with pytest.raises(FetchError):
        fetch_dataset(cfg, "ANY")


def test_fetch_checksum(tmp_path, fixture_server):
    base_url, handler = fixture_server
    payload = _zip_payload("SUM", [p3()], [0])
    handler.payloads = {"SUM.zip": payload}
    good = sha256(payload).hexdigest()
    cfg = FetchConfig(base_url=base_url, cache_dir=tmp_path / "a", timeout=5,
                      checksum=good)
    assert fetch_dataset(cfg, "SUM")
    bad = FetchConfig(base_url=base_url, cache_dir=tmp_path / "b", timeout=5,
                      checksum="0" * 64)
    with pytest.raises(ChecksumError):
        fetch_dataset(bad, "SUM")


def test_fetch_bad_archive(tmp_path, fixture_server):
    base_url, handler = fixture_server
    handler.payloads = {"JUNK.zip": b"this is not a zip"}
    cfg = FetchConfig(base_url=base_url, cache_dir=tmp_path, timeout=5)
    with pytest.raises(ExtractError):
        fetch_dataset(cfg, "JUNK")


def test_concurrent_fetch_single_download(tmp_path, fixture_server):
    import threading as th

    base_url, handler = fixture_server
    payload = _zip_payload("RACE", [p3()], [0])
    requests = []
    orig = handler.do_GET

    def counted(self):
        requests.append(self.path)
        orig(self)

    handler.do_GET = counted
    handler.payloads = {"RACE.zip": payload}
    cfg = FetchConfig(base_url=base_url, cache_dir=tmp_path, timeout=5)
    results = []
    threads = [th.Thread(target=lambda: results.append(fetch_dataset(cfg, "RACE")))
               for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    handler.do_GET = orig
    assert len(set(results)) == 1
    assert (results[0] / "RACE_A.txt").is_file()
    # the lock serializes fetchers; late arrivals hit the warm cache
    assert len(requests) == 1


def test_dataset_name_aliases(tmp_path):
    from wlaudit import canonical_dataset_name

    assert canonical_dataset_name("IMDB-B") == "IMDB-BINARY"
    assert canonical_dataset_name("imdb-m") == "IMDB-MULTI"
    assert canonical_dataset_name("REDDIT-M-5K") == "REDDIT-MULTI-5K"
    assert canonical_dataset_name("MUTAG") == "MUTAG"
    # an alias hits the canonical cache entry without any network
    write_tu_files(tmp_path / "IMDB-BINARY", "IMDB-BINARY", [p3()], [0])
    cfg = FetchConfig(base_url="http://127.0.0.1:9", cache_dir=tmp_path, timeout=2)
    assert fetch_dataset(cfg, "IMDB-B") == tmp_path / "IMDB-BINARY"
