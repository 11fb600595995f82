import pytest

from wlaudit import FetchConfig, fetch_dataset, parse_tu_dataset
from wlaudit.errors import DatasetError, FetchError


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL/SKIP line per acceptance criterion test."""
    rows = {}
    for outcome in ("passed", "failed", "skipped"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            if outcome == "passed" and report.when != "call":
                continue
            rows.setdefault(nodeid, outcome)
    if not rows:
        return
    labels = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(rows):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{labels[rows[nodeid]]:<5} {name}")

_dataset_cache = {}
_audit_cache = {}


def load_real_dataset(name):
    """Fetch-or-cache a published benchmark dataset; skip the test offline."""
    from wlaudit import canonical_dataset_name

    name = canonical_dataset_name(name)
    if name in _dataset_cache:
        value = _dataset_cache[name]
        if isinstance(value, str):
            pytest.skip(value)
        return value
    cfg = FetchConfig(timeout=30.0)
    try:
        directory = fetch_dataset(cfg, name)
        dataset = parse_tu_dataset(directory, name)
    except (FetchError, DatasetError) as exc:
        msg = f"{name} unavailable here ({exc}); run with network or a warm cache"
        _dataset_cache[name] = msg
        pytest.skip(msg)
    _dataset_cache[name] = dataset
    return dataset


def audit_real_dataset(name, k_max=3, label_mode="auto"):
    from wlaudit import run_audit

    key = (name, k_max, label_mode)
    if key not in _audit_cache:
        _audit_cache[key] = run_audit(load_real_dataset(name), k_max,
                                      label_mode=label_mode)
    return _audit_cache[key]
