"""Shared helpers for the test suite: small named graphs, random generators,
independent oracles, and a TU flat-file fixture writer."""

from itertools import combinations, permutations

from wlaudit import build_graph


# small named graphs

def p3():
    return build_graph(3, [(0, 1), (1, 2)])


def p4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3)])


def p5():
    return build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


def k3():
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


def k4():
    return build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def c4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def c6():
    return build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])


def two_triangles():
    return build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])


def claw():
    return build_graph(4, [(0, 1), (0, 2), (0, 3)])


def paw():
    return build_graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])


def diamond():
    return build_graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def rook44():
    idx = lambda i, j: 4 * i + j
    edges = []
    for i in range(4):
        for j in range(4):
            for jj in range(j + 1, 4):
                edges.append((idx(i, j), idx(i, jj)))
                edges.append((idx(j, i), idx(jj, i)))
    return build_graph(16, edges)


def shrikhande():
    idx = lambda i, j: 4 * i + j
    conn = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]
    edges = []
    for i in range(4):
        for j in range(4):
            for di, dj in conn:
                edges.append((idx(i, j), idx((i + di) % 4, (j + dj) % 4)))
    return build_graph(16, edges)


# random generators

def er_edges(rng, n, p):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def random_graph(rng, n_min=1, n_max=20, p=None, labeled=False, label_values=3):
    n = rng.randint(n_min, n_max)
    if p is None:
        p = rng.choice([0.1, 0.2, 0.3, 0.5])
    labels = [rng.randrange(label_values) for _ in range(n)] if labeled else None
    return build_graph(n, er_edges(rng, n, p), labels)


def random_permutation(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def prufer_tree(rng, n):
    """Random labeled tree on n nodes via its Prufer sequence."""
    if n == 1:
        return build_graph(1, [])
    if n == 2:
        return build_graph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return build_graph(n, edges)


# independent oracles

def permutation_oracle(g, h, use_labels=False):
    """Ground-truth isomorphism by trying every node bijection."""
    n = g.node_count
    if n != h.node_count or g.edge_count != h.edge_count:
        return False
    h_edges = set(h.edges)
    for perm in permutations(range(n)):
        if use_labels and any(
            g.node_labels[v] != h.node_labels[perm[v]] for v in range(n)
        ):
            continue
        ok = True
        for u, v in g.edges:
            a, b = perm[u], perm[v]
            if (a, b) not in h_edges and (b, a) not in h_edges:
                ok = False
                break
        if ok:
            return True
    return False


def ahu_canonical(g):
    """Canonical form of a tree: rooted encodings at the centroid(s)."""
    n = g.node_count
    if n == 1:
        return "()"
    adj = [list(g.neighbors(v)) for v in range(n)]

    # centroid(s) by repeatedly peeling leaves
    degree = [len(a) for a in adj]
    layer = [v for v in range(n) if degree[v] <= 1]
    removed = [False] * n
    remaining = n
    while remaining > 2:
        nxt = []
        for v in layer:
            removed[v] = True
            remaining -= 1
            for u in adj[v]:
                if not removed[u]:
                    degree[u] -= 1
                    if degree[u] == 1:
                        nxt.append(u)
        layer = nxt

    def encode(v, parent):
        parts = sorted(encode(u, v) for u in adj[v] if u != parent and not removed[u])
        return "(" + "".join(parts) + ")"

    centers = [v for v in range(n) if not removed[v]]
    return min(encode(c, -1) for c in centers)


def brute_force_motifs(g, max_size=4):
    """Induced connected-subgraph counts by checking every vertex subset.

    Classification is independent of the package's mask table: it matches the
    induced subgraph against reference graphlets with networkx.
    """
    import networkx as nx

    refs3 = {"p3": nx.path_graph(3), "triangle": nx.cycle_graph(3)}
    refs4 = {
        "p4": nx.path_graph(4),
        "claw": nx.star_graph(3),
        "c4": nx.cycle_graph(4),
        "paw": nx.Graph([(0, 1), (1, 2), (2, 0), (2, 3)]),
        "diamond": nx.Graph([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
        "k4": nx.complete_graph(4),
    }
    G = nx.Graph()
    G.add_nodes_from(range(g.node_count))
    G.add_edges_from(g.edges)
    counts = {"node_count": g.node_count, "edge_count": G.number_of_edges()}
    memo = {}
    if max_size >= 3:
        counts.update(dict.fromkeys(refs3, 0))
    if max_size >= 4:
        counts.update(dict.fromkeys(refs4, 0))
    for size in range(3, max_size + 1):
        refs = refs3 if size == 3 else refs4
        for sub in combinations(range(g.node_count), size):
            mask = tuple(
                1 if G.has_edge(sub[a], sub[b]) else 0
                for a in range(size) for b in range(a + 1, size)
            )
            hit = memo.get((size, mask))
            if hit is None:
                H = G.subgraph(sub)
                hit = ""
                if nx.is_connected(H):
                    for name, ref in refs.items():
                        if nx.is_isomorphic(H, ref):
                            hit = name
                            break
                memo[(size, mask)] = hit
            if hit:
                counts[hit] += 1
    return counts


# TU flat-file fixture writer (the package deliberately has no writer)

def write_tu_files(directory, name, graphs, class_labels, with_node_labels=None):
    """Serialize graphs into the TU layout with 1-based ids and both edge
    directions listed."""
    directory.mkdir(parents=True, exist_ok=True)
    if with_node_labels is None:
        with_node_labels = all(g.node_labels is not None for g in graphs)

    indicator = []
    a_rows = []
    node_labels = []
    offset = 0
    for gi, g in enumerate(graphs, start=1):
        indicator.extend([str(gi)] * g.node_count)
        for u, v in g.edges:
            a_rows.append(f"{offset + u + 1}, {offset + v + 1}")
            a_rows.append(f"{offset + v + 1}, {offset + u + 1}")
        if with_node_labels:
            node_labels.extend(str(x) for x in g.node_labels)
        offset += g.node_count

    (directory / f"{name}_graph_indicator.txt").write_text("\n".join(indicator) + "\n")
    (directory / f"{name}_A.txt").write_text("\n".join(a_rows) + "\n")
    (directory / f"{name}_graph_labels.txt").write_text(
        "\n".join(str(x) for x in class_labels) + "\n")
    if with_node_labels:
        (directory / f"{name}_node_labels.txt").write_text("\n".join(node_labels) + "\n")
    return directory


def make_dataset(graphs, class_labels, name="synthetic"):
    from wlaudit import Dataset

    return Dataset(
        name=name,
        graphs=tuple(graphs),
        class_labels=tuple(class_labels),
        has_node_labels=all(g.node_labels is not None for g in graphs),
        num_classes=len(set(class_labels)),
        metadata={},
    )
