"""Pure-Python kernels: one refinement pass and the connected-subgraph census.

These are the reference implementations; ``wlaudit._ckernels`` is a compiled
drop-in with identical semantics (same interned ids, same visit counts). Both
are exercised against each other in the test suite.
"""

from array import array

import numpy as np

# Position-pair bit layout for induced-subgraph masks. When vertex number d
# (0-based insertion order) joins a partial subgraph, its edges toward earlier
# vertices j < d occupy bits PAIR_BASE[d] + j. Sizes up to 4 need 6 bits.
PAIR_BASE = (0, 0, 1, 3)

# Connected 4-vertex isomorphism types, indexed by the 6-bit induced-edge mask.
PATH4, CLAW, CYCLE4, PAW, DIAMOND, CLIQUE4 = range(6)


def _connected4(mask):
    adj = [0, 0, 0, 0]
    for d in range(1, 4):
        for j in range(d):
            if mask >> (PAIR_BASE[d] + j) & 1:
                adj[d] |= 1 << j
                adj[j] |= 1 << d
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        rest = adj[v] & ~seen
        while rest:
            u = (rest & -rest).bit_length() - 1
            seen |= 1 << u
            stack.append(u)
            rest &= rest - 1
    return seen == 0b1111


def _classify4(mask):
    if not _connected4(mask):
        return -1
    edges = bin(mask).count("1")
    if edges == 6:
        return CLIQUE4
    if edges == 5:
        return DIAMOND
    degs = [0, 0, 0, 0]
    for d in range(1, 4):
        for j in range(d):
            if mask >> (PAIR_BASE[d] + j) & 1:
                degs[d] += 1
                degs[j] += 1
    degs.sort()
    if edges == 4:
        return CYCLE4 if degs == [2, 2, 2, 2] else PAW
    # 3 edges: path or star (a triangle plus isolate is disconnected)
    return CLAW if degs == [1, 1, 1, 3] else PATH4


# mask -> connected-4-type id, or -1 for disconnected masks
MASK_TABLE4 = tuple(_classify4(m) for m in range(64))


def refine_pass(indptr, indices, colors, interner, next_id):
    """One color-refinement sweep over a single graph.

    New color of v = id interned for the key (old color of v, sorted multiset
    of neighbor old colors). Keys are the int64 little-endian byte string of
    that sequence, identical to the compiled kernel's keys, so both backends
    assign the same ids given the same processing order.

    Returns (new_colors, next_id).
    """
    n = len(colors)
    out = np.empty(n, dtype=np.int64)
    ind = indices.tolist()
    ptr = indptr.tolist()
    cols = colors.tolist()
    get = interner.get
    for v in range(n):
        row = sorted(cols[j] for j in ind[ptr[v]:ptr[v + 1]])
        row.insert(0, cols[v])
        key = array("q", row).tobytes()
        cid = get(key)
        if cid is None:
            cid = next_id
            interner[key] = cid
            next_id += 1
        out[v] = cid
    return out, next_id


def motif_census(indptr, indices, n, max_size, budget):
    """Count connected induced subgraphs of 2..max_size nodes, each once.

    Enumeration walks the standard connected-subgraph tree: a subgraph is
    grown only by exclusive neighbors (adjacent to the newest vertex, not to
    any earlier one) with index above the anchor vertex, which yields every
    connected vertex set exactly once. Each visited set is classified from
    its induced-edge mask.

    Returns (visits, counts) where counts is
    (edge, p3, triangle, p4, claw, c4, paw, diamond, k4),
    or None if the number of visited subgraphs exceeds ``budget``.
    """
    ptr = indptr.tolist()
    ind = indices.tolist()
    neigh = [ind[ptr[v]:ptr[v + 1]] for v in range(n)]
    nset = [frozenset(a) for a in neigh]
    counts = [0] * 9
    seen = bytearray(n)
    visits = 0

    def extend(sub, ext, mask):
        nonlocal visits
        d = len(sub)
        anchor = sub[0]
        for i, w in enumerate(ext):
            visits += 1
            if visits > budget:
                raise _Budget
            m = mask
            wset = nset[w]
            base = PAIR_BASE[d]
            for j, s in enumerate(sub):
                if s in wset:
                    m |= 1 << (base + j)
            size = d + 1
            if size == 2:
                counts[0] += 1
            elif size == 3:
                counts[1 if bin(m & 0b111).count("1") == 2 else 2] += 1
            else:
                counts[3 + MASK_TABLE4[m]] += 1
            if size < max_size:
                child = ext[i + 1:]
                added = []
                for u in neigh[w]:
                    if u > anchor and not seen[u]:
                        seen[u] = 1
                        added.append(u)
                child.extend(added)
                extend(sub + [w], child, m)
                for u in added:
                    seen[u] = 0

    try:
        for v in range(n):
            visits += 1
            if visits > budget:
                raise _Budget
            seen[v] = 1
            ext = [u for u in neigh[v] if u > v]
            for u in ext:
                seen[u] = 1
            extend([v], ext, 0)
            seen[v] = 0
            for u in ext:
                seen[u] = 0
    except _Budget:
        return None
    return visits, tuple(counts)


class _Budget(Exception):
    pass
