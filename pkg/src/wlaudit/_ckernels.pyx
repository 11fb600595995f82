# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: refinement pass and connected-subgraph census.

Semantically identical to ``wlaudit._pykernels``: same interned byte keys,
same enumeration order, same visit counts. Keep the two in lockstep.
"""

import numpy as np

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc
from cpython.bytes cimport PyBytes_FromStringAndSize

from wlaudit._pykernels import MASK_TABLE4 as _MASK_TABLE4_PY


cdef int[64] MASK_TABLE4
for _i, _t in enumerate(_MASK_TABLE4_PY):
    MASK_TABLE4[_i] = _t

cdef int[4] PAIR_BASE
PAIR_BASE[0] = 0
PAIR_BASE[1] = 0
PAIR_BASE[2] = 1
PAIR_BASE[3] = 3


cdef void _sort_i64(int64_t* a, Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    # In-place quicksort with insertion sort below a small cutoff; neighbor
    # color runs are short, so this beats calling out to libc qsort.
    cdef Py_ssize_t i, j, p, q
    cdef int64_t pivot, tmp
    while hi - lo > 16:
        p = lo + (hi - lo) // 2
        # median-of-three pivot
        if a[p] < a[lo]:
            tmp = a[p]; a[p] = a[lo]; a[lo] = tmp
        if a[hi - 1] < a[lo]:
            tmp = a[hi - 1]; a[hi - 1] = a[lo]; a[lo] = tmp
        if a[hi - 1] < a[p]:
            tmp = a[hi - 1]; a[hi - 1] = a[p]; a[p] = tmp
        pivot = a[p]
        i = lo
        q = hi - 1
        while True:
            while a[i] < pivot:
                i += 1
            while a[q] > pivot:
                q -= 1
            if i >= q:
                break
            tmp = a[i]; a[i] = a[q]; a[q] = tmp
            i += 1
            q -= 1
        _sort_i64(a, lo, q + 1)
        lo = q + 1
    for i in range(lo + 1, hi):
        pivot = a[i]
        j = i
        while j > lo and a[j - 1] > pivot:
            a[j] = a[j - 1]
            j -= 1
        a[j] = pivot


def refine_pass(indptr, indices, colors, dict interner, next_id):
    """One refinement sweep. See the pure kernel for the contract."""
    cdef const int64_t[::1] ptr = indptr
    cdef const int64_t[::1] ind = indices
    cdef const int64_t[::1] col = colors
    cdef Py_ssize_t n = col.shape[0]
    out_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef long long nid = next_id
    cdef Py_ssize_t v, i, start, end, deg, cap
    cdef int64_t* buf
    cdef object key, hit

    cap = 64
    buf = <int64_t*> malloc(cap * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    try:
        for v in range(n):
            start = ptr[v]
            end = ptr[v + 1]
            deg = end - start
            if deg + 1 > cap:
                while cap < deg + 1:
                    cap *= 2
                free(buf)
                buf = <int64_t*> malloc(cap * sizeof(int64_t))
                if buf == NULL:
                    raise MemoryError()
            buf[0] = col[v]
            for i in range(deg):
                buf[1 + i] = col[ind[start + i]]
            _sort_i64(buf, 1, deg + 1)
            key = PyBytes_FromStringAndSize(<char*> buf, (deg + 1) * sizeof(int64_t))
            hit = interner.get(key)
            if hit is None:
                interner[key] = nid
                out[v] = nid
                nid += 1
            else:
                out[v] = <long long> hit
    finally:
        free(buf)
    return out_arr, nid


cdef struct EsuState:
    const int64_t* ptr
    const int64_t* ind
    char* seen
    int64_t* ext_buf        # max_size stacked extension arrays of length n
    int64_t* sub
    Py_ssize_t n
    int64_t anchor
    int max_size
    long long visits
    long long budget
    long long counts[9]


cdef inline bint _has_edge(EsuState* st, int64_t a, int64_t b) noexcept nogil:
    cdef int64_t lo = st.ptr[a]
    cdef int64_t hi = st.ptr[a + 1]
    cdef int64_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if st.ind[mid] < b:
            lo = mid + 1
        else:
            hi = mid
    return lo < st.ptr[a + 1] and st.ind[lo] == b


cdef int _extend(EsuState* st, int d, int64_t* ext, Py_ssize_t ext_len, int mask) noexcept nogil:
    cdef Py_ssize_t i, j, k, child_len, rem
    cdef int64_t w, u
    cdef int m, size, base
    cdef int64_t* child
    for i in range(ext_len):
        w = ext[i]
        st.visits += 1
        if st.visits > st.budget:
            return 1
        m = mask
        base = PAIR_BASE[d]
        for j in range(d):
            if _has_edge(st, st.sub[j], w):
                m |= 1 << (base + j)
        size = d + 1
        if size == 2:
            st.counts[0] += 1
        elif size == 3:
            if ((m & 1) + ((m >> 1) & 1) + ((m >> 2) & 1)) == 2:
                st.counts[1] += 1
            else:
                st.counts[2] += 1
        else:
            st.counts[3 + MASK_TABLE4[m]] += 1
        if size < st.max_size:
            child = st.ext_buf + size * st.n
            rem = ext_len - i - 1
            child_len = 0
            for k in range(i + 1, ext_len):
                child[child_len] = ext[k]
                child_len += 1
            for k in range(st.ptr[w], st.ptr[w + 1]):
                u = st.ind[k]
                if u > st.anchor and not st.seen[u]:
                    st.seen[u] = 1
                    child[child_len] = u
                    child_len += 1
            st.sub[d] = w
            if _extend(st, d + 1, child, child_len, m):
                return 1
            # unmark only the exclusive neighbors appended beyond the
            # inherited remainder of ext
            for k in range(rem, child_len):
                st.seen[child[k]] = 0
    return 0


def motif_census(indptr, indices, n, max_size, budget):
    """Connected-subgraph census. See the pure kernel for the contract."""
    cdef const int64_t[::1] ptr = indptr
    cdef const int64_t[::1] ind = indices
    cdef EsuState st
    cdef Py_ssize_t nn = n
    cdef Py_ssize_t v, k, ext_len
    cdef int64_t u
    cdef int exceeded = 0

    st.ptr = &ptr[0] if ptr.shape[0] > 0 else NULL
    st.ind = &ind[0] if ind.shape[0] > 0 else st.ptr
    st.n = nn
    st.max_size = max_size
    st.visits = 0
    st.budget = budget
    for k in range(9):
        st.counts[k] = 0
    if nn == 0:
        return 0, tuple(st.counts[k] for k in range(9))

    st.seen = <char*> malloc(nn)
    st.sub = <int64_t*> malloc(4 * sizeof(int64_t))
    st.ext_buf = <int64_t*> malloc(4 * nn * sizeof(int64_t))
    if st.seen == NULL or st.sub == NULL or st.ext_buf == NULL:
        free(st.seen); free(st.sub); free(st.ext_buf)
        raise MemoryError()
    for v in range(nn):
        st.seen[v] = 0

    try:
        with nogil:
            for v in range(nn):
                st.visits += 1
                if st.visits > st.budget:
                    exceeded = 1
                    break
                st.anchor = v
                st.seen[v] = 1
                ext_len = 0
                for k in range(st.ptr[v], st.ptr[v + 1]):
                    u = st.ind[k]
                    if u > v:
                        st.ext_buf[ext_len] = u
                        st.seen[u] = 1
                        ext_len += 1
                st.sub[0] = v
                if _extend(&st, 1, st.ext_buf, ext_len, 0):
                    exceeded = 1
                    break
                st.seen[v] = 0
                for k in range(ext_len):
                    st.seen[st.ext_buf[k]] = 0
    finally:
        free(st.seen)
        free(st.sub)
        free(st.ext_buf)

    if exceeded:
        return None
    return st.visits, tuple(st.counts[k] for k in range(9))
