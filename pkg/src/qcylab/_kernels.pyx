# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.

contract_int64: sum over every assignment of the index variables of the
product of integer tensor entries, enumerated depth first with pruning on
zero entries. Exact as long as the caller's magnitude bound fits in int64.

monomial_moments: per exponent vector, sum and sum of squares of the
monomial over a batch of points.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef struct Plan:
    int nvars
    int dim
    const int64_t* data
    const int64_t* offsets
    const int64_t* slots
    const int64_t* slot_start
    const int64_t* strides
    const int64_t* done_start
    const int64_t* done_list
    int64_t* assign


cdef int64_t _dfs(Plan* p, int depth, int64_t prod) nogil:
    cdef int64_t total = 0
    cdef int64_t value, idx, cur
    cdef int v, k, f, s
    if depth == p.nvars:
        return prod
    for v in range(p.dim):
        p.assign[depth] = v
        cur = prod
        for k in range(p.done_start[depth], p.done_start[depth + 1]):
            f = p.done_list[k]
            idx = 0
            for s in range(p.slot_start[f], p.slot_start[f + 1]):
                idx += p.assign[p.slots[s]] * p.strides[s]
            value = p.data[p.offsets[f] + idx]
            if value == 0:
                cur = 0
                break
            cur *= value
        if cur != 0:
            total += _dfs(p, depth + 1, cur)
    return total


def contract_int64(list factors, list slot_lists, int nvars, int dim):
    """factors[f] is a C-contiguous int64 array of shape (dim,)*len(slot_lists[f]).
    Variables must be numbered so that processing them in order 0..nvars-1
    is the intended enumeration order."""
    cdef Py_ssize_t nf = len(factors)
    flat = [np.ascontiguousarray(a, dtype=np.int64).ravel() for a in factors]
    cdef cnp.ndarray[int64_t] data = np.concatenate(flat) if flat else np.zeros(1, dtype=np.int64)
    cdef cnp.ndarray[int64_t] offsets = np.zeros(nf + 1, dtype=np.int64)
    cdef cnp.ndarray[int64_t] slot_start = np.zeros(nf + 1, dtype=np.int64)
    slots_py = []
    strides_py = []
    done_at = [[] for _ in range(nvars)]
    for f in range(nf):
        offsets[f + 1] = offsets[f] + flat[f].shape[0]
        sl = list(slot_lists[f])
        r = len(sl)
        slots_py.extend(sl)
        strides_py.extend(dim ** (r - 1 - s) for s in range(r))
        slot_start[f + 1] = slot_start[f] + r
        done_at[max(sl)].append(f)
    cdef cnp.ndarray[int64_t] slots = np.array(slots_py, dtype=np.int64)
    cdef cnp.ndarray[int64_t] strides = np.array(strides_py, dtype=np.int64)
    cdef cnp.ndarray[int64_t] done_start = np.zeros(nvars + 1, dtype=np.int64)
    done_list_py = []
    for d in range(nvars):
        done_list_py.extend(done_at[d])
        done_start[d + 1] = len(done_list_py)
    cdef cnp.ndarray[int64_t] done_list = np.array(done_list_py or [0], dtype=np.int64)
    cdef cnp.ndarray[int64_t] assign = np.zeros(max(nvars, 1), dtype=np.int64)
    cdef Plan plan
    plan.nvars = nvars
    plan.dim = dim
    plan.data = &data[0]
    plan.offsets = &offsets[0]
    plan.slots = &slots[0]
    plan.slot_start = &slot_start[0]
    plan.strides = &strides[0]
    plan.done_start = &done_start[0]
    plan.done_list = &done_list[0]
    plan.assign = &assign[0]
    cdef int64_t result
    with nogil:
        result = _dfs(&plan, 0, 1)
    return int(result)


def monomial_moments(double[:, ::1] pts, long long[:, ::1] exps):
    cdef Py_ssize_t m = pts.shape[0], d = pts.shape[1], k = exps.shape[0]
    sums = np.zeros(k)
    sq = np.zeros(k)
    cdef double[::1] s_view = sums
    cdef double[::1] q_view = sq
    cdef Py_ssize_t a, j, c
    cdef long long e, r
    cdef double val, x
    with nogil:
        for j in range(m):
            for a in range(k):
                val = 1.0
                for c in range(d):
                    e = exps[a, c]
                    x = pts[j, c]
                    for r in range(e):
                        val *= x
                s_view[a] += val
                q_view[a] += val * val
    return sums, sq
