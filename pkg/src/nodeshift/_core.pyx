# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Mirrors ``nodeshift._pycore`` function for function."""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc

cnp.import_array()

ctypedef cnp.int64_t i64


def tour_costs(tours, const i64[:, ::1] matrix):
    cdef const i64[:, ::1] t = np.ascontiguousarray(tours, dtype=np.int64)
    cdef Py_ssize_t pop = t.shape[0], n = t.shape[1], r, k
    out = np.empty(pop, dtype=np.int64)
    cdef i64[::1] res = out
    cdef i64 total
    for r in range(pop):
        total = matrix[t[r, n - 1], t[r, 0]]
        for k in range(n - 1):
            total += matrix[t[r, k], t[r, k + 1]]
        res[r] = total
    return out


def nse_decode_many(ref, chromos):
    cdef const i64[::1] rt = np.ascontiguousarray(ref, dtype=np.int64)
    cdef const i64[:, ::1] ch = np.ascontiguousarray(chromos, dtype=np.int64)
    cdef Py_ssize_t n = rt.shape[0], pop = ch.shape[0]
    if ch.shape[1] != n - 1:
        raise ValueError(f"chromosome length {ch.shape[1]} != {n - 1}")
    out = np.empty((pop, n), dtype=np.int64)
    cdef i64[:, ::1] tours = out
    cdef i64* rank = <i64*> malloc(n * sizeof(i64))
    cdef Py_ssize_t r, i, j
    cdef i64 old, new, shift
    cdef bint bad = False
    try:
        with nogil:
            for r in range(pop):
                for i in range(n):
                    rank[i] = i
                for i in range(1, n):
                    shift = ch[r, i - 1]
                    if shift < 0 or shift > n - 2:
                        bad = True
                        break
                    old = rank[i]
                    new = old + shift
                    if new > n - 1:
                        new = new - n + 1
                    if new > old:
                        for j in range(n):
                            if old <= rank[j] <= new:
                                rank[j] -= 1
                    else:
                        for j in range(n):
                            if new <= rank[j] < old:
                                rank[j] += 1
                    rank[i] = new
                if bad:
                    break
                for i in range(n):
                    tours[r, rank[i]] = rt[i]
    finally:
        free(rank)
    if bad:
        raise ValueError(f"shift outside [0, {n - 2}] in chromosome {r}")
    return out


def dc_decode_many(map_tour, guides):
    cdef const i64[::1] mt = np.ascontiguousarray(map_tour, dtype=np.int64)
    cdef const i64[:, ::1] g = np.ascontiguousarray(guides, dtype=np.int64)
    cdef Py_ssize_t n = mt.shape[0], pop = g.shape[0], length = g.shape[1], r, k
    if length % 2:
        raise ValueError(f"guide length {length} is odd")
    out = np.empty((pop, n), dtype=np.int64)
    cdef i64[:, ::1] tours = out
    cdef i64 p, q, held
    cdef bint bad = False
    with nogil:
        for r in range(pop):
            for k in range(n):
                tours[r, k] = mt[k]
            for k in range(0, length, 2):
                p = g[r, k]
                q = g[r, k + 1]
                if p < 0 or p >= n or q < 0 or q >= n:
                    bad = True
                    break
                held = tours[r, p]
                tours[r, p] = tours[r, q]
                tours[r, q] = held
            if bad:
                break
    if bad:
        raise ValueError(f"guide position outside [0, {n - 1}] in guide {r}")
    return out


cdef void _splice(const i64[::1] head, const i64[::1] donor, Py_ssize_t cut,
                  i64[::1] child, char* taken) noexcept nogil:
    cdef Py_ssize_t n = head.shape[0], k, w
    for k in range(n):
        taken[k] = 0
    for k in range(cut):
        child[k] = head[k]
        taken[head[k]] = 1
    w = cut
    for k in range(n):
        if not taken[donor[k]]:
            child[w] = donor[k]
            w += 1


def order_crossover(a, b, cuts):
    cdef const i64[:, ::1] pa = np.ascontiguousarray(a, dtype=np.int64)
    cdef const i64[:, ::1] pb = np.ascontiguousarray(b, dtype=np.int64)
    cdef const i64[::1] cs = np.ascontiguousarray(cuts, dtype=np.int64)
    cdef Py_ssize_t pop = pa.shape[0], n = pa.shape[1], r
    first = np.empty((pop, n), dtype=np.int64)
    second = np.empty((pop, n), dtype=np.int64)
    cdef i64[:, ::1] c1 = first
    cdef i64[:, ::1] c2 = second
    cdef char* taken = <char*> malloc(n)
    try:
        with nogil:
            for r in range(pop):
                _splice(pa[r], pb[r], cs[r], c1[r], taken)
                _splice(pb[r], pa[r], cs[r], c2[r], taken)
    finally:
        free(taken)
    return first, second


def swap_mutation(tours, mask, partners):
    out = np.array(tours, dtype=np.int64, order="C")
    cdef i64[:, ::1] t = out
    cdef const cnp.uint8_t[:, ::1] m = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef const i64[:, ::1] q = np.ascontiguousarray(partners, dtype=np.int64)
    cdef Py_ssize_t pop = t.shape[0], n = t.shape[1], r, j
    cdef i64 held
    with nogil:
        for r in range(pop):
            for j in range(n):
                if m[r, j]:
                    held = t[r, j]
                    t[r, j] = t[r, q[r, j]]
                    t[r, q[r, j]] = held
    return out
