# cython: boundscheck=False, wraparound=False
"""Compiled scan kernels; see _scan_py.py for the reference semantics."""


def first_equal(int[:] colors, int anchor_color, int[:] candidates):
    cdef Py_ssize_t i
    for i in range(candidates.shape[0]):
        if colors[candidates[i]] == anchor_color:
            return i
    return -1


def first_repetition(int[:] colors, int[:] rows, int width):
    cdef Py_ssize_t r, i, base
    cdef int a
    cdef int half = width // 2
    cdef Py_ssize_t nrows = rows.shape[0] // width
    cdef bint ok
    for r in range(nrows):
        base = r * width
        ok = True
        for i in range(half):
            a = colors[rows[base + i]]
            if a == 0 or a != colors[rows[base + half + i]]:
                ok = False
                break
        if ok:
            return r
    return -1


def first_bicolored(int[:] colors, int[:] rows, int width):
    cdef Py_ssize_t r, i, base
    cdef int a, b, c
    cdef Py_ssize_t nrows = rows.shape[0] // width
    cdef bint ok
    for r in range(nrows):
        base = r * width
        a = colors[rows[base]]
        b = colors[rows[base + 1]]
        if a == 0 or b == 0 or a == b:
            continue
        ok = True
        for i in range(2, width):
            c = colors[rows[base + i]]
            if i % 2 == 0:
                if c != a:
                    ok = False
                    break
            else:
                if c != b:
                    ok = False
                    break
        if ok:
            return r
    return -1
