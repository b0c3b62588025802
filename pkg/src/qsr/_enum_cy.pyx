# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled box enumeration kernel (int64 arithmetic).

Mirrors _enum_py.enumerate_box exactly.  Callers are responsible for the
overflow guard: all partial values fit in int64 whenever
4 * sum |g_ij| R_i R_j + |t| < 2**62 (checked in qsr.enumeration).
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

BACKEND_NAME = "cython"


cdef struct SolBuf:
    long long *data
    size_t length
    size_t cap


cdef int buf_push(SolBuf *buf, long long *u, int m) nogil:
    cdef size_t need = buf.length + <size_t> m
    cdef long long *grown
    if need > buf.cap:
        while buf.cap < need:
            buf.cap *= 2
        grown = <long long *> realloc(buf.data, buf.cap * sizeof(long long))
        if grown == NULL:
            return -1
        buf.data = grown
    memcpy(buf.data + buf.length, u, m * sizeof(long long))
    buf.length = need
    return 0


cdef int c_rec(int k, long long val, long long t, int m,
               long long *gram, long long *radii, long long *S,
               long long *u, long long *c,
               long long top_lo, long long top_hi,
               SolBuf *buf, long long *examined) nogil:
    cdef long long slack, d, gkk, ck, v, vlo, vhi
    cdef int i
    if k < 0:
        examined[0] += 1
        if val == t:
            if buf_push(buf, u, m) != 0:
                return -1
        return 0
    slack = S[k]
    for i in range(k + 1):
        slack += 2 * radii[i] * (c[i] if c[i] >= 0 else -c[i])
    d = t - val
    if d < -slack or d > slack:
        return 0
    gkk = gram[k * m + k]
    ck = c[k]
    if k < m - 1:
        vlo = -radii[k]
        vhi = radii[k]
    else:
        vlo = top_lo
        vhi = top_hi
    for i in range(k):
        c[i] += gram[i * m + k] * vlo
    v = vlo
    while v <= vhi:
        u[k] = v
        if c_rec(k - 1, val + gkk * v * v + 2 * v * ck, t, m,
                 gram, radii, S, u, c, top_lo, top_hi, buf, examined) != 0:
            return -1
        for i in range(k):
            c[i] += gram[i * m + k]
        v += 1
    for i in range(k):
        c[i] -= gram[i * m + k] * (vhi + 1)
    u[k] = 0
    return 0


def enumerate_box(gram, t, radii, lo=None, hi=None):
    """Same contract as qsr._enum_py.enumerate_box."""
    cdef int m = len(gram)
    if m == 0:
        return [], 0
    cdef long long tt = t
    cdef long long top_lo = -radii[m - 1] if lo is None else lo
    cdef long long top_hi = radii[m - 1] if hi is None else hi

    cdef long long *g = <long long *> malloc(m * m * sizeof(long long))
    cdef long long *r = <long long *> malloc(m * sizeof(long long))
    cdef long long *S = <long long *> malloc(m * sizeof(long long))
    cdef long long *u = <long long *> malloc(m * sizeof(long long))
    cdef long long *c = <long long *> malloc(m * sizeof(long long))
    cdef SolBuf buf
    buf.cap = 256
    buf.length = 0
    buf.data = <long long *> malloc(buf.cap * sizeof(long long))
    if g == NULL or r == NULL or S == NULL or u == NULL or c == NULL or buf.data == NULL:
        free(g); free(r); free(S); free(u); free(c); free(buf.data)
        raise MemoryError

    cdef int i, k
    cdef long long acc = 0
    cdef long long examined = 0
    cdef int status
    try:
        for i in range(m):
            r[i] = radii[i]
            u[i] = 0
            c[i] = 0
            for k in range(m):
                g[i * m + k] = gram[i][k]
        for k in range(m):
            acc += (g[k * m + k] if g[k * m + k] >= 0 else -g[k * m + k]) * r[k] * r[k]
            for i in range(k):
                acc += 2 * (g[i * m + k] if g[i * m + k] >= 0 else -g[i * m + k]) * r[i] * r[k]
            S[k] = acc
        with nogil:
            status = c_rec(m - 1, 0, tt, m, g, r, S, u, c, top_lo, top_hi, &buf, &examined)
        if status != 0:
            raise MemoryError
        sols = []
        for i in range(<int> (buf.length // m)):
            sols.append(tuple(buf.data[i * m + k] for k in range(m)))
        return sols, examined
    finally:
        free(g); free(r); free(S); free(u); free(c); free(buf.data)
