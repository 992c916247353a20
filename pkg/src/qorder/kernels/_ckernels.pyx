# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; same signatures and results as ``_pykernels``."""

import numpy as np

BACKEND = "cython"


def compose(kt, const int[:, ::1] psi, const int[:, ::1] phi, const int[::1] ydeg):
    cdef const int[:, ::1] mul = kt.mul
    cdef const int[:, ::1] join = kt.join
    cdef const int[:, ::1] rr = kt.res_right
    cdef Py_ssize_t nx = phi.shape[0], ny = phi.shape[1], nz = psi.shape[1]
    cdef Py_ssize_t x, y, z
    cdef int acc, bot = kt.bottom
    out = np.empty((nx, nz), dtype=np.int32)
    cdef int[:, ::1] o = out
    for x in range(nx):
        for z in range(nz):
            acc = bot
            for y in range(ny):
                acc = join[acc, mul[psi[y, z], rr[ydeg[y], phi[x, y]]]]
            o[x, z] = acc
    return out


def imp_left(kt, const int[:, ::1] xi, const int[:, ::1] phi, const int[::1] ydeg, const int[::1] zdeg):
    cdef const int[:, ::1] meet = kt.meet
    cdef const int[:, ::1] rl = kt.res_left
    cdef const int[:, ::1] rr = kt.res_right
    cdef const int[:, :, ::1] floor = kt.floor
    cdef Py_ssize_t nx = phi.shape[0], ny = phi.shape[1], nz = xi.shape[1]
    cdef Py_ssize_t x, y, z
    cdef int acc, t, top = kt.top
    out = np.empty((ny, nz), dtype=np.int32)
    cdef int[:, ::1] o = out
    for y in range(ny):
        for z in range(nz):
            acc = top
            for x in range(nx):
                t = rr[ydeg[y], phi[x, y]]
                acc = meet[acc, rl[xi[x, z], t]]
            o[y, z] = floor[ydeg[y], zdeg[z], acc]
    return out


def imp_right(kt, const int[:, ::1] psi, const int[:, ::1] xi, const int[::1] xdeg, const int[::1] ydeg):
    cdef const int[:, ::1] meet = kt.meet
    cdef const int[:, ::1] rl = kt.res_left
    cdef const int[:, ::1] rr = kt.res_right
    cdef const int[:, :, ::1] floor = kt.floor
    cdef Py_ssize_t ny = psi.shape[0], nz = psi.shape[1], nx = xi.shape[0]
    cdef Py_ssize_t x, y, z
    cdef int acc, top = kt.top
    out = np.empty((nx, ny), dtype=np.int32)
    cdef int[:, ::1] o = out
    for x in range(nx):
        for y in range(ny):
            acc = top
            for z in range(nz):
                acc = meet[acc, rr[rl[psi[y, z], ydeg[y]], xi[x, z]]]
            o[x, y] = floor[xdeg[x], ydeg[y], acc]
    return out


def hom_join(kt, const int[:, ::1] a, const int[:, ::1] b):
    cdef const int[:, ::1] join = kt.join
    cdef Py_ssize_t i, j
    out = np.empty((a.shape[0], a.shape[1]), dtype=np.int32)
    cdef int[:, ::1] o = out
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            o[i, j] = join[a[i, j], b[i, j]]
    return out


def hom_meet(kt, const int[:, ::1] a, const int[:, ::1] b, const int[::1] xdeg, const int[::1] ydeg):
    cdef const int[:, ::1] meet = kt.meet
    cdef const int[:, :, ::1] floor = kt.floor
    cdef Py_ssize_t i, j
    out = np.empty((a.shape[0], a.shape[1]), dtype=np.int32)
    cdef int[:, ::1] o = out
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            o[i, j] = floor[xdeg[i], ydeg[j], meet[a[i, j], b[i, j]]]
    return out


def first_not_leq(kt, const int[:, ::1] a, const int[:, ::1] b):
    cdef const unsigned char[:, ::1] leq = kt.leq
    cdef Py_ssize_t i, j, m = a.shape[1]
    for i in range(a.shape[0]):
        for j in range(m):
            if not leq[a[i, j], b[i, j]]:
                return i * m + j
    return -1


def first_not_in_diagonal(kt, const int[:, ::1] a, const int[::1] xdeg, const int[::1] ydeg):
    cdef const unsigned char[:, :, ::1] ind = kt.in_diag
    cdef Py_ssize_t i, j, m = a.shape[1]
    for i in range(a.shape[0]):
        for j in range(m):
            if not ind[xdeg[i], ydeg[j], a[i, j]]:
                return i * m + j
    return -1


cdef class _Search:
    """Depth-first enumeration of order-closed maps ``X -> Q``."""

    cdef const int[:, ::1] mul
    cdef const int[:, ::1] rr
    cdef const unsigned char[:, ::1] leq
    cdef const int[:, ::1] alpha
    cdef const int[::1] xdeg
    cdef int[:, ::1] weight
    cdef int[:, ::1] cands
    cdef int[::1] ncand
    cdef int[::1] val
    cdef int n
    cdef bint lower
    cdef Py_ssize_t limit, count
    cdef object chunks
    cdef int[:, ::1] buf
    cdef Py_ssize_t fill

    def __init__(self, kt, alpha, xdeg, int q, Py_ssize_t limit, bint lower):
        cdef Py_ssize_t x, y, k
        cdef const unsigned char[:, :, ::1] ind = kt.in_diag
        self.mul = kt.mul
        self.rr = kt.res_right
        self.leq = kt.leq
        self.alpha = alpha
        self.xdeg = xdeg
        self.n = len(xdeg)
        self.lower = lower
        self.limit = limit
        nq = kt.n
        self.cands = np.zeros((max(self.n, 1), nq), dtype=np.int32)
        self.ncand = np.zeros(max(self.n, 1), dtype=np.int32)
        self.weight = np.zeros((max(self.n, 1), max(self.n, 1)), dtype=np.int32)
        self.val = np.zeros(max(self.n, 1), dtype=np.int32)
        for x in range(self.n):
            k = 0
            for u in range(nq):
                if (lower and ind[self.xdeg[x], q, u]) or (not lower and ind[q, self.xdeg[x], u]):
                    self.cands[x, k] = u
                    k += 1
            self.ncand[x] = k
            for y in range(self.n):
                self.weight[x, y] = self.rr[self.xdeg[y], self.alpha[x, y]]
        self.chunks = []
        self.buf = np.empty((1024, max(self.n, 1)), dtype=np.int32)
        self.fill = 0
        self.count = 0

    cdef bint _ok(self, int i):
        cdef int j, vi = self.val[i], vj
        for j in range(i + 1):
            vj = self.val[j]
            if self.lower:
                if not self.leq[self.mul[vj, self.weight[i, j]], vi]:
                    return False
                if not self.leq[self.mul[vi, self.weight[j, i]], vj]:
                    return False
            else:
                if not self.leq[self.mul[self.alpha[i, j], self.rr[self.xdeg[i], vi]], vj]:
                    return False
                if not self.leq[self.mul[self.alpha[j, i], self.rr[self.xdeg[j], vj]], vi]:
                    return False
        return True

    cdef int _emit(self) except -1:
        cdef int j
        if self.fill == self.buf.shape[0]:
            self.chunks.append(np.asarray(self.buf).copy())
            self.fill = 0
        for j in range(self.n):
            self.buf[self.fill, j] = self.val[j]
        self.fill += 1
        self.count += 1
        return 0

    cdef int _rec(self, int i) except -2:
        cdef int k
        if i == self.n:
            self._emit()
            if self.count > self.limit:
                return -1
            return 0
        for k in range(self.ncand[i]):
            self.val[i] = self.cands[i, k]
            if self._ok(i):
                if self._rec(i + 1) == -1:
                    return -1
        return 0

    def run(self):
        if self._rec(0) == -1:
            return None
        parts = self.chunks + [np.asarray(self.buf)[: self.fill].copy()]
        out = np.concatenate(parts, axis=0) if parts else np.empty((0, self.n), dtype=np.int32)
        return np.ascontiguousarray(out[:, : self.n], dtype=np.int32)


def enumerate_presheaves(kt, alpha, xdeg, int q, Py_ssize_t limit):
    return _Search(kt, alpha, xdeg, q, limit, True).run()


def enumerate_copresheaves(kt, alpha, xdeg, int q, Py_ssize_t limit):
    return _Search(kt, alpha, xdeg, q, limit, False).run()
