"""Reference kernels written with numpy only.

Every function mirrors one in ``_ckernels.pyx`` and must return identical
arrays. Relations are C-contiguous ``int32`` matrices of element indices;
``kt`` is a :class:`qorder.kernels.KernelTables`.
"""

import numpy as np

BACKEND = "python"


def _fold(table, acc, stack):
    # stack has the reduction axis first
    for layer in stack:
        acc = table[acc, layer]
    return acc


def compose(kt, psi, phi, ydeg):
    """``(psi o phi)[x, z] = join_y psi[y, z] & (|y| \\ phi[x, y])``."""
    nx, ny = phi.shape
    nz = psi.shape[1]
    out = np.full((nx, nz), kt.bottom, dtype=np.int32)
    if ny == 0 or nx == 0 or nz == 0:
        return out
    t = kt.res_right[ydeg[None, :], phi]
    prod = kt.mul[psi[None, :, :], t[:, :, None]]
    return np.ascontiguousarray(_fold(kt.join, out, prod.transpose(1, 0, 2)), dtype=np.int32)


def imp_left(kt, xi, phi, ydeg, zdeg):
    """Largest ``psi: Y -> Z`` with ``psi o phi <= xi``."""
    nx, ny = phi.shape
    nz = xi.shape[1]
    acc = np.full((ny, nz), kt.top, dtype=np.int32)
    if nx and ny and nz:
        t = kt.res_right[ydeg[None, :], phi]  # (x, y)
        terms = kt.res_left[xi[:, None, :], t[:, :, None]]  # (x, y, z)
        acc = _fold(kt.meet, acc, terms)
    return np.ascontiguousarray(kt.floor[ydeg[:, None], zdeg[None, :], acc], dtype=np.int32)


def imp_right(kt, psi, xi, xdeg, ydeg):
    """Largest ``phi: X -> Y`` with ``psi o phi <= xi``."""
    ny, nz = psi.shape
    nx = xi.shape[0]
    acc = np.full((nx, ny), kt.top, dtype=np.int32)
    if nx and ny and nz:
        s = kt.res_left[psi, ydeg[:, None]]  # (y, z): psi[y, z] / |y|
        terms = kt.res_right[s.T[:, None, :], xi.T[:, :, None]]  # (z, x, y)
        acc = _fold(kt.meet, acc, terms)
    return np.ascontiguousarray(kt.floor[xdeg[:, None], ydeg[None, :], acc], dtype=np.int32)


def hom_join(kt, a, b):
    return np.ascontiguousarray(kt.join[a, b], dtype=np.int32)


def hom_meet(kt, a, b, xdeg, ydeg):
    m = kt.meet[a, b]
    return np.ascontiguousarray(kt.floor[xdeg[:, None], ydeg[None, :], m], dtype=np.int32)


def first_not_leq(kt, a, b):
    """Flat index of the first entry with ``a > b`` in the lattice order, or -1."""
    bad = np.flatnonzero(~kt.leq[a, b].astype(bool))
    return int(bad[0]) if len(bad) else -1


def first_not_in_diagonal(kt, a, xdeg, ydeg):
    ok = kt.in_diag[xdeg[:, None], ydeg[None, :], a]
    bad = np.flatnonzero(ok == 0)
    return int(bad[0]) if len(bad) else -1


def _enumerate(kt, alpha, xdeg, q, limit, lower):
    n = len(xdeg)
    leq, mul, rr = kt.leq.tolist(), kt.mul.tolist(), kt.res_right.tolist()
    if lower:
        cands = [np.flatnonzero(kt.in_diag[xdeg[x], q]).tolist() for x in range(n)]
    else:
        cands = [np.flatnonzero(kt.in_diag[q, xdeg[x]]).tolist() for x in range(n)]
    # lower: mu(y) & (|y| \ alpha(x, y)) <= mu(x)
    # upper: alpha(x, y) & (|x| \ lam(x)) <= lam(y)
    a = alpha.tolist()
    xd = [int(d) for d in xdeg]
    weight = [[rr[xd[y]][a[x][y]] for y in range(n)] for x in range(n)]
    val = [0] * n
    out = []

    def ok(i):
        vi = val[i]
        for j in range(i + 1):
            vj = val[j]
            if lower:
                if not leq[mul[vj][weight[i][j]]][vi] or not leq[mul[vi][weight[j][i]]][vj]:
                    return False
            else:
                if not leq[mul[a[i][j]][rr[xd[i]][vi]]][vj] or not leq[mul[a[j][i]][rr[xd[j]][vj]]][vi]:
                    return False
        return True

    def rec(i):
        if i == n:
            out.append(list(val))
            if len(out) > limit:
                raise OverflowError
            return
        for v in cands[i]:
            val[i] = v
            if ok(i):
                rec(i + 1)

    try:
        rec(0)
    except OverflowError:
        return None
    return np.array(out, dtype=np.int32).reshape(len(out), n)


def enumerate_presheaves(kt, alpha, xdeg, q, limit):
    """All ``mu: X -> 1_q`` closed under the order; ``None`` when more than ``limit``."""
    return _enumerate(kt, alpha, xdeg, q, limit, True)


def enumerate_copresheaves(kt, alpha, xdeg, q, limit):
    return _enumerate(kt, alpha, xdeg, q, limit, False)
