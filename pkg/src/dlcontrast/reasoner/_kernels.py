"""Saturation kernels over integer-encoded normal-form rules.

Atom 0 is top and atom 1 is bottom.  Both kernels return the subsumption
matrix ``S`` (``S[a, b]`` means a ⊑ b) and the derived links as three arrays
``(src, role, dst)``.  Rows are complete for the ``roots`` and for every atom
reachable from them through links; other rows may be left empty.
"""
from __future__ import annotations

import numpy as np

from .._accel import njit


@njit(cache=True)
def _csr(keys, n):
    ptr = np.zeros(n + 1, np.int64)
    for k in keys:
        ptr[k + 1] += 1
    for i in range(n):
        ptr[i + 1] += ptr[i]
    order = np.empty(len(keys), np.int64)
    fill = ptr[:-1].copy()
    for j in range(len(keys)):
        k = keys[j]
        order[fill[k]] = j
        fill[k] += 1
    return ptr, order


@njit(cache=True)
def _push(S, members, cnt, qa, qx, qlen, a, b):
    if S[a, b] == 0:
        S[a, b] = 1
        members[a, cnt[a]] = b
        cnt[a] += 1
        qa[qlen] = a
        qx[qlen] = b
        qlen += 1
    return qlen


@njit(cache=True)
def _grow(arr):
    out = np.empty(2 * arr.shape[0], arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True)
def saturate_worklist(
    n, sub_src, sub_dst, conj_a, conj_b, conj_dst,
    exr_src, exr_role, exr_dst, exl_role, exl_fill, exl_dst, roots,
):
    S = np.zeros((n, n), np.uint8)
    members = np.empty((n, n), np.int32)
    cnt = np.zeros(n, np.int64)
    qa = np.empty(n * n, np.int32)
    qx = np.empty(n * n, np.int32)
    qlen = 0

    sub_ptr, sub_ord = _csr(sub_src, n)
    c_key = np.concatenate((conj_a, conj_b))
    c_other = np.concatenate((conj_b, conj_a))
    c_dst = np.concatenate((conj_dst, conj_dst))
    conj_ptr, conj_ord = _csr(c_key, n)
    exr_ptr, exr_ord = _csr(exr_src, n)
    exl_ptr, exl_ord = _csr(exl_fill, n)

    # incoming links as linked lists per destination atom
    cap = 16
    l_src = np.empty(cap, np.int64)
    l_role = np.empty(cap, np.int64)
    l_dst = np.empty(cap, np.int64)
    l_next = np.empty(cap, np.int64)
    head = np.full(n, -1, np.int64)
    nl = 0
    seen = {np.int64(-1)}
    seen.discard(np.int64(-1))

    # contexts are opened for the roots and then on demand for link targets
    opened = np.zeros(n, np.uint8)
    for a in roots:
        if not opened[a]:
            opened[a] = 1
            qlen = _push(S, members, cnt, qa, qx, qlen, a, a)
            qlen = _push(S, members, cnt, qa, qx, qlen, a, 0)

    while qlen > 0:
        qlen -= 1
        a = qa[qlen]
        x = qx[qlen]
        for k in range(sub_ptr[x], sub_ptr[x + 1]):
            qlen = _push(S, members, cnt, qa, qx, qlen, a, sub_dst[sub_ord[k]])
        for k in range(conj_ptr[x], conj_ptr[x + 1]):
            j = conj_ord[k]
            if S[a, c_other[j]]:
                qlen = _push(S, members, cnt, qa, qx, qlen, a, c_dst[j])
        for k in range(exr_ptr[x], exr_ptr[x + 1]):
            j = exr_ord[k]
            r = exr_role[j]
            b = exr_dst[j]
            key = (np.int64(r) * n + a) * n + b
            if key in seen:
                continue
            seen.add(key)
            if not opened[b]:
                opened[b] = 1
                qlen = _push(S, members, cnt, qa, qx, qlen, b, b)
                qlen = _push(S, members, cnt, qa, qx, qlen, b, 0)
            if nl == l_src.shape[0]:
                l_src = _grow(l_src)
                l_role = _grow(l_role)
                l_dst = _grow(l_dst)
                l_next = _grow(l_next)
            l_src[nl] = a
            l_role[nl] = r
            l_dst[nl] = b
            l_next[nl] = head[b]
            head[b] = nl
            nl += 1
            for t in range(cnt[b]):
                y = members[b, t]
                if y == 1:
                    qlen = _push(S, members, cnt, qa, qx, qlen, a, 1)
                for kk in range(exl_ptr[y], exl_ptr[y + 1]):
                    jj = exl_ord[kk]
                    if exl_role[jj] == r:
                        qlen = _push(S, members, cnt, qa, qx, qlen, a, exl_dst[jj])
        e = head[a]
        while e != -1:
            p = l_src[e]
            r = l_role[e]
            if x == 1:
                qlen = _push(S, members, cnt, qa, qx, qlen, p, 1)
            for kk in range(exl_ptr[x], exl_ptr[x + 1]):
                jj = exl_ord[kk]
                if exl_role[jj] == r:
                    qlen = _push(S, members, cnt, qa, qx, qlen, p, exl_dst[jj])
            e = l_next[e]
    return S, l_src[:nl].copy(), l_role[:nl].copy(), l_dst[:nl].copy()


def saturate_matrix(
    n, sub_src, sub_dst, conj_a, conj_b, conj_dst,
    exr_src, exr_role, exr_dst, exl_role, exl_fill, exl_dst, roots=None,
):
    """Vectorized fixpoint: every rule applied to all atoms at once, so ``roots`` is unused."""
    S = np.eye(n, dtype=bool)
    S[:, 0] = True
    sub = np.zeros((n, n), dtype=bool)
    sub[sub_src, sub_dst] = True
    conj_out = np.zeros((len(conj_dst), n), dtype=bool)
    conj_out[np.arange(len(conj_dst)), conj_dst] = True
    roles = np.unique(np.concatenate((exr_role, exl_role)))
    exr, exl = {}, {}
    for r in roles:
        m = exr_role == r
        er = np.zeros((n, n), dtype=bool)
        er[exr_src[m], exr_dst[m]] = True
        exr[r] = er
        m = exl_role == r
        el = np.zeros((n, n), dtype=bool)
        el[exl_fill[m], exl_dst[m]] = True
        exl[r] = el

    def mm(x, y):
        return (x.astype(np.float32) @ y.astype(np.float32)) > 0

    while True:
        new = S | mm(S, sub)
        if len(conj_dst):
            new |= mm(S[:, conj_a] & S[:, conj_b], conj_out)
        links = {}
        for r in roles:
            R = mm(S, exr[r])
            links[r] = R
            if R.any():
                new |= mm(R, mm(S, exl[r]))
                new[:, 1] |= mm(R, S[:, 1:2])[:, 0]
        if np.array_equal(new, S):
            break
        S = new
    src, role, dst = [], [], []
    for r, R in links.items():
        a, b = np.nonzero(R)
        src.append(a)
        dst.append(b)
        role.append(np.full(len(a), r, np.int64))
    return S.astype(np.uint8), _cat(src), _cat(role), _cat(dst)


def _cat(parts):
    return np.concatenate(parts).astype(np.int64) if parts else np.zeros(0, np.int64)


KERNELS = {"numba": saturate_worklist, "numpy": saturate_matrix}
