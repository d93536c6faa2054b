# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled table law checker; same contract as ``_tablecheck_py.check_table``."""

import numpy as np

LAWS = ("monoid-unit", "monoid-assoc", "eq1-left", "eq1-right", "eq2-left", "eq2-right", "eq3")


def check_table(agg, nret, off, dl, dr, long unit):
    cdef const long long[::1] A = np.ascontiguousarray(agg, dtype=np.int64)
    cdef const long long[::1] R = np.ascontiguousarray(nret, dtype=np.int64)
    cdef const long long[::1] O = np.ascontiguousarray(off, dtype=np.int64)
    cdef const long long[::1] L = np.ascontiguousarray(dl, dtype=np.int64)
    cdef const long long[::1] D = np.ascontiguousarray(dr, dtype=np.int64)
    cdef Py_ssize_t N = R.shape[0]
    cdef Py_ssize_t i, j, k, r, ij, jk, o_ij, o_jk, o_ab_c, o_a_bc, x, y, base
    cdef long long out[7][5]
    cdef bint assoc_ok = True
    cdef bint f0 = False, f1 = False, f2 = False
    cdef bint done

    for i in range(7):
        for j in range(5):
            out[i][j] = 0

    for i in range(N):
        if A[i * N + unit] != i or A[unit * N + i] != i:
            out[0][0] = 1; out[0][1] = i
            break

    done = False
    for i in range(N):
        for j in range(N):
            ij = A[i * N + j]
            for k in range(N):
                if A[ij * N + k] != A[i * N + A[j * N + k]]:
                    out[1][0] = 1; out[1][1] = i; out[1][2] = j; out[1][3] = k
                    assoc_ok = False
                    done = True
                    break
            if done:
                break
        if done:
            break

    if out[0][0] == 0:
        done = False
        for i in range(N):
            base = O[i * N + unit]
            for r in range(R[i]):
                if L[base + r] != r:
                    out[2][0] = 1; out[2][1] = i; out[2][4] = r
                    done = True
                    break
            if done:
                break
        done = False
        for i in range(N):
            base = O[unit * N + i]
            for r in range(R[i]):
                if D[base + r] != r:
                    out[3][0] = 1; out[3][1] = i; out[3][4] = r
                    done = True
                    break
            if done:
                break

    if assoc_ok:
        done = False
        for i in range(N):
            for j in range(N):
                ij = A[i * N + j]
                o_ij = O[i * N + j]
                for k in range(N):
                    jk = A[j * N + k]
                    o_ab_c = O[ij * N + k]
                    o_a_bc = O[i * N + jk]
                    o_jk = O[j * N + k]
                    for r in range(R[A[ij * N + k]]):
                        x = L[o_ab_c + r]
                        y = D[o_a_bc + r]
                        if not f0 and L[o_ij + x] != L[o_a_bc + r]:
                            f0 = True
                            out[4][0] = 1; out[4][1] = i; out[4][2] = j; out[4][3] = k; out[4][4] = r
                        if not f1 and D[o_jk + y] != D[o_ab_c + r]:
                            f1 = True
                            out[5][0] = 1; out[5][1] = i; out[5][2] = j; out[5][3] = k; out[5][4] = r
                        if not f2 and D[o_ij + x] != L[o_jk + y]:
                            f2 = True
                            out[6][0] = 1; out[6][1] = i; out[6][2] = j; out[6][3] = k; out[6][4] = r
                        if f0 and f1 and f2:
                            done = True
                            break
                    if done:
                        break
                if done:
                    break
            if done:
                break

    return [[int(out[i][j]) for j in range(5)] for i in range(7)]
