"""Pure-Python table law checker (fallback for the compiled kernel).

Tables are integer-indexed.  With ``N`` contributions:

* ``agg`` is a flat length ``N*N`` list; ``agg[i*N + j]`` is the index of ``i*j``.
* ``nret[k]`` is the number of returns on contribution ``k``.
* ``off[i*N + j]`` is where the distribution of returns on ``i*j`` starts in
  ``dl`` / ``dr``: return ``r`` on ``i*j`` is sent to
  ``(dl[off[i*N+j] + r], dr[off[i*N+j] + r])``.

Shape (ranges of every entry) must already be validated by the caller.
``check_table`` returns one row per law in ``LAWS`` order:
``(found, i, j, k, r)`` with ``found`` 0/1 and the first witness in
loop order.
"""

LAWS = ("monoid-unit", "monoid-assoc", "eq1-left", "eq1-right", "eq2-left", "eq2-right", "eq3")


def check_table(agg, nret, off, dl, dr, unit):
    N = len(nret)
    out = [[0, 0, 0, 0, 0] for _ in LAWS]

    for i in range(N):
        if agg[i * N + unit] != i or agg[unit * N + i] != i:
            out[0] = [1, i, 0, 0, 0]
            break

    assoc_ok = True
    for i in range(N):
        for j in range(N):
            ij = agg[i * N + j]
            for k in range(N):
                if agg[ij * N + k] != agg[i * N + agg[j * N + k]]:
                    out[1] = [1, i, j, k, 0]
                    assoc_ok = False
                    break
            if not assoc_ok:
                break
        if not assoc_ok:
            break

    if out[0][0] == 0:
        for law, shares, left_slot in ((2, dl, True), (3, dr, False)):
            for i in range(N):
                base = off[i * N + unit] if left_slot else off[unit * N + i]
                bad = next((r for r in range(nret[i]) if shares[base + r] != r), None)
                if bad is not None:
                    out[law] = [1, i, 0, 0, bad]
                    break

    if not assoc_ok:
        return out

    found = [False, False, False]
    for i in range(N):
        for j in range(N):
            ij = agg[i * N + j]
            o_ij = off[i * N + j]
            for k in range(N):
                jk = agg[j * N + k]
                o_ab_c = off[ij * N + k]
                o_a_bc = off[i * N + jk]
                o_jk = off[j * N + k]
                for r in range(nret[agg[ij * N + k]]):
                    x = dl[o_ab_c + r]  # share of i*j
                    y = dr[o_a_bc + r]  # share of j*k
                    if not found[0] and dl[o_ij + x] != dl[o_a_bc + r]:
                        found[0] = True
                        out[4] = [1, i, j, k, r]
                    if not found[1] and dr[o_jk + y] != dr[o_ab_c + r]:
                        found[1] = True
                        out[5] = [1, i, j, k, r]
                    if not found[2] and dr[o_ij + x] != dl[o_jk + y]:
                        found[2] = True
                        out[6] = [1, i, j, k, r]
                    if found[0] and found[1] and found[2]:
                        return out
    return out
