"""Independent reference implementations used to freeze expected values.

These use dense lists and plain Python integers, and share no code with the
package beyond constructing inputs.
"""

from __future__ import annotations

from fractions import Fraction


def dense_smith_diagonal(rows: list[list[int]]) -> list[int]:
    """Nonzero invariant factors by textbook pivoting on a dense copy."""
    A = [r[:] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    for k in range(t, n):
                        A[i][k] -= q * A[t][k]
                if A[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for k in range(t, m):
                        A[k][j] -= q * A[k][t]
                if A[t][j]:
                    clean = False
            if clean:
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p]
                if not bad:
                    break
                i, _ = bad[0]
                for k in range(t, n):
                    A[t][k] += A[i][k]
                continue
            nz = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            nz += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(nz)
            A[t], A[i] = A[i], A[t]
            for r in A:
                r[t], r[j] = r[j], r[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


def rational_rank(rows: list[list[int]]) -> int:
    A = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c] / A[rank][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def rank_mod(rows: list[list[int]], p: int) -> int:
    A = [[x % p for x in r] for r in rows]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def dense_cohomology(d_in: list[list[int]], d_out: list[list[int]], dim: int) -> tuple[int, list[int]]:
    """``(free rank, torsion)`` of ``ker d_out / im d_in`` on ``Z^dim``.

    The cocycles form a saturated sublattice, so the torsion is the torsion of
    ``Z^dim / im d_in``.
    """
    r_in = rational_rank(d_in) if d_in and d_in[0] else 0
    r_out = rational_rank(d_out) if d_out and d_out[0] else 0
    tors = [d for d in dense_smith_diagonal(d_in) if d > 1] if d_in and d_in[0] else []
    return dim - r_in - r_out, sorted(tors)


def fixed_rank(action: list[list[list[int]]], rank: int) -> int:
    """Rank of the fixed sublattice ``M^G``: the common kernel of all ``g - 1``."""
    rows = []
    for A in action:
        for i in range(rank):
            rows.append([A[i][j] - (i == j) for j in range(rank)])
    return rank - rational_rank(rows)


def inhomogeneous_coboundary(order: int, mul, action, rank: int, n: int) -> list[list[int]]:
    """Dense matrix of ``C^n(G; M) -> C^{n+1}(G; M)`` on all (unnormalized) cochains.

    Left action: ``(df)(g_1..g_{n+1}) = g_1 f(g_2..) + sum (-1)^i f(..g_i g_{i+1}..)
    + (-1)^{n+1} f(g_1..g_n)``.  Tuples are enumerated lexicographically.
    """
    import itertools

    def idx(t):
        k = 0
        for g in t:
            k = k * order + g
        return k

    src = order**n * rank
    rows = []
    for t in itertools.product(range(order), repeat=n + 1):
        for a in range(rank):
            row = [0] * src
            A = action[t[0]]
            base = idx(t[1:]) * rank
            for b in range(rank):
                row[base + b] += A[a][b]
            for i in range(1, n + 1):
                merged = t[: i - 1] + (mul[t[i - 1]][t[i]],) + t[i + 1 :]
                row[idx(merged) * rank + a] += (-1) ** i
            row[idx(t[:-1]) * rank + a] += (-1) ** (n + 1)
            rows.append(row)
    return rows


def brute_group_cohomology(order: int, mul, action, rank: int, n: int) -> tuple[int, list[int]]:
    """``H^n(G; M)`` as ``(free rank, torsion)`` from the unnormalized cochain complex."""
    d_out = inhomogeneous_coboundary(order, mul, action, rank, n)
    if n == 0:
        d_in = [[] for _ in range(rank)]
    else:
        d_in = inhomogeneous_coboundary(order, mul, action, rank, n - 1)
    dim = order**n * rank
    r_in = rational_rank(d_in) if n else 0
    r_out = max(rank_mod(d_out, p) for p in (2147483647, 1000000007))
    tors = sorted(d for d in dense_smith_diagonal(d_in) if d > 1) if n else []
    return dim - r_in - r_out, tors
