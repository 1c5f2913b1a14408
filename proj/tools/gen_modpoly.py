#!/usr/bin/env python3
"""Regenerate data/phi3.txt (classical modular polynomial of level 3).

Solves for the integer coefficients of Phi_l(X, Y) from the q-expansion of j
by exact linear algebra: Phi_l(j(q), j(q^l)) = 0 as a Laurent series.
Output lines are "i j coefficient" for monomials X^i Y^j with i >= j.
"""
import sys
from fractions import Fraction


def j_series(n):
    """Coefficients of q*j(q) = 1 + 744 q + ..., as a list of length n."""
    sigma3 = [0] * n
    for d in range(1, n):
        for m in range(d, n, d):
            sigma3[m] += d ** 3
    e4 = [1] + [240 * sigma3[k] for k in range(1, n)]

    def mul(a, b):
        c = [0] * n
        for i, x in enumerate(a):
            if x:
                for k, y in enumerate(b[: n - i]):
                    c[i + k] += x * y
        return c

    e4cubed = mul(mul(e4, e4), e4)
    # prod (1-q^k)^24, then invert
    prod = [1] + [0] * (n - 1)
    for k in range(1, n):
        for _ in range(24):
            for m in range(n - 1, k - 1, -1):
                prod[m] -= prod[m - k]
    inv = [0] * n
    inv[0] = 1
    for m in range(1, n):
        inv[m] = -sum(prod[k] * inv[m - k] for k in range(1, m + 1))
    return mul(e4cubed, inv)


class Laurent:
    def __init__(self, val, coeffs):
        self.val = val
        self.c = coeffs

    def mul(self, other, prec):
        n = prec - (self.val + other.val)
        out = [0] * max(n, 0)
        for i, x in enumerate(self.c[:n]):
            if x:
                for k, y in enumerate(other.c[: n - i]):
                    out[i + k] += x * y
        return Laurent(self.val + other.val, out)


def modpoly(level, prec=12):
    deg = level + 1
    terms = level * deg + prec + 5
    js = j_series(terms * level + 10)
    jq = Laurent(-1, js)
    jql = [0] * (len(js) * level)
    for k, x in enumerate(js):
        jql[k * level] = x
    jql = Laurent(-level, jql)
    top = 1 + prec
    powers_x = [Laurent(0, [1] + [0] * 400)]
    powers_y = [Laurent(0, [1] + [0] * 400)]
    work = top + 2 * level * deg + 5
    for _ in range(deg):
        powers_x.append(powers_x[-1].mul(jq, work))
        powers_y.append(powers_y[-1].mul(jql, work))
    low = -level * deg

    def dense(s):
        out = {}
        for k, x in enumerate(s.c):
            e = s.val + k
            if low <= e < top:
                out[e] = out.get(e, 0) + x
        return out

    unknowns = [(i, j) for i in range(deg) for j in range(i + 1) if not (i == level and j == level)]
    known = {}
    for i, j, v in [(deg, 0, 1), (level, level, -1)]:
        known[(i, j)] = v
    rows = {}

    work = top + 2 * level * deg + 5

    def add(i, j, coeff_key, scale):
        a = powers_x[i].mul(powers_y[j], work)
        d = dense(a)
        if i != j:
            b = powers_x[j].mul(powers_y[i], work)
            for e, x in dense(b).items():
                d[e] = d.get(e, 0) + x
        for e, x in d.items():
            rows.setdefault(e, {})
            rows[e][coeff_key] = rows[e].get(coeff_key, 0) + scale * x

    for (i, j) in unknowns:
        add(i, j, (i, j), 1)
    for (i, j), v in known.items():
        add(i, j, "rhs", -v)
    keys = unknowns
    mat = []
    for e in sorted(rows):
        r = rows[e]
        mat.append([Fraction(r.get(k, 0)) for k in keys] + [Fraction(r.get("rhs", 0))])
    # Gaussian elimination
    ncol = len(keys)
    piv_row = 0
    pivots = []
    for col in range(ncol):
        pr = next((r for r in range(piv_row, len(mat)) if mat[r][col] != 0), None)
        if pr is None:
            continue
        mat[piv_row], mat[pr] = mat[pr], mat[piv_row]
        pv = mat[piv_row][col]
        mat[piv_row] = [x / pv for x in mat[piv_row]]
        for r in range(len(mat)):
            if r != piv_row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[piv_row])]
        pivots.append(col)
        piv_row += 1
    if len(pivots) != ncol:
        raise SystemExit("underdetermined; raise prec")
    for r in mat[piv_row:]:
        if r[-1] != 0:
            raise SystemExit("inconsistent system")
    sol = {keys[c]: mat[k][-1] for k, c in enumerate(pivots)}
    sol.update(known)
    for v in sol.values():
        assert v.denominator == 1
    return {k: int(v) for k, v in sol.items() if v != 0}


if __name__ == "__main__":
    level = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    coeffs = modpoly(level)
    for (i, j) in sorted(coeffs, reverse=True):
        print(i, j, coeffs[(i, j)])
