"""Standalone oracle: brute-force counts used to freeze expected values in
the test suite. Deliberately independent of the package (no hallq imports,
its own tiny modular linear algebra), so the two can disagree only if one of
them is wrong.

Run directly:  python3 tests/oracle_counts.py
Each printed line is frozen as a literal in the tests that cite this file.

Kronecker conventions: vertices 1, 2; forward maps b1, b2: V1 -> V2 for the
two arrows; reversed maps c1, c2: V2 -> V1. Preprojective relations:
b1 c1 + b2 c2 = 0 (at vertex 2) and c1 b1 + c2 b2 = 0 (at vertex 1), plus
nilpotency (the arrow-image filtration reaches zero).
"""

import itertools
import sys


def mat_mul(a, b, p):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)]
        for i in range(n)
    ]


def mat_rank(rows, p):
    rows = [r[:] for r in rows if r]
    if not rows:
        return 0
    cols = len(rows[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def mat_inv(m, p):
    n = len(m)
    aug = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    r = 0
    for c in range(n):
        piv = next(i for i in range(r, n) if aug[i][c] % p)
        aug[r], aug[piv] = aug[piv], aug[r]
        iv = pow(aug[r][c], p - 2, p)
        aug[r] = [(x * iv) % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


def gl_elements(n, p):
    out = []
    for entries in itertools.product(range(p), repeat=n * n):
        m = [list(entries[i * n : (i + 1) * n]) for i in range(n)]
        if mat_rank(m, p) == n:
            out.append(m)
    return out


def apply_map(m, vec, p):
    return [sum(mi[t] * vec[t] for t in range(len(vec))) % p for mi in m]


def kron_nilpotent(b1, b2, c1, c2, d1, d2, p):
    span1 = [[1 if i == j else 0 for j in range(d1)] for i in range(d1)]
    span2 = [[1 if i == j else 0 for j in range(d2)] for i in range(d2)]
    prev = (d1, d2)
    for _ in range(d1 + d2 + 1):
        new1 = [apply_map(c, v, p) for c in (c1, c2) for v in span2]
        new2 = [apply_map(b, v, p) for b in (b1, b2) for v in span1]
        r1, r2 = mat_rank(new1, p), mat_rank(new2, p)
        if r1 == 0 and r2 == 0:
            return True
        if (r1, r2) == prev:
            return False
        prev = (r1, r2)
        span1, span2 = new1, new2
    return False


SHAPES = None  # set per (d1, d2) in kron_tuples/unpack


def shapes_for(d1, d2):
    return [(d2, d1), (d2, d1), (d1, d2), (d1, d2)]


def unpack(flat, d1, d2):
    mats = []
    o = 0
    for r, c in shapes_for(d1, d2):
        mats.append([list(flat[o + i * c : o + (i + 1) * c]) for i in range(r)])
        o += r * c
    return mats


def pack(mats):
    return tuple(x for m in mats for row in m for x in row)


def kron_valid_tuples(d1, d2, p, preprojective=True):
    total = sum(r * c for r, c in shapes_for(d1, d2))
    out = []
    for flat in itertools.product(range(p), repeat=total):
        b1, b2, c1, c2 = unpack(flat, d1, d2)
        if preprojective:
            rel2 = mat_mul(b1, c1, p)
            for i, row in enumerate(mat_mul(b2, c2, p)):
                rel2[i] = [(x + y) % p for x, y in zip(rel2[i], row)]
            if any(any(row) for row in rel2):
                continue
            rel1 = mat_mul(c1, b1, p)
            for i, row in enumerate(mat_mul(c2, b2, p)):
                rel1[i] = [(x + y) % p for x, y in zip(rel1[i], row)]
            if any(any(row) for row in rel1):
                continue
            if not kron_nilpotent(b1, b2, c1, c2, d1, d2, p):
                continue
        out.append(flat)
    return out


def kron_orbits(d1, d2, p, preprojective=True):
    """(class count, sorted orbit sizes) under GL(d1) x GL(d2)."""
    remaining = set(kron_valid_tuples(d1, d2, p, preprojective))
    g1 = gl_elements(d1, p)
    g2 = gl_elements(d2, p)
    orbit_sizes = []
    while remaining:
        start = min(remaining)
        b1, b2, c1, c2 = unpack(start, d1, d2)
        orbit = set()
        for ga in g1:
            gai = mat_inv(ga, p)
            for gb in g2:
                gbi = mat_inv(gb, p)
                orbit.add(
                    pack(
                        [
                            mat_mul(mat_mul(gb, b1, p), gai, p),
                            mat_mul(mat_mul(gb, b2, p), gai, p),
                            mat_mul(mat_mul(ga, c1, p), gbi, p),
                            mat_mul(mat_mul(ga, c2, p), gbi, p),
                        ]
                    )
                )
        remaining -= orbit
        orbit_sizes.append(len(orbit))
    return len(orbit_sizes), sorted(orbit_sizes)


def kron_hall_s1_s2_support(p):
    """Class count of the support of [S1][S2] over the preprojective
    Kronecker algebra at dims (1,1).

    The only dims-(0,1) subspace of L is V2 itself; it is arrow-stable iff
    c1 = c2 = 0, and then the quotient is S1. So every forward-only class
    enters with coefficient exactly 1 and nothing else enters: the support
    size is the number of GL1 x GL1-orbits of pairs (b1, b2).
    """
    seen = set()
    classes = 0
    for t in sorted(set(itertools.product(range(p), repeat=2))):
        if t in seen:
            continue
        classes += 1
        for a in range(1, p):
            for b in range(1, p):
                s = (b * pow(a, p - 2, p)) % p
                seen.add(((t[0] * s) % p, (t[1] * s) % p))
    return classes


def main():
    for p in (2, 3):
        n_pre, sizes_pre = kron_orbits(1, 1, p, preprojective=True)
        print(
            f"kronecker preprojective dims (1,1) q={p}: "
            f"classes={n_pre} orbit_sizes={sizes_pre}"
        )
        print(
            f"kronecker path dims (1,1) q={p}: "
            f"classes={kron_hall_s1_s2_support(p)} (forward-only orbit count)"
        )
        print(
            f"kronecker preprojective [S1][S2] q={p}: "
            f"support classes={kron_hall_s1_s2_support(p)}, all coefficients 1"
        )
    n21, sizes21 = kron_orbits(2, 1, 2, preprojective=True)
    print(f"kronecker preprojective dims (2,1) q=2: classes={n21} orbit_sizes={sizes21}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
