"""Symmetric-function bases, shuffle combinatorics, and exact reduction.

Schur polynomials come from the Jacobi-Trudi determinant in complete
homogeneous polynomials (division-free).  BCD blocks are polynomials in
squared variables: the basis element for a partition lam is s_lam(z^2),
invariant under signed permutations of the z's.
"""

from __future__ import annotations

from itertools import combinations

from .errors import HallforgeError
from .poly import Poly


def partitions(total, max_parts, min_part=1):
    """All partitions of `total` into at most `max_parts` parts, as weakly
    decreasing tuples, in a fixed deterministic (descending-lex) order."""
    if total == 0:
        return [()]
    if max_parts == 0:
        return []
    out = []

    def rec(rem, largest, prefix):
        if rem == 0:
            out.append(tuple(prefix))
            return
        if len(prefix) == max_parts:
            return
        for p in range(min(largest, rem), min_part - 1, -1):
            prefix.append(p)
            rec(rem - p, p, prefix)
            prefix.pop()

    rec(total, total, [])
    return out


def complete_homogeneous(k, n, offset=0, ring_n=None):
    """h_k in the n variables offset..offset+n-1 of a ring with ring_n vars."""
    ring_n = n if ring_n is None else ring_n
    if k < 0:
        return Poly.zero(ring_n)
    if k == 0:
        return Poly.const(ring_n, 1)
    if n == 0:
        return Poly.zero(ring_n)
    # h_k(x_1..x_n) = sum over multisets; build by iterated accumulation
    # h(:, j) over prefixes to avoid enumerating multisets explicitly.
    rows = [Poly.const(ring_n, 1)] + [Poly.zero(ring_n)] * k
    for v in range(n):
        for deg in range(1, k + 1):
            rows[deg] = rows[deg] + rows[deg - 1].mul_linear(1, offset + v)
            # rows[deg] now includes monomials ending at variable v
        # rows[deg] accumulates h_deg of the first v+1 variables because each
        # update appends one copy of x_{offset+v} to every lower-degree term.
    return rows[k]


def _det(mat, ring_n):
    """Determinant of a small matrix of Polys (bitmask DP over columns)."""
    size = len(mat)
    if size == 0:
        return Poly.const(ring_n, 1)
    memo = {0: Poly.const(ring_n, 1)}
    # iterate over masks with popcount = row index
    by_count = {}
    for mask in range(1 << size):
        by_count.setdefault(bin(mask).count("1"), []).append(mask)
    for row in range(size):
        for mask in by_count[row]:
            base = memo.get(mask)
            if base is None or base.is_zero():
                continue
            # placing row at column col adds #{used columns > col} inversions
            sign = 1
            for col in range(size - 1, -1, -1):
                bit = 1 << col
                if mask & bit:
                    sign = -sign
                    continue
                entry = mat[row][col]
                if not entry.is_zero():
                    add = (entry * base).scale(sign) if sign < 0 else entry * base
                    nxt = mask | bit
                    memo[nxt] = memo.get(nxt, Poly.zero(ring_n)) + add
    return memo.get((1 << size) - 1, Poly.zero(ring_n))


def schur(lam, n, offset=0, ring_n=None, squared=False):
    """Schur polynomial s_lam in n variables (Jacobi-Trudi).

    With squared=True returns s_lam(z^2): every exponent is doubled, giving
    the hyperoctahedral-invariant basis element of a BCD block.
    """
    ring_n = n if ring_n is None else ring_n
    lam = tuple(x for x in lam if x)
    if len(lam) > n:
        raise HallforgeError("partition length %d exceeds %d variables" % (len(lam), n))
    ell = len(lam)
    if ell == 0:
        return Poly.const(ring_n, 1)
    hs = {}
    need = {lam[i] - i + j for i in range(ell) for j in range(ell)}
    for k in need:
        hs[k] = complete_homogeneous(k, n, offset, ring_n)
    mat = [[hs[lam[i] - i + j] for j in range(ell)] for i in range(ell)]
    out = _det(mat, ring_n)
    if squared:
        out = out.double_exponents()
    return out


def _distinct_permutations(items):
    """Distinct permutations of a sorted list, in lexicographic order."""
    items = sorted(items)
    n = len(items)
    out = []

    def rec(remaining, prefix):
        if not remaining:
            out.append(tuple(prefix))
            return
        seen = set()
        for i, v in enumerate(remaining):
            if v in seen:
                continue
            seen.add(v)
            rec(remaining[:i] + remaining[i + 1 :], prefix + [v])

    rec(items, [])
    return out


def monomial_sym(lam, n, offset=0, ring_n=None):
    """Monomial symmetric polynomial m_lam: sum of distinct permutations."""
    ring_n = n if ring_n is None else ring_n
    lam = tuple(x for x in lam if x)
    if len(lam) > n:
        raise HallforgeError("partition length %d exceeds %d variables" % (len(lam), n))
    padded = list(lam) + [0] * (n - len(lam))
    terms = {}
    for perm in _distinct_permutations(padded):
        key = [0] * ring_n
        for j, e in enumerate(perm):
            key[offset + j] = e
        terms[tuple(key)] = 1
    return Poly.from_exponents(ring_n, terms)


# -- graded bases -------------------------------------------------------------


def block_offsets(block_spec):
    """Variable offsets for a list of (label, kind, nvars) blocks."""
    offsets, pos = [], 0
    for _, _, nv in block_spec:
        offsets.append(pos)
        pos += nv
    return offsets, pos


def weight_basis(block_spec, degree):
    """Basis of the invariant slice of given total polynomial degree.

    block_spec: list of (label, kind, nvars) with kind in {"GL", "BCD"}.
    GL blocks contribute Schur polynomials of degree |lam|; BCD blocks
    contribute s_lam(z^2) of degree 2|lam|.  Returns (basis polys, labels)
    in a deterministic order.
    """
    if degree < 0:
        return [], []
    offsets, ring_n = block_offsets(block_spec)
    choices = []
    for (_, kind, nv) in block_spec:
        per = {}
        if kind == "GL":
            for deg in range(degree + 1):
                per[deg] = partitions(deg, nv)
        else:
            for deg in range(0, degree + 1, 2):
                per[deg] = partitions(deg // 2, nv)
        choices.append(per)

    basis, labels = [], []

    def rec(i, rem, picked):
        if i == len(block_spec):
            if rem == 0:
                poly = Poly.const(ring_n, 1)
                for (blk, lam) in picked:
                    _, kind, nv = block_spec[blk]
                    factor = schur(
                        lam, nv, offsets[blk], ring_n, squared=(kind == "BCD")
                    )
                    poly = poly * factor
                basis.append(poly)
                labels.append(tuple(lam for _, lam in picked))
            return
        for deg in sorted(choices[i]):
            if deg > rem:
                break
            for lam in choices[i][deg]:
                rec(i + 1, rem - deg, picked + [(i, lam)])

    rec(0, degree, [])
    return basis, labels


def weight_basis_size(block_spec, degree):
    """Cardinality of weight_basis without building the polynomials."""
    if degree < 0:
        return 0
    counts = [1] + [0] * degree
    for (_, kind, nv) in block_spec:
        step = 1 if kind == "GL" else 2
        per = [0] * (degree + 1)
        for deg in range(0, degree + 1, step):
            per[deg] = len(partitions(deg // step, nv))
        new = [0] * (degree + 1)
        for a in range(degree + 1):
            if counts[a]:
                for b in range(0, degree + 1 - a):
                    if per[b]:
                        new[a + b] += counts[a] * per[b]
        counts = new
    return counts[degree]


# -- shuffles -----------------------------------------------------------------


def two_shuffles(d1, d2):
    """Coset data for (d1, d2)-shuffles: pairs (A, B) of sorted index tuples
    partitioning range(d1 + d2)."""
    universe = tuple(range(d1 + d2))
    out = []
    for a in combinations(universe, d1):
        aset = set(a)
        b = tuple(i for i in universe if i not in aset)
        out.append((a, b))
    return out


def three_shuffles(m, n, p):
    """Triples (A, B, C) of sorted index tuples partitioning range(m+n+p)."""
    universe = tuple(range(m + n + p))
    out = []
    for a in combinations(universe, m):
        aset = set(a)
        rest = tuple(i for i in universe if i not in aset)
        for b in combinations(rest, n):
            bset = set(b)
            c = tuple(i for i in rest if i not in bset)
            out.append((a, b, c))
    return out


def sign_vectors(d):
    """All sign vectors in {+1,-1}^d, plus-first deterministic order."""
    out = []
    for mask in range(1 << d):
        out.append(tuple(-1 if (mask >> i) & 1 else 1 for i in range(d)))
    return out


def sigma_shuffles(quiver, d, e):
    """sigma-shuffles of type (d, e): a dict per term.

    Yields dicts mapping each node of Q0^+ to a 3-shuffle (A, B, C) of its
    target block and each node of Q0^sigma to (signs, (A, B)).
    """
    idx = quiver.node_index
    plus_parts = []
    for nd in quiver.q0_plus:
        i = idx[nd]
        j = idx[quiver.sigma_nodes[nd]]
        plus_parts.append((nd, three_shuffles(d[i], e[i], d[j])))
    fixed_parts = []
    for nd in quiver.q0_sigma:
        i = idx[nd]
        pairs = two_shuffles(d[i], e[i] // 2)
        signs = sign_vectors(d[i])
        fixed_parts.append((nd, [(sg, pr) for sg in signs for pr in pairs]))

    def rec(k, current):
        parts = plus_parts + fixed_parts
        if k == len(parts):
            yield dict(current)
            return
        name, options = parts[k]
        for opt in options:
            current[name] = opt
            yield from rec(k + 1, current)
        current.pop(name, None)

    yield from rec(0, {})


def count_sigma_shuffles(quiver, d, e):
    from math import comb

    idx = quiver.node_index
    total = 1
    for nd in quiver.q0_plus:
        i, j = idx[nd], idx[quiver.sigma_nodes[nd]]
        total *= comb(d[i] + e[i] + d[j], d[i]) * comb(e[i] + d[j], e[i])
    for nd in quiver.q0_sigma:
        i = idx[nd]
        total *= (1 << d[i]) * comb(d[i] + e[i] // 2, d[i])
    return total


def enumerate_shuffles(kind, *args):
    """Public shuffle enumeration: kind in {"two", "three", "sigma"}."""
    if kind == "two":
        return two_shuffles(*args)
    if kind == "three":
        return three_shuffles(*args)
    if kind == "sigma":
        return list(sigma_shuffles(*args))
    raise HallforgeError("unknown shuffle kind %r" % (kind,))


# -- rational expressions ------------------------------------------------------


class RationalExpr:
    """Numerator polynomial with a multiset of stored linear/monomial factors."""

    def __init__(self, numerator, denom_factors=None):
        self.numerator = numerator
        self.denom_factors = dict(denom_factors or {})

    def reduce(self):
        """Exact quotient; raises InexactDivisionError when division fails."""
        from .poly import divexact_factor

        out = self.numerator
        for f in sorted(self.denom_factors):
            for _ in range(self.denom_factors[f]):
                out = divexact_factor(out, f)
        return out


def substitute(poly, n_new, mapping):
    """Signed substitution x_i -> c * y_j (or 0); mapping[i] = (c, j) or None."""
    return poly.map_variables(n_new, mapping)
