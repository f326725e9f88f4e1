"""Cohomological Hall algebra engine.

Elements of degree d are Weyl-invariant polynomials in the variables
x_{i,1..d_i}; the product is the Kontsevich-Soibelman shuffle sum with kernel
prod_{a: i->j} prod (x''_{j,b} - x'_{i,a}) / prod_i prod (x''_{i,b} - x'_{i,a}),
reduced to a polynomial by one exact division over the common denominator.
Cohomological weight of a homogeneous element is 2*deg + chi(d, d).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import GradingError, HallforgeError, SymmetryError
from .linalg import Echelon
from .poly import Poly, mul_factor, normalize_factor, qdiv
from .series import (
    InvariantTable,
    SignedInvariantTable,
    dt_series,
    invert_pochhammer_factorization,
    sign_pow,
)
from .symfun import two_shuffles, weight_basis, weight_basis_size


def coha_block_layout(quiver, d):
    """Variable offsets per node for the x_{i,1..d_i} ring (sorted node order)."""
    offsets, pos = {}, 0
    for n in quiver.nodes:
        offsets[n] = pos
        pos += d[quiver.node_index[n]]
    return offsets, pos


def coha_var_names(quiver, d):
    names = []
    for n in quiver.nodes:
        for j in range(d[quiver.node_index[n]]):
            names.append("x:%s:%d" % (n, j + 1))
    return names


class CohaElement:
    """Dimension vector plus an S_d-invariant polynomial."""

    __slots__ = ("quiver", "d", "poly")

    def __init__(self, quiver, d, poly, check=True):
        self.quiver = quiver
        self.d = quiver.check_dim(d)
        nvars = sum(self.d)
        if poly.n != nvars:
            raise GradingError("polynomial ring has %d vars, need %d" % (poly.n, nvars))
        self.poly = poly
        if check and not self.is_invariant():
            raise GradingError("polynomial is not Weyl invariant")

    @classmethod
    def unit(cls, quiver, d=None):
        d = quiver.zero() if d is None else d
        return cls(quiver, d, Poly.const(sum(d), 1), check=False)

    @classmethod
    def slot_monomial(cls, quiver, d, exps):
        """Element with polynomial prod x_{node,1}^e; exps maps node -> e.

        Only useful when each referenced node has a single variable slot,
        where any monomial is automatically Weyl invariant."""
        offsets, n = coha_block_layout(quiver, d)
        p = Poly.const(n, 1)
        for node, e in exps.items():
            p = p * Poly.variable(n, offsets[node], e)
        return cls(quiver, d, p)

    def is_invariant(self):
        offsets, _ = coha_block_layout(self.quiver, self.d)
        for n in self.quiver.nodes:
            base = offsets[n]
            for j in range(self.d[self.quiver.node_index[n]] - 1):
                if self.poly.swap_variables(base + j, base + j + 1) != self.poly:
                    return False
        return True

    def is_zero(self):
        return self.poly.is_zero()

    def weight(self):
        if not self.poly.is_homogeneous():
            raise GradingError("weight of an inhomogeneous element")
        deg = max(self.poly.degree(), 0)
        return 2 * deg + self.quiver.euler_form(self.d, self.d)

    def __eq__(self, other):
        return (
            isinstance(other, CohaElement)
            and self.quiver == other.quiver
            and self.d == other.d
            and self.poly == other.poly
        )

    def __repr__(self):
        return "CohaElement(d=%r, %r)" % (self.d, self.poly)

    def scale(self, c):
        return CohaElement(self.quiver, self.d, self.poly.scale(c), check=False)

    def __add__(self, other):
        if self.d != other.d:
            raise GradingError("cannot add elements of different degree")
        return CohaElement(self.quiver, self.d, self.poly + other.poly, check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def to_json_dict(self):
        names = coha_var_names(self.quiver, self.d)
        return {
            "d": list(self.d),
            "poly": [
                {
                    "exp": {names[i]: e for i, e in enumerate(k) if e},
                    "c": str(c),
                }
                for k, c in self.poly.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, quiver, doc):
        d = quiver.check_dim(tuple(int(x) for x in doc["d"]))
        names = {nm: i for i, nm in enumerate(coha_var_names(quiver, d))}
        n = sum(d)
        terms = {}
        for t in doc["poly"]:
            key = [0] * n
            for nm, e in t["exp"].items():
                key[names[nm]] = int(e)
            terms[tuple(key)] = Fraction(t["c"])
        return cls(quiver, d, Poly.from_exponents(n, terms))


# -- shuffle product ----------------------------------------------------------


def _coha_kernel(quiver, d1, d2):
    """Cached per-(d1,d2) shuffle data: (parts, common denominator).

    parts: list of (fmap, gmap, scalar, C_pi) where C_pi is the kernel
    numerator times the complement of this term's denominator inside the
    common denominator, fully expanded.
    """
    key = ("coha_kernel", d1, d2)
    cached = quiver._cache.get(key)
    if cached is not None:
        return cached
    idx = quiver.node_index
    d = tuple(a + b for a, b in zip(d1, d2))
    offsets, nvars = coha_block_layout(quiver, d)
    off1, _ = coha_block_layout(quiver, d1)
    off2, _ = coha_block_layout(quiver, d2)

    per_node = []
    for n in quiver.nodes:
        per_node.append((n, two_shuffles(d1[idx[n]], d2[idx[n]])))

    raw_terms = []

    def rec(i, chosen):
        if i == len(per_node):
            raw_terms.append(dict(chosen))
            return
        n, opts = per_node[i]
        for opt in opts:
            chosen[n] = opt
            rec(i + 1, chosen)
        chosen.pop(n, None)

    rec(0, {})

    terms = []
    for assign in raw_terms:
        fmap = [None] * sum(d1)
        gmap = [None] * sum(d2)
        slot1, slot2 = {}, {}
        for n in quiver.nodes:
            A, B = assign[n]
            for a, pos in enumerate(A):
                fmap[off1[n] + a] = (1, offsets[n] + pos)
                slot1[(n, a)] = offsets[n] + pos
            for b, pos in enumerate(B):
                gmap[off2[n] + b] = (1, offsets[n] + pos)
                slot2[(n, b)] = offsets[n] + pos
        scalar = 1
        num_factors = []
        denom = {}
        for aid, t, h in quiver.arrows:
            for b in range(d2[idx[h]]):
                for a in range(d1[idx[t]]):
                    s, f = normalize_factor(1, slot2[(h, b)], -1, slot1[(t, a)])
                    scalar *= s
                    num_factors.append(f)
        for n in quiver.nodes:
            for b in range(d2[idx[n]]):
                for a in range(d1[idx[n]]):
                    s, f = normalize_factor(1, slot2[(n, b)], -1, slot1[(n, a)])
                    scalar = qdiv(scalar, s)
                    denom[f] = denom.get(f, 0) + 1
        terms.append((fmap, gmap, scalar, num_factors, denom))

    from .poly import multiset_union

    common = multiset_union([t[4] for t in terms])
    parts = []
    for fmap, gmap, scalar, num_factors, denom in terms:
        c = Poly.const(nvars, 1)
        for f in num_factors:
            c = mul_factor(c, f)
        for f in sorted(common):
            for _ in range(common[f] - denom.get(f, 0)):
                c = mul_factor(c, f)
        parts.append((fmap, gmap, scalar, c))
    cached = (parts, common, nvars)
    quiver._cache[key] = cached
    return cached


def shuffle_mul(f, g):
    """Kontsevich-Soibelman shuffle product of CoHA elements."""
    if f.quiver != g.quiver:
        raise HallforgeError("elements over different quivers")
    quiver = f.quiver
    if f.is_zero() or g.is_zero():
        d = tuple(a + b for a, b in zip(f.d, g.d))
        return CohaElement(quiver, d, Poly.zero(sum(d)), check=False)
    parts, common, nvars = _coha_kernel(quiver, f.d, g.d)
    total = Poly.zero(nvars)
    for fmap, gmap, scalar, cpoly in parts:
        fx = f.poly.map_variables(nvars, fmap)
        gx = g.poly.map_variables(nvars, gmap)
        total = total + (fx * gx * cpoly).scale(scalar)
    from .poly import divexact_factor

    for fac in sorted(common):
        for _ in range(common[fac]):
            total = divexact_factor(total, fac)
    d = tuple(a + b for a, b in zip(f.d, g.d))
    return CohaElement(quiver, d, total, check=False)


def product(factors):
    """Left-associated shuffle product of a list of elements."""
    out = None
    for f in factors:
        out = f if out is None else shuffle_mul(out, f)
    return out


def s_involution(f):
    """S_H(f): degree sigma(d), substitution x_{i,j} -> -x_{sigma(i),j}."""
    quiver = f.quiver
    sd = quiver.sigma_dim(f.d)
    off_src, _ = coha_block_layout(quiver, f.d)
    off_dst, nvars = coha_block_layout(quiver, sd)
    mapping = [None] * sum(f.d)
    for n in quiver.nodes:
        dn = f.d[quiver.node_index[n]]
        for j in range(dn):
            mapping[off_src[n] + j] = (-1, off_dst[quiver.sigma_nodes[n]] + j)
    return CohaElement(quiver, sd, f.poly.map_variables(nvars, mapping), check=False)


# -- graded slices --------------------------------------------------------------


def coha_blocks(quiver, d):
    return [
        (n, "GL", d[quiver.node_index[n]])
        for n in quiver.nodes
        if d[quiver.node_index[n]]
    ]


def slice_degree(quiver, d, k):
    """Polynomial degree of the (d,k) slice, or None when the slice is empty."""
    chi = quiver.euler_form(d, d)
    if (k - chi) % 2 or k < chi:
        return None
    return (k - chi) // 2


def coha_slice_basis(quiver, d, k):
    deg = slice_degree(quiver, d, k)
    if deg is None:
        return []
    basis, _ = weight_basis(coha_blocks(quiver, d), deg)
    n = sum(d)
    return [CohaElement(quiver, d, p if p.n == n else Poly(n, dict(p.terms)), check=False) for p in basis]


def coha_slice_dim(quiver, d, k):
    deg = slice_degree(quiver, d, k)
    if deg is None:
        return 0
    return weight_basis_size(coha_blocks(quiver, d), deg)


def _nonzero_decompositions(d):
    """Ordered pairs (a, b) of nonzero vectors with a + b = d."""
    from itertools import product as iproduct

    ranges = [range(x + 1) for x in d]
    out = []
    for a in iproduct(*ranges):
        if not any(a):
            continue
        b = tuple(x - y for x, y in zip(d, a))
        if not any(b):
            continue
        out.append((a, b))
    out.sort()
    return out


def dt_invariants(quiver, maxdim, window):
    """Pochhammer-factorization exponents of A_Q (symmetric quivers)."""
    if not quiver.is_symmetric():
        raise SymmetryError("DT invariants need a symmetric quiver")
    return invert_pochhammer_factorization(dt_series(quiver, maxdim, window))


# -- primitive parts -------------------------------------------------------------


def _ideal_echelon(quiver, d, k):
    """Echelon of the slice of sum_{a+b=d} H_a H_b inside H_(d,k) (cached)."""
    key = ("coha_ideal", d, k)
    cached = quiver._cache.get(key)
    if cached is not None:
        return cached
    if not quiver.is_symmetric():
        raise SymmetryError("primitive parts are computed for symmetric quivers")
    ech = Echelon()
    chi = quiver.euler_form
    for a, b in _nonzero_decompositions(d):
        for k1 in range(chi(a, a), k - chi(b, b) + 1):
            gens = generator_complement(quiver, a, k1)
            if not gens:
                continue
            k2 = k - k1
            for belem in coha_slice_basis(quiver, b, k2):
                for c in gens:
                    ech.add(shuffle_mul(c, belem).poly.terms)
    quiver._cache[key] = ech
    return ech


def generator_complement(quiver, d, k):
    """Deterministic basis of a complement of the product-ideal slice in
    H_(d,k); its span maps isomorphically onto V_(d,k) = H/(H_+ . H_+)."""
    key = ("coha_complement", d, k)
    cached = quiver._cache.get(key)
    if cached is not None:
        return cached
    if slice_degree(quiver, d, k) is None:
        quiver._cache[key] = []
        return []
    if not _nonzero_decompositions(d):
        out = coha_slice_basis(quiver, d, k)
        quiver._cache[key] = out
        return out
    ech = _ideal_echelon(quiver, d, k)
    probe = Echelon()
    for piv, row in ech.pivots.items():
        probe.add(dict(row))
    out = []
    for belem in coha_slice_basis(quiver, d, k):
        if probe.add(dict(belem.poly.terms)):
            out.append(belem)
    quiver._cache[key] = out
    return out


class PrimitiveTable:
    """dim V^prim per (d,k), with the stored (non-canonical) complement basis."""

    def __init__(self, quiver, dims, bases, validity, maxdim):
        self.quiver = quiver
        self.dims = dims
        self.bases = bases
        self.validity = validity
        self.maxdim = maxdim

    def table(self):
        return InvariantTable(self.quiver, "torus", self.dims, self.validity, self.maxdim)


def _power_sum_element(quiver, d):
    """sigma_d = sum of all variables, as a degree-(d, chi+2) element."""
    n = sum(d)
    p = Poly.zero(n)
    for i in range(n):
        p = p + Poly.variable(n, i)
    return CohaElement(quiver, d, p, check=False)


def primitive_basis(quiver, d, k):
    """Basis of a complement of (product ideal + sigma_d * V_(d,k-2)) inside
    H_(d,k); its span maps isomorphically onto V^prim_(d,k)."""
    key = ("coha_primitive", d, k)
    cached = quiver._cache.get(key)
    if cached is not None:
        return cached
    if slice_degree(quiver, d, k) is None:
        quiver._cache[key] = []
        return []
    probe = Echelon()
    if _nonzero_decompositions(d):
        for piv, row in _ideal_echelon(quiver, d, k).pivots.items():
            probe.add(dict(row))
    if slice_degree(quiver, d, k) > 0:
        sigma = _power_sum_element(quiver, d)
        for c in generator_complement(quiver, d, k - 2):
            probe.add((sigma.poly * c.poly).terms)
    out = []
    for belem in coha_slice_basis(quiver, d, k):
        if probe.add(dict(belem.poly.terms)):
            out.append(belem)
    quiver._cache[key] = out
    return out


def primitive_dims(quiver, maxdim, window):
    """dim V^prim_(d,k): slice dimension minus the rank of the product ideal
    plus the power-sum tower (V = V^prim (x) Q[sigma_d])."""
    if not quiver.is_symmetric():
        raise SymmetryError("primitive dims need a symmetric quiver")
    if not quiver.supercommutativity_criterion():
        raise SymmetryError("supercommutativity criterion fails; twist not implemented")
    from itertools import product as iproduct

    dims, bases, validity = {}, {}, {}
    n = len(quiver.nodes)
    for d in iproduct(*(range(maxdim + 1) for _ in range(n))):
        if not any(d) or sum(d) > maxdim:
            continue
        chi = quiver.euler_form(d, d)
        validity[d] = chi + window
        for k in range(chi, chi + window + 1):
            gens = primitive_basis(quiver, d, k)
            if gens:
                dims[(d, k)] = len(gens)
                bases[(d, k)] = gens
    return PrimitiveTable(quiver, dims, bases, validity, maxdim)


def quotient_involution_matrix(quiver, d, k):
    """Matrix of S_H on V_(d,k) = H_(d,k)/ideal in the stored complement
    basis (sigma(d) must equal d)."""
    if quiver.sigma_dim(d) != d:
        raise GradingError("S_H acts on the (d,k) slice only when sigma(d) = d")
    gens = generator_complement(quiver, d, k)
    if not gens:
        return []
    solver = Echelon(augmented=True)
    ech = _ideal_echelon(quiver, d, k)
    for i, (piv, row) in enumerate(sorted(ech.pivots.items())):
        solver.add(dict(row), tag=("ideal", i))
    for j, c in enumerate(gens):
        solver.add(dict(c.poly.terms), tag=("gen", j))
    mat = []
    for c in gens:
        y = s_involution(c)
        res, coords = solver.reduce(dict(y.poly.terms))
        if res:
            raise HallforgeError("S_H does not preserve ideal + complement span")
        # res = y + sum coords_j * row_j, hence y = -sum coords_j * row_j
        row = [Fraction(0)] * len(gens)
        for tag, v in coords.items():
            if tag[0] == "gen":
                row[tag[1]] = -v
        mat.append(row)
    return mat


def equivariant_dt(quiver, e_target, maxdim, window):
    """Z2-equivariant DT invariants Omega~^(+-) for the twist class e_target.

    Loop quivers use the parity dichotomy applied to dt_invariants; otherwise
    the twisted involution (-1)^(chi(e,d)+E(d)) S_H acts on the primitive
    quotient and the +-/- eigenspace dimensions are reported per H(d)-class.
    """
    if not quiver.is_sigma_symmetric():
        raise SymmetryError("equivariant DT invariants need a sigma-symmetric quiver")
    e_target = quiver.check_selfdual_dim(e_target)
    entries = {}
    if len(quiver.nodes) == 1:
        table = dt_invariants(quiver, maxdim // 2, window)
        validity = {}
        for d, hi in table.validity.items():
            h = quiver.hyperbolic(d)
            if any(d) and sum(h) <= maxdim:
                validity[h] = hi
        for (d, k), m in table.entries.items():
            h = quiver.hyperbolic(d)
            if sum(h) > maxdim:
                continue
            chi_ed = quiver.euler_form(e_target, d)
            par = (chi_ed + quiver.sd_euler_form(d) + (k - quiver.euler_form(d, d)) // 2) % 2
            plus, minus = entries.get((h, k), (0, 0))
            if par == 0:
                plus += m
            else:
                minus += m
            entries[(h, k)] = (plus, minus)
        return SignedInvariantTable(quiver, entries, maxdim, validity)

    from itertools import product as iproduct

    n = len(quiver.nodes)
    seen = set()
    validity = {}
    for d in iproduct(*(range(maxdim + 1) for _ in range(n))):
        if not any(d):
            continue
        h = quiver.hyperbolic(d)
        if sum(h) > maxdim:
            continue
        sd = quiver.sigma_dim(d)
        if (sd, d) in seen:
            continue
        seen.add((d, sd))
        chi = quiver.euler_form(d, d)
        top = chi + window
        if h in validity:
            validity[h] = min(validity[h], top)
        else:
            validity[h] = top
        eps = sign_pow(quiver.euler_form(e_target, d) + quiver.sd_euler_form(d))
        # V_(d,.) = V^prim (x) Q[sigma_d] with S_H(sigma_d) = -sigma_d, so the
        # primitive trace is tp_k = t_k + t_{k-2} and dim p_k = r_k - r_{k-2}.
        for k in range(chi, chi + window + 1):
            if sd == d:
                r_k = len(generator_complement(quiver, d, k))
                r_k2 = len(generator_complement(quiver, d, k - 2))
                p_k = r_k - r_k2
                if p_k < 0:
                    raise HallforgeError("power-sum tower is not free at %r" % (d,))
                if p_k == 0:
                    continue
                t_k = _quotient_trace(quiver, d, k)
                t_k2 = _quotient_trace(quiver, d, k - 2)
                tp = t_k + t_k2
                if (p_k + tp) % 2:
                    raise HallforgeError("non-integral eigenspace dimensions")
                nplus = (p_k + int(tp)) // 2
                nminus = p_k - nplus
                if eps < 0:
                    nplus, nminus = nminus, nplus
            else:
                p_k = len(generator_complement(quiver, d, k)) - len(
                    generator_complement(quiver, d, k - 2)
                )
                if not p_k:
                    continue
                nplus = nminus = p_k
            plus, minus = entries.get((h, k), (0, 0))
            entries[(h, k)] = (plus + nplus, minus + nminus)
    return SignedInvariantTable(quiver, entries, maxdim, validity)


def _quotient_trace(quiver, d, k):
    mat = quotient_involution_matrix(quiver, d, k)
    return sum(mat[i][i] for i in range(len(mat)))
