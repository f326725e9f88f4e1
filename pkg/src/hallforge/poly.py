"""Sparse multivariate polynomials with exact rational coefficients.

This is the computational core: polynomials live in a fixed ordered tuple of
abstract variables (index 0..n-1).  Monomials are packed into single integers
(SHIFT bits per variable), so monomial multiplication is integer addition;
coefficients are Python ints wherever possible and fractions.Fraction
otherwise.  No floating point anywhere.

Shuffle sums assemble rational functions whose denominators are products of
linear binomials x_a +- x_b and monomials x_a; `sum_linear_fractions` puts
everything over the common denominator once and performs the exact division
at the end (an inexact division signals a bug, never a fallback).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InexactDivisionError

SHIFT = 10
MASK = (1 << SHIFT) - 1
MAXDEG = MASK


def _num(c):
    """Normalize a coefficient: plain int when integral, Fraction otherwise."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    if c.denominator == 1:
        return c.numerator
    return c


def qdiv(a, b):
    """Exact a / b as int when possible, Fraction otherwise."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if not r:
            return q
        return Fraction(a, b)
    out = Fraction(a) / Fraction(b)
    return out.numerator if out.denominator == 1 else out


def pack_exponents(exps):
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAXDEG:
            raise OverflowError("exponent %d out of packed range" % e)
        key |= e << (SHIFT * i)
    return key


def unpack_exponents(key, n):
    return tuple((key >> (SHIFT * i)) & MASK for i in range(n))


def key_degree(key):
    deg = 0
    while key:
        deg += key & MASK
        key >>= SHIFT
    return deg


class Poly:
    """Polynomial in n ordered variables; terms maps packed exponents to
    nonzero coefficients.  `bound` conservatively dominates every single
    variable's exponent, guarding the packed representation."""

    __slots__ = ("n", "terms", "bound")

    def __init__(self, n, terms=None, bound=None):
        self.n = n
        self.terms = terms if terms is not None else {}
        if bound is None:
            bound = 0
            for k in self.terms:
                for e in unpack_exponents(k, n):
                    if e > bound:
                        bound = e
        self.bound = bound

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n, {}, 0)

    @classmethod
    def const(cls, n, c):
        c = _num(c)
        return cls(n, {0: c} if c else {}, 0)

    @classmethod
    def variable(cls, n, i, exp=1):
        if exp > MAXDEG:
            raise OverflowError("exponent %d out of packed range" % exp)
        return cls(n, {exp << (SHIFT * i): 1}, exp)

    @classmethod
    def from_exponents(cls, n, tuple_terms):
        terms = {}
        for exps, c in tuple_terms.items():
            c = _num(c)
            if c:
                terms[pack_exponents(exps)] = c
        return cls(n, terms)

    @classmethod
    def linear(cls, n, ca, a, cb=None, b=None):
        """ca*x_a (+ cb*x_b); with b == a the coefficients fold together."""
        terms = {}
        ka = 1 << (SHIFT * a)
        terms[ka] = _num(ca)
        if b is not None:
            kb = 1 << (SHIFT * b)
            c = terms.get(kb, 0) + _num(cb)
            if c:
                terms[kb] = c
            else:
                del terms[kb]
        return cls(n, terms, 1)

    def copy(self):
        return Poly(self.n, dict(self.terms), self.bound)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.n, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Poly(self.n, out, max(self.bound, other.bound))

    def __neg__(self):
        return Poly(self.n, {k: -c for k, c in self.terms.items()}, self.bound)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.n, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if self.bound + other.bound > MAXDEG:
            raise OverflowError("packed exponent range exceeded in product")
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out = {}
        for k2, c2 in small.items():
            for k1, c1 in big.items():
                k = k1 + k2
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Poly(self.n, out, self.bound + other.bound)

    __rmul__ = __mul__

    def scale(self, c):
        c = _num(c)
        if not c:
            return Poly(self.n, {}, 0)
        if c == 1:
            return self
        return Poly(self.n, {k: v * c for k, v in self.terms.items()}, self.bound)

    def mul_linear(self, ca, a, cb=None, b=None):
        """Multiply by ca*x_a (+ cb*x_b) without building the factor."""
        if self.bound + 1 > MAXDEG:
            raise OverflowError("packed exponent range exceeded in product")
        out = {}
        ca = _num(ca)
        ka = 1 << (SHIFT * a)
        for k, c in self.terms.items():
            kk = k + ka
            v = out.get(kk, 0) + c * ca
            if v:
                out[kk] = v
            else:
                del out[kk]
        if b is not None:
            cb = _num(cb)
            kb = 1 << (SHIFT * b)
            for k, c in self.terms.items():
                kk = k + kb
                v = out.get(kk, 0) + c * cb
                if v:
                    out[kk] = v
                else:
                    del out[kk]
        return Poly(self.n, out, self.bound + 1)

    def pow(self, e):
        if e < 0:
            raise ValueError("negative power")
        out = Poly.const(self.n, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # -- division -----------------------------------------------------------

    def divexact_mono(self, a, exp=1):
        """Exact division by x_a**exp."""
        sh = SHIFT * a
        ka = exp << sh
        out = {}
        for k, c in self.terms.items():
            if (k >> sh) & MASK < exp:
                raise InexactDivisionError("monomial division left remainder")
            out[k - ka] = c
        return Poly(self.n, out, self.bound)

    def divexact_linear(self, ca, a, cb=None, b=None):
        """Exact division by ca*x_a (+ cb*x_b); raises on remainder."""
        if b is None or b == a:
            if b == a:
                ca = _num(ca) + _num(cb)
                if not ca:
                    raise ZeroDivisionError("zero divisor")
            out = self.divexact_mono(a)
            return out.scale(Fraction(1, 1) / Fraction(ca))
        ca, cb = _num(ca), _num(cb)
        sha, shb = SHIFT * a, SHIFT * b
        ka, kb = 1 << sha, 1 << shb
        rem = dict(self.terms)
        quo = {}
        while rem:
            m = max((k >> sha) & MASK for k in rem)
            if m == 0:
                raise InexactDivisionError("linear division left remainder")
            lead = [(k, c) for k, c in rem.items() if (k >> sha) & MASK == m]
            for k, c in lead:
                qk = k - ka
                qc = c if ca == 1 else (-c if ca == -1 else Fraction(c, ca) if isinstance(c, int) else c / ca)
                qc = _num(qc)
                v = quo.get(qk, 0) + qc
                if v:
                    quo[qk] = v
                else:
                    del quo[qk]
                del rem[k]
                kk = qk + kb
                v = rem.get(kk, 0) - qc * cb
                if v:
                    rem[kk] = v
                else:
                    rem.pop(kk, None)
        return Poly(self.n, quo, self.bound)

    # -- structure ----------------------------------------------------------

    def degree(self):
        """Total degree (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(key_degree(k) for k in self.terms)

    def is_homogeneous(self):
        degs = {key_degree(k) for k in self.terms}
        return len(degs) <= 1

    def homogeneous_components(self):
        comps = {}
        for k, c in self.terms.items():
            comps.setdefault(key_degree(k), {})[k] = c
        return {d: Poly(self.n, t, self.bound) for d, t in sorted(comps.items())}

    def coefficient(self, exps):
        return self.terms.get(pack_exponents(exps), 0)

    def constant(self):
        return self.terms.get(0, 0)

    # -- variable maps ------------------------------------------------------

    def map_variables(self, n_new, mapping):
        """Image under x_i -> c_i * y_{j_i} (or 0 when mapping[i] is None).

        mapping is a sequence with entries (c, j) or None, one per variable.
        """
        out = {}
        shifts = [SHIFT * m[1] if m is not None else 0 for m in mapping]
        for k, c in self.terms.items():
            coeff = c
            key = 0
            dead = False
            kk = k
            i = 0
            while kk:
                e = kk & MASK
                if e:
                    m = mapping[i]
                    if m is None:
                        dead = True
                        break
                    ci = m[0]
                    if ci == -1:
                        if e & 1:
                            coeff = -coeff
                    elif ci != 1:
                        coeff = coeff * _num(ci) ** e
                    key += e << shifts[i]
                kk >>= SHIFT
                i += 1
            if dead:
                continue
            v = out.get(key, 0) + coeff
            if v:
                out[key] = v
            else:
                del out[key]
        return Poly(n_new, out, self.bound)

    def swap_variables(self, i, j):
        shi, shj = SHIFT * i, SHIFT * j
        out = {}
        for k, c in self.terms.items():
            ei = (k >> shi) & MASK
            ej = (k >> shj) & MASK
            kk = k + ((ej - ei) << shi) + ((ei - ej) << shj)
            out[kk] = c
        return Poly(self.n, out, self.bound)

    def flip_variable_sign(self, i):
        sh = SHIFT * i
        out = {}
        for k, c in self.terms.items():
            out[k] = -c if (k >> sh) & 1 else c
        return Poly(self.n, out, self.bound)

    def even_in(self, i):
        sh = SHIFT * i
        return all((k >> sh) & 1 == 0 for k in self.terms)

    def double_exponents(self):
        """z -> z^2 on every variable (BCD squared basis)."""
        if 2 * self.bound > MAXDEG:
            raise OverflowError("packed exponent range exceeded")
        return Poly(self.n, {2 * k: c for k, c in self.terms.items()}, 2 * self.bound)

    def sorted_terms(self):
        """Deterministic term order: graded lexicographic on exponent tuples."""
        decorated = [
            (key_degree(k), unpack_exponents(k, self.n), c) for k, c in self.terms.items()
        ]
        decorated.sort(key=lambda t: (t[0], t[1]))
        return [(exps, c) for _, exps, c in decorated]

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                "x%d^%d" % (i, e) if e > 1 else "x%d" % i for i, e in enumerate(exps) if e
            )
            bits.append("%s*%s" % (c, mono) if mono else str(c))
        return "Poly(" + " + ".join(bits) + ")"


# -- linear factor bookkeeping -----------------------------------------------
#
# Factors are canonical tuples:
#   ("m", a)        x_a
#   ("p", a, b)     x_a + x_b   (a < b)
#   ("d", a, b)     x_a - x_b   (a < b)
# normalize_factor turns a raw c_a x_a + c_b x_b into (scalar, factor).


def normalize_factor(ca, a, cb=None, b=None):
    if b is None:
        return _num(ca), ("m", a)
    if a == b:
        return _num(ca) + _num(cb), ("m", a)
    if b < a:
        a, b, ca, cb = b, a, cb, ca
    ca, cb = _num(ca), _num(cb)
    sign = 1
    if ca < 0:
        ca, cb, sign = -ca, -cb, -1
    if ca != 1:
        sign *= ca
        cb = _num(Fraction(cb, ca))
        ca = 1
    if cb == 1:
        return sign, ("p", a, b)
    if cb == -1:
        return sign, ("d", a, b)
    raise ValueError("factor is not +-(x_a +- x_b)")


def factor_poly(n, f):
    if f[0] == "m":
        return Poly.variable(n, f[1])
    if f[0] == "p":
        return Poly.linear(n, 1, f[1], 1, f[2])
    return Poly.linear(n, 1, f[1], -1, f[2])


def mul_factor(p, f):
    if f[0] == "m":
        return p.mul_linear(1, f[1])
    if f[0] == "p":
        return p.mul_linear(1, f[1], 1, f[2])
    return p.mul_linear(1, f[1], -1, f[2])


def divexact_factor(p, f):
    if f[0] == "m":
        return p.divexact_mono(f[1])
    if f[0] == "p":
        return p.divexact_linear(1, f[1], 1, f[2])
    return p.divexact_linear(1, f[1], -1, f[2])


def multiset_union(counters):
    out = {}
    for c in counters:
        for f, m in c.items():
            if out.get(f, 0) < m:
                out[f] = m
    return out


def sum_linear_fractions(n, parts):
    """Sum of scalar * numerator / prod(denominator factors), reduced exactly.

    parts: iterable of (scalar, numerator Poly, denom {factor: mult}).  The
    common denominator is the factor-multiset union; the final result must be
    a polynomial (exact division is asserted, not assumed).
    """
    parts = list(parts)
    common = multiset_union([d for _, _, d in parts])
    total = Poly.zero(n)
    for scalar, num, denom in parts:
        t = num.scale(scalar) if scalar != 1 else num
        for f in sorted(common):
            extra = common[f] - denom.get(f, 0)
            for _ in range(extra):
                t = mul_factor(t, f)
        total = total + t
    for f in sorted(common):
        for _ in range(common[f]):
            total = divexact_factor(total, f)
    return total
