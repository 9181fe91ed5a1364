"""Buchberger Groebner bases for ideals and for submodules of free modules,
plus the ideal-theoretic operations the support theory consumes: colon
ideals, intersections, annihilators of cokernels, radical membership via the
Rabinowitsch trick, and minimal primes of monomial ideals.

Elements of a free module R^r are ``Vec`` values: mappings from (component,
exponent) pairs to nonzero scalars.  Ideals are the rank-1 case.  The module
order is position-over-term: lower components dominate, ties broken by the
ambient polynomial order.  Auxiliary variables (for elimination and the
Rabinowitsch trick) are appended after all ring variables and never leak
into results.
"""
from __future__ import annotations

import heapq

from .linalg import Field
from .poly import (
    GREVLEX,
    MixedRings,
    MonomialOrder,
    Poly,
    Ring,
    elimination_order,
    exp_div,
    exp_lcm,
    exp_mul,
)


class ZeroDivisorArgument(ValueError):
    pass


class NotMonomial(ValueError):
    pass


class Vec:
    """Element of a free module R^rank; terms map (comp, exp) -> scalar."""

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring: Ring, rank: int, terms: dict):
        self.ring = ring
        self.rank = rank
        self.terms = dict(terms)

    @classmethod
    def from_poly(cls, p: Poly, rank: int = 1, comp: int = 0) -> "Vec":
        return cls(p.ring, rank, {(comp, e): c for e, c in p.terms.items()})

    @classmethod
    def from_polys(cls, polys) -> "Vec":
        """Column vector of polynomials -> module element."""
        ring = polys[0].ring
        terms = {}
        for i, p in enumerate(polys):
            for e, c in p.terms.items():
                terms[(i, e)] = c
        return cls(ring, len(polys), terms)

    def component(self, i: int) -> Poly:
        return Poly(self.ring, {e: c for (comp, e), c in self.terms.items() if comp == i})

    def to_polys(self):
        return [self.component(i) for i in range(self.rank)]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, Vec)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.rank, frozenset(self.terms.items())))

    def add(self, other: "Vec") -> "Vec":
        f = self.ring.field
        terms = dict(self.terms)
        for t, c in other.terms.items():
            s = f.add(terms.get(t, f.zero), c)
            if s:
                terms[t] = s
            else:
                terms.pop(t, None)
        return Vec(self.ring, self.rank, terms)

    def neg(self) -> "Vec":
        f = self.ring.field
        return Vec(self.ring, self.rank, {t: f.neg(c) for t, c in self.terms.items()})

    def sub(self, other: "Vec") -> "Vec":
        return self.add(other.neg())

    def mul_term(self, exp, coeff) -> "Vec":
        """Multiply by the scalar monomial coeff * x^exp."""
        f = self.ring.field
        if not coeff:
            return Vec(self.ring, self.rank, {})
        return Vec(
            self.ring,
            self.rank,
            {(comp, exp_mul(e, exp)): f.mul(coeff, c) for (comp, e), c in self.terms.items()},
        )

    def mul_poly(self, p: Poly) -> "Vec":
        out = Vec(self.ring, self.rank, {})
        for e, c in p.terms.items():
            out = out.add(self.mul_term(e, c))
        return out

    def scale(self, coeff) -> "Vec":
        f = self.ring.field
        if not coeff:
            return Vec(self.ring, self.rank, {})
        return Vec(self.ring, self.rank, {t: f.mul(coeff, c) for t, c in self.terms.items()})

    def degree_wrt(self, shifts):
        """Weighted degree when homogeneous for the given shifts, else None."""
        degs = {self.ring.degree(e) + shifts[comp] for (comp, e) in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None if degs else 0

    def __repr__(self):
        return f"Vec({self.to_polys()!r})"


def _mod_key(order: MonomialOrder):
    def key(term):
        comp, exp = term
        return (-comp, order.key(exp))

    return key


def leading(v: Vec, order: MonomialOrder):
    """((comp, exp), coeff) of the leading term under position-over-term."""
    if not v.terms:
        return None
    t = max(v.terms, key=_mod_key(order))
    return t, v.terms[t]


def _term_divides(t_small, t_big):
    """Does (comp, exp) t_small divide t_big (same component)?"""
    if t_small[0] != t_big[0]:
        return None
    return exp_div(t_big[1], t_small[1])


def normal_form_vec(v: Vec, basis, order: MonomialOrder) -> Vec:
    """Full (tail-reducing) remainder of v against basis.  Idempotent."""
    f = v.ring.field
    key = _mod_key(order)
    lts = [(leading(g, order), g) for g in basis if not g.is_zero()]
    result_terms: dict = {}
    work = dict(v.terms)
    while work:
        t = max(work, key=key)
        c = work.pop(t)
        reduced = False
        for (lt, lc), g in lts:
            q = _term_divides(lt, t)
            if q is not None:
                factor = f.div(c, lc)
                sub = g.mul_term(q, factor)
                for st, sc in sub.terms.items():
                    if st == t:
                        continue
                    cur = work.get(st, result_terms.pop(st, f.zero))
                    s = f.sub(cur, sc)
                    if s:
                        work[st] = s
                    else:
                        work.pop(st, None)
                reduced = True
                break
        if not reduced:
            result_terms[t] = c
    return Vec(v.ring, v.rank, result_terms)


def _spair(g1: Vec, g2: Vec, order: MonomialOrder):
    """S-vector of two monic elements with leading terms in one component."""
    (c1, e1), _ = leading(g1, order)
    (c2, e2), _ = leading(g2, order)
    assert c1 == c2
    lcm = exp_lcm(e1, e2)
    f = g1.ring.field
    a = g1.mul_term(exp_div(lcm, e1), f.one)
    b = g2.mul_term(exp_div(lcm, e2), f.one)
    return a.sub(b)


def buchberger_vec(gens, order: MonomialOrder = GREVLEX):
    """Reduced Groebner basis of the submodule generated by gens.

    Deterministic for a fixed generator multiset and order; the result is
    sorted by decreasing leading term, each element monic and tail-reduced.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    rank = gens[0].rank
    for g in gens:
        if g.ring != ring or g.rank != rank:
            raise MixedRings("generators over mixed rings or ranks")
    f = ring.field

    # Start from an interreduced, monic, canonically sorted generating set so
    # the run is independent of input order.
    basis = []
    for g in sorted(
        (normal_form_vec(g, [], order).scale(f.inv(leading(g, order)[1])) for g in gens),
        key=lambda g: _mod_key(order)(leading(g, order)[0]),
    ):
        basis.append(g)

    pairs = []
    counter = 0

    def push_pairs(new_idx):
        nonlocal counter
        (cn, en), _ = leading(basis[new_idx], order)
        for i in range(new_idx):
            (ci, ei), _ = leading(basis[i], order)
            if ci != cn:
                continue
            lcm = exp_lcm(ei, en)
            # product criterion (valid for rank-1 / ideal data)
            if rank == 1 and lcm == exp_mul(ei, en):
                continue
            counter += 1
            heapq.heappush(pairs, (ring.degree(lcm), order.key(lcm), i, new_idx, counter))

    for i in range(len(basis)):
        push_pairs(i)

    while pairs:
        _, _, i, j, _ = heapq.heappop(pairs)
        s = _spair(basis[i], basis[j], order)
        r = normal_form_vec(s, basis, order)
        if not r.is_zero():
            r = r.scale(f.inv(leading(r, order)[1]))
            basis.append(r)
            push_pairs(len(basis) - 1)

    return _reduce_basis(basis, order)


def _reduce_basis(basis, order: MonomialOrder):
    f = basis[0].ring.field
    # minimalize: drop elements whose leading term another leading term divides
    lts = [leading(g, order)[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        lt = lts[i]
        redundant = False
        for j in range(len(basis)):
            if j == i:
                continue
            if _term_divides(lts[j], lt) is not None:
                # break ties deterministically: keep the earlier equal leading term
                if lts[j] == lt and j > i:
                    continue
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # tail-reduce against each other
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form_vec(g, others, order)
        if not r.is_zero():
            r = r.scale(f.inv(leading(r, order)[1]))
            reduced.append(r)
    reduced.sort(key=lambda g: _mod_key(order)(leading(g, order)[0]), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# Polynomial-level API
# ---------------------------------------------------------------------------

def buchberger(gens, order: MonomialOrder = GREVLEX):
    """Reduced Groebner basis of an ideal given by polynomials."""
    vecs = [Vec.from_poly(g) for g in gens if not g.is_zero()]
    gb = buchberger_vec(vecs, order) if vecs else []
    return [v.component(0) for v in gb]


def normal_form(p: Poly, basis, order: MonomialOrder = GREVLEX) -> Poly:
    v = normal_form_vec(Vec.from_poly(p), [Vec.from_poly(g) for g in basis if not g.is_zero()], order)
    return v.component(0)


class GroebnerBasis:
    __slots__ = ("elements", "order")

    def __init__(self, elements, order: MonomialOrder):
        self.elements = list(elements)
        self.order = order

    def reduce(self, p: Poly) -> Poly:
        return normal_form(p, self.elements, self.order)

    def contains(self, p: Poly) -> bool:
        return self.reduce(p).is_zero()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


class Ideal:
    """An ideal with cached reduced Groebner bases (one per order)."""

    __slots__ = ("ring", "generators", "_gb_cache")

    def __init__(self, ring: Ring, generators):
        self.ring = ring
        self.generators = [g for g in generators if not g.is_zero()]
        for g in self.generators:
            if g.ring != ring:
                raise MixedRings("generator over a different ring")
        self._gb_cache: dict = {}

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        if order not in self._gb_cache:
            self._gb_cache[order] = GroebnerBasis(buchberger(self.generators, order), order)
        return self._gb_cache[order]

    def contains(self, p: Poly) -> bool:
        return self.groebner().contains(p)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = self.groebner().elements
        return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.groebner().elements)

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"


# ---------------------------------------------------------------------------
# Syzygies
# ---------------------------------------------------------------------------

def syzygy_basis(gens, order: MonomialOrder = GREVLEX):
    """Generators of {(a_1..a_m) : sum a_i gens_i = 0} for gens in R^r.

    Works by computing a Groebner basis of the graphs (g_i, e_i) in
    R^r (+) R^m under position-over-term (which eliminates the first block)
    and keeping the tags of elements whose R^r part vanished.
    """
    gens = list(gens)
    if not gens:
        return []
    ring = gens[0].ring
    r = gens[0].rank
    m = len(gens)
    tagged = []
    for i, g in enumerate(gens):
        terms = dict(g.terms)
        terms[(r + i, (0,) * ring.nvars)] = ring.field.one
        tagged.append(Vec(ring, r + m, terms))
    gb = buchberger_vec(tagged, order)
    syz = []
    for v in gb:
        if all(comp >= r for (comp, _e) in v.terms):
            syz.append(Vec(ring, m, {(comp - r, e): c for (comp, e), c in v.terms.items()}))
    return syz


def kernel_of_matrix(matrix, order: MonomialOrder = GREVLEX):
    """Kernel generators of the map R^cols -> R^rows given by a Poly matrix.

    The matrix is a list of rows; returns column vectors in R^cols.
    """
    if not matrix or not matrix[0]:
        return []
    rows = len(matrix)
    cols = len(matrix[0])
    col_vecs = [Vec.from_polys([matrix[i][j] for i in range(rows)]) for j in range(cols)]
    return syzygy_basis(col_vecs, order)


# ---------------------------------------------------------------------------
# Ideal-theoretic operations
# ---------------------------------------------------------------------------

def ideal_quotient(I: Ideal, f: Poly) -> Ideal:
    """(I : f) = {g : g*f in I}, via syzygies of (f, generators of I)."""
    if f.is_zero():
        raise ZeroDivisorArgument("colon by zero")
    ring = I.ring
    if not I.generators:
        return Ideal(ring, [])
    gens = [Vec.from_poly(f)] + [Vec.from_poly(g) for g in I.generators]
    syz = syzygy_basis(gens)
    quotient_gens = [v.component(0) for v in syz]
    quotient_gens = [g for g in quotient_gens if not g.is_zero()]
    return Ideal(ring, buchberger(quotient_gens))


def saturate(I: Ideal, f: Poly) -> Ideal:
    """(I : f^infinity), by iterating colon ideals to stabilization."""
    cur = I
    while True:
        nxt = ideal_quotient(cur, f)
        if cur.contains_ideal(nxt):
            return cur
        cur = nxt


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, I.generators + J.generators)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, [g * h for g in I.generators for h in J.generators])


_AUX = "@t"


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I /\\ J by eliminating t from t*I + (1-t)*J."""
    ring = I.ring
    if ring != J.ring:
        raise MixedRings("intersection of ideals over different rings")
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    ext = ring.extend((_AUX,))
    var_map = list(range(ring.nvars))
    t = ext.var(ext.nvars - 1)
    gens = [g.map_ring(ext, var_map) * t for g in I.generators]
    one_minus_t = ext.one() - t
    gens += [g.map_ring(ext, var_map) * one_minus_t for g in J.generators]
    gb = buchberger(gens, elimination_order(1))
    kept = []
    for g in gb:
        if all(e[-1] == 0 for e in g.terms):
            kept.append(Poly(ring, {e[:-1]: c for e, c in g.terms.items()}))
    return Ideal(ring, kept)


def module_annihilator(columns, ring: Ring = None, rank: int = None) -> Ideal:
    """Annihilator of coker(R^m -> R^r) presented by the given column vectors.

    ann M = /\\_i (column-span : e_i); each colon is read off from syzygies
    of (e_i, col_1, ..., col_m).  For an empty presentation pass the ring and
    rank explicitly (the module is then free, annihilator (0) unless rank 0).
    """
    if not columns:
        if ring is None or rank is None:
            raise ValueError("empty presentation needs an explicit ring and rank")
        return Ideal(ring, [ring.one()]) if rank == 0 else Ideal(ring, [])
    ring = columns[0].ring
    r = columns[0].rank if rank is None else rank
    if r == 0:
        return Ideal(ring, [ring.one()])
    result = None
    for i in range(r):
        e_i = Vec(ring, r, {(i, (0,) * ring.nvars): ring.field.one})
        syz = syzygy_basis([e_i] + list(columns))
        colon_gens = [v.component(0) for v in syz]
        colon_gens = [g for g in colon_gens if not g.is_zero()]
        colon = Ideal(ring, buchberger(colon_gens))
        result = colon if result is None else ideal_intersection(result, colon)
        if result.is_zero():
            return result
    return result


def radical_membership(f: Poly, I: Ideal) -> bool:
    """f in sqrt(I), decided by 1 in I + (1 - t*f) (Rabinowitsch trick)."""
    if f.is_zero():
        # 0 is in every radical
        return True
    ring = I.ring
    ext = ring.extend((_AUX,))
    var_map = list(range(ring.nvars))
    t = ext.var(ext.nvars - 1)
    gens = [g.map_ring(ext, var_map) for g in I.generators]
    gens.append(ext.one() - t * f.map_ring(ext, var_map))
    gb = buchberger(gens)
    return normal_form(ext.one(), gb).is_zero()


def radical_contains_ideal(I: Ideal, J: Ideal) -> bool:
    """Every generator of J lies in sqrt(I)."""
    return all(radical_membership(g, I) for g in J.generators)


def monomial_minimal_primes(I: Ideal):
    """Minimal primes of a monomial ideal, as sorted tuples of variable
    indices; the zero ideal yields the single prime () (i.e. (0))."""
    gens = [g for g in I.generators if not g.is_zero()]
    if not gens:
        return [()]
    supports = []
    for g in gens:
        if not g.is_monomial():
            raise NotMonomial(f"non-monomial generator {g}")
        sup = frozenset(g.support_vars())
        if not sup:
            # unit generator: the ideal is the whole ring, no primes contain it
            return []
        supports.append(sup)
    # dedupe / drop supersets (they are hit whenever a subset is hit)
    supports = sorted(set(supports), key=lambda s: (len(s), sorted(s)))
    minimal_supports = []
    for s in supports:
        if not any(t <= s for t in minimal_supports):
            minimal_supports.append(s)
    universe = sorted(set().union(*minimal_supports))
    hitting = []
    from itertools import combinations

    for size in range(0, len(universe) + 1):
        for combo in combinations(universe, size):
            cs = set(combo)
            if any(set(h) <= cs for h in hitting):
                continue
            if all(cs & s for s in minimal_supports):
                hitting.append(tuple(sorted(combo)))
    hitting.sort(key=lambda h: (len(h), h))
    return hitting


def variable_prime(ring: Ring, var_indices) -> Ideal:
    """The monomial prime generated by the given variables ((0) when empty)."""
    return Ideal(ring, [ring.var(i) for i in sorted(var_indices)])


def poly_in_monomial_prime(p: Poly, var_indices) -> bool:
    """Membership in (x_i : i in var_indices): every term uses some listed var."""
    vars_ = set(var_indices)
    if p.is_zero():
        return True
    for e in p.terms:
        if not any(e[i] for i in vars_):
            return False
    return True


def monomial_primes_of(ring: Ring, include_zero: bool = True):
    """All monomial primes (subsets of variables), optionally with (0) first."""
    from itertools import combinations

    out = [()] if include_zero else []
    for size in range(1, ring.nvars + 1):
        out.extend(combinations(range(ring.nvars), size))
    return out
