"""Support varieties and their algebra: V(ann) supports of presentations,
rank varieties of modules over group algebras of elementary abelian
p-groups, Koszul-detection and Benson-style membership tests, connectivity
of punctured supports, and the support partition attached to a direct-sum
decomposition.
"""
from __future__ import annotations

from itertools import combinations

from .complexes import ChainComplex, cohomology_annihilator, koszul_tower
from .fdalgebra import FDModule, decompose_indecomposables
from .groebner import (
    Ideal,
    ideal_intersection,
    module_annihilator,
    monomial_minimal_primes,
    poly_in_monomial_prime,
    radical_contains_ideal,
    radical_membership,
    variable_prime,
)
from .poly import Poly, Ring


class VariableMismatch(ValueError):
    pass


class NotRadicalGenerators(ValueError):
    pass


class PrimeSpec:
    """A homogeneous prime given by generators; primality is guaranteed for
    zero/monomial provenance and trusted for user_asserted."""

    __slots__ = ("ring", "ideal", "provenance", "var_indices")

    def __init__(self, ring, ideal, provenance, var_indices=None):
        self.ring = ring
        self.ideal = ideal
        self.provenance = provenance
        self.var_indices = tuple(var_indices) if var_indices is not None else None

    @classmethod
    def zero(cls, ring: Ring) -> "PrimeSpec":
        return cls(ring, Ideal(ring, []), "zero", ())

    @classmethod
    def monomial(cls, ring: Ring, var_indices) -> "PrimeSpec":
        idx = tuple(sorted(var_indices))
        if not idx:
            return cls.zero(ring)
        return cls(ring, variable_prime(ring, idx), "monomial", idx)

    @classmethod
    def user_asserted(cls, ideal: Ideal) -> "PrimeSpec":
        return cls(ideal.ring, ideal, "user_asserted", None)

    def is_zero_prime(self) -> bool:
        return not self.ideal.generators

    def is_irrelevant(self) -> bool:
        return self.var_indices is not None and len(self.var_indices) == self.ring.nvars

    def contains_poly(self, p: Poly) -> bool:
        if self.var_indices is not None:
            return poly_in_monomial_prime(p, self.var_indices)
        if self.is_zero_prime():
            return p.is_zero()
        return self.ideal.contains(p)

    def contains_ideal(self, I: Ideal) -> bool:
        return all(self.contains_poly(g) for g in I.generators)

    def __eq__(self, other):
        return (
            isinstance(other, PrimeSpec)
            and self.ring == other.ring
            and self.var_indices == other.var_indices
            and self.ideal.groebner().elements == other.ideal.groebner().elements
        )

    def __repr__(self):
        if self.var_indices is not None:
            if not self.var_indices:
                return "(0)"
            return "(" + ", ".join(self.ring.names[i] for i in self.var_indices) + ")"
        return f"({', '.join(map(str, self.ideal.generators))})"


class ClosedSet:
    """V(defining_ideal); equality up to radical."""

    __slots__ = ("ring", "defining_ideal")

    def __init__(self, defining_ideal: Ideal):
        self.ring = defining_ideal.ring
        self.defining_ideal = defining_ideal

    def equals(self, other: "ClosedSet") -> bool:
        return radical_contains_ideal(
            self.defining_ideal, other.defining_ideal
        ) and radical_contains_ideal(other.defining_ideal, self.defining_ideal)

    def contains_prime(self, p: PrimeSpec) -> bool:
        """p in V(I), i.e. I subset of p."""
        return p.contains_ideal(self.defining_ideal)

    def is_everything(self) -> bool:
        return all(g.is_zero() for g in self.defining_ideal.generators)

    def is_empty(self) -> bool:
        return self.defining_ideal.is_unit()

    def __repr__(self):
        return f"V({', '.join(map(str, self.defining_ideal.generators)) or '0'})"


class SupportReport:
    __slots__ = ("closed_set", "components", "punctured", "connectivity_partition")

    def __init__(self, closed_set, components, punctured, connectivity_partition):
        self.closed_set = closed_set
        self.components = components
        self.punctured = punctured
        self.connectivity_partition = connectivity_partition


class RankIdeal:
    __slots__ = ("ideal", "module_dim", "free_rank_target")

    def __init__(self, ideal, module_dim, free_rank_target):
        self.ideal = ideal
        self.module_dim = module_dim
        self.free_rank_target = free_rank_target


def support_of_module(columns, ring: Ring = None, rank: int = None, punctured: bool = False) -> SupportReport:
    """supp M = V(ann M) for the module presented by the columns."""
    ann = module_annihilator(columns, ring=ring, rank=rank)
    ring = ann.ring
    closed = ClosedSet(ann)
    components = []
    if ann.is_monomial():
        for idx in monomial_minimal_primes(ann):
            p = PrimeSpec.monomial(ring, idx)
            if punctured and p.is_irrelevant():
                continue
            components.append(p)
    partition = connected_components(components, puncture=punctured) if components else []
    return SupportReport(closed, components, punctured, partition)


# ---------------------------------------------------------------------------
# Rank varieties
# ---------------------------------------------------------------------------

def rank_coordinate_ring(algebra) -> Ring:
    names = [f"a{i + 1}" for i in range(algebra.c)]
    return Ring(algebra.field, names)


def _poly_det(ring: Ring, mat, rows, cols):
    """Determinant of the square submatrix mat[rows][cols] by cofactors."""
    if not rows:
        return ring.one()
    if len(rows) == 1:
        return mat[rows[0]][cols[0]]
    total = ring.zero()
    r = rows[0]
    rest = rows[1:]
    sign = 1
    for pos, c in enumerate(cols):
        entry = mat[r][c]
        if not entry.is_zero():
            sub = _poly_det(ring, mat, rest, cols[:pos] + cols[pos + 1 :])
            term = entry * sub
            total = total + (term if sign > 0 else -term)
        sign = -sign
    return total


def rank_variety_ideal(M: FDModule) -> RankIdeal:
    """Ideal of (dim/p)-minors of (sum_i a_i X_i)^{p-1} over k[a_1..a_c];
    the zero ideal when p does not divide dim (never free)."""
    A = M.algebra
    if not A.group_mode:
        from .fdalgebra import NotAGroupAlgebra

        raise NotAGroupAlgebra("rank varieties need a group algebra")
    p = A.field.char
    ring = rank_coordinate_ring(A)
    if M.dim % p != 0:
        return RankIdeal(Ideal(ring, []), M.dim, None)
    target = M.dim // p
    # symbolic matrix N = sum a_i X_i, then N^{p-1}
    N = [[ring.zero()] * M.dim for _ in range(M.dim)]
    for i in range(A.c):
        a = ring.var(i)
        for r in range(M.dim):
            for s in range(M.dim):
                v = M.actions[i][r][s]
                if v:
                    N[r][s] = N[r][s] + a * ring.const(v)
    power = N
    for _ in range(p - 2):
        power = _poly_mat_mul(ring, power, N)
    gens = []
    idx = list(range(M.dim))
    for rows in combinations(idx, target):
        for cols in combinations(idx, target):
            d = _poly_det(ring, power, list(rows), list(cols))
            if not d.is_zero():
                gens.append(d)
    return RankIdeal(Ideal(ring, gens), M.dim, target)


def _poly_mat_mul(ring, a, b):
    out = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            s = ring.zero()
            for t in range(len(b)):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def rank_variety_contains_point(M: FDModule, alpha) -> bool:
    """Brute-force check: is the point alpha in the rank variety (module not
    free over the shifted subgroup at alpha)?  alpha = scalars, not all 0."""
    A = M.algebra
    F = A.field
    p = F.char
    from . import linalg

    N = [[F.zero] * M.dim for _ in range(M.dim)]
    for i, a in enumerate(alpha):
        a = F.of(a)
        if a:
            N = linalg.mat_add(F, N, linalg.mat_scale(F, a, M.actions[i]))
    power = linalg.identity(M.dim, F)
    for _ in range(p - 1):
        power = linalg.mat_mul(F, power, N)
    return linalg.rank(F, power) < M.dim // p if M.dim % p == 0 else True


def variety_equal_up_to_radical(I: Ideal, J: Ideal) -> bool:
    """Equality of V(I) and V(J) after identifying variables by index."""
    if I.ring != J.ring:
        if I.ring.nvars != J.ring.nvars or I.ring.field != J.ring.field:
            raise VariableMismatch(f"{I.ring} vs {J.ring}")
        ident = list(range(I.ring.nvars))
        J = Ideal(I.ring, [g.map_ring(I.ring, ident) for g in J.generators])
    return radical_contains_ideal(I, J) and radical_contains_ideal(J, I)


# ---------------------------------------------------------------------------
# Membership tests
# ---------------------------------------------------------------------------

def koszul_detection_membership(X: ChainComplex, p: PrimeSpec) -> bool:
    """p in supp X, decided by whether ann H*(X//p) is contained in p
    (the Koszul object on canonical generators of p)."""
    if X.is_zero():
        return False
    if p.var_indices is None:
        raise NotRadicalGenerators("detection needs a zero or monomial prime")
    gens = [X.ring.var(i) for i in p.var_indices]
    tower = koszul_tower(X, gens)
    ann = cohomology_annihilator(tower[-1])
    if p.is_zero_prime():
        return ann.is_zero()
    return all(poly_in_monomial_prime(g, p.var_indices) for g in ann.generators)


def default_zetas_for_prime(algebra, p: PrimeSpec):
    """Degree-1 classes whose radical is the monomial prime p: the dual
    basis vectors at the listed chi indices."""
    out = []
    for i in p.var_indices:
        v = [0] * algebra.c
        v[i] = 1
        out.append((1, v))
    return out


def benson_support_membership(
    M: FDModule, p: PrimeSpec, zetas=None, bound: int = 12, deg_cap: int = None
) -> bool:
    """p in supp M over k[chi], via T = tensor of the Carlson modules of the
    zetas and the containment ann Ext*(T, M) subset of p."""
    from .cohops import ann_to_bound, ext_module
    from .fdalgebra import carlson_module, tensor_module

    A = M.algebra
    if p.is_irrelevant():
        raise ValueError("the irrelevant maximal ideal is never in stable support")
    if zetas is None:
        if p.var_indices is None:
            raise NotRadicalGenerators("non-monomial primes need explicit zetas")
        zetas = default_zetas_for_prime(A, p)
    elif p.var_indices is not None:
        # verify the radical condition in the monomial case: the degree-1
        # monomial classes must hit exactly the variables of p
        hit = set()
        for deg, v in zetas:
            if deg == 1:
                nz = [i for i, a in enumerate(v) if a]
                if len(nz) == 1:
                    hit.add(nz[0])
                    continue
            hit = None
            break
        if hit is not None and hit != set(p.var_indices):
            raise NotRadicalGenerators(f"zetas generate a different radical than {p!r}")
    T = A.trivial_module()
    for deg, v in zetas:
        T = tensor_module(T, carlson_module(A, deg, v))
    if T.is_zero():
        # a Carlson module vanished: the test object is zero, detection fails
        return False
    E = ext_module(T, M, bound)
    if deg_cap is None:
        deg_cap = bound - 4
    ann = ann_to_bound(E, deg_cap)
    if p.is_zero_prime():
        return ann.is_zero()
    return all(poly_in_monomial_prime(g, p.var_indices) for g in ann.generators)


# ---------------------------------------------------------------------------
# Connectivity and support partitions
# ---------------------------------------------------------------------------

def _is_irrelevant_radical(I: Ideal) -> bool:
    ring = I.ring
    return all(radical_membership(ring.var(i), I) for i in range(ring.nvars))


def connected_components(primes, puncture: bool):
    """Partition of the (pairwise incomparable) primes into connected groups;
    edges join primes whose varieties meet away from the irrelevant ideal
    (or anywhere, when puncture is false)."""
    n = len(primes)
    for a, b in combinations(range(n), 2):
        pa, pb = primes[a], primes[b]
        if pa.contains_ideal(pb.ideal) or pb.contains_ideal(pa.ideal):
            raise ValueError(f"primes {pa!r} and {pb!r} are comparable")
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in combinations(range(n), 2):
        total = Ideal(
            primes[a].ring, primes[a].ideal.generators + primes[b].ideal.generators
        )
        meet = not puncture or not _is_irrelevant_radical(total)
        if meet:
            ra, rb = find(a), find(b)
            parent[ra] = rb
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def krs_partition(M: FDModule, seed: int = 0):
    """Indecomposable summands grouped by connectivity of their punctured
    rank varieties; cross-group varieties are asserted disjoint.

    Returns a list of (summands, group_variety_ideal).
    """
    parts = decompose_indecomposables(M, seed=seed)
    ideals = [rank_variety_ideal(p).ideal for p in parts]
    n = len(parts)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # summands with empty punctured variety (projectives) stay isolated
    nonempty = [not _is_irrelevant_radical(ideals[i]) for i in range(n)]
    for a, b in combinations(range(n), 2):
        if not (nonempty[a] and nonempty[b]):
            continue
        total = Ideal(ideals[a].ring, ideals[a].generators + ideals[b].generators)
        if not _is_irrelevant_radical(total):
            parent[find(a)] = find(b)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in sorted(groups.values()):
        summands = [parts[i] for i in members]
        ideal = ideals[members[0]]
        for i in members[1:]:
            ideal = ideal_intersection(ideal, ideals[i])
        out.append((summands, ideal))
    # disjointness across groups (away from the irrelevant ideal)
    for (g1, i1), (g2, i2) in combinations(out, 2):
        if i1.is_unit() or i2.is_unit():
            continue
        total = Ideal(i1.ring, i1.generators + i2.generators)
        if not _is_irrelevant_radical(total):
            raise RuntimeError("support partition groups are not disjoint")
    return out
