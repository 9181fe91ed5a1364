"""Cohomology operators on minimal resolutions over a complete-intersection
quotient algebra A = k[x_1..x_c]/(x_i^{e_i}).

The canonical-representative differentials lift to matrices over k[x]; the
composite d-tilde o d-tilde is divisible by the relations and decomposes as
sum_i x_i^{e_i} T_i.  The resulting degree-2 operators chi_i make
Ext*_A(M, N) a graded module over k[chi_1..chi_c], computed here up to a
degree bound with explicit bases and chi matrices.
"""
from __future__ import annotations

from . import linalg
from .fdalgebra import CIAlgebra, FDModule, MinimalResolution, minimal_resolution
from .groebner import Ideal
from .poly import Poly, Ring


class DecompositionFailure(RuntimeError):
    pass


class BoundTooSmall(ValueError):
    pass


class OperatorFamily:
    """T[n][i]: matrix F_{n+2} -> F_n over k[x] with
    d-tilde_{n+1} d-tilde_{n+2} = sum_i x_i^{e_i} T[n][i], exactly."""

    __slots__ = ("algebra", "resolution", "T")

    def __init__(self, algebra, resolution, T):
        self.algebra = algebra
        self.resolution = resolution
        self.T = T

    def stages(self) -> int:
        return len(self.T)


def _poly_mat_mul(ring: Ring, a, b):
    if not a or not b:
        return []
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


def eisenbud_operators(res: MinimalResolution) -> OperatorFamily:
    """Greedy decomposition of the lifted d o d: each monomial is assigned to
    the smallest variable index whose exponent reaches e_i and divided by
    x_i^{e_i}.  The reassembly identity is asserted exactly."""
    A = res.algebra
    R = A.poly_ring
    exps = A.exponents
    T = []
    for n in range(len(res.diffs) - 1):
        D = _poly_mat_mul(R, res.diffs[n], res.diffs[n + 1])
        rows = len(D)
        cols = len(D[0]) if D else 0
        Tn = [[[R.zero()] * cols for _ in range(rows)] for _ in range(A.c)]
        for r in range(rows):
            for s in range(cols):
                for e, coef in D[r][s].terms.items():
                    i = next(
                        (t for t, (a, bound) in enumerate(zip(e, exps)) if a >= bound),
                        None,
                    )
                    if i is None:
                        raise DecompositionFailure(
                            f"monomial {e} in d^2 not divisible by any relation"
                        )
                    e2 = tuple(a - exps[i] if t == i else a for t, a in enumerate(e))
                    Tn[i][r][s] = Tn[i][r][s] + Poly(R, {e2: coef})
        # reassembly identity, by independent polynomial arithmetic
        rebuilt = [[R.zero()] * cols for _ in range(rows)]
        for i in range(A.c):
            power = R.var(i) ** exps[i]
            for r in range(rows):
                for s in range(cols):
                    rebuilt[r][s] = rebuilt[r][s] + power * Tn[i][r][s]
        if rebuilt != D:
            raise DecompositionFailure("reassembly identity failed")
        T.append(Tn)
    return OperatorFamily(A, res, T)


# ---------------------------------------------------------------------------
# Cochain complexes of finite-dimensional k-spaces
# ---------------------------------------------------------------------------

class _KCochain:
    """Finite list of k-spaces with differentials; cohomology with bases."""

    def __init__(self, field, dims, diffs):
        self.field = field
        self.dims = dims          # dims[n]
        self.diffs = diffs        # diffs[n]: matrix dims[n] -> dims[n+1]
        self._cache = {}

    def cohomology_basis(self, n):
        """(H-basis vectors in coordinates of C^n, boundary basis)."""
        if n in self._cache:
            return self._cache[n]
        F = self.field
        dim = self.dims[n] if 0 <= n < len(self.dims) else 0
        if dim == 0:
            self._cache[n] = ([], [])
            return self._cache[n]
        d = self.diffs[n] if n < len(self.diffs) else None
        if d and d[0]:
            Z = linalg.kernel_basis(F, d)
        else:
            Z = [[F.one if i == j else F.zero for i in range(dim)] for j in range(dim)]
        B = []
        prev = self.diffs[n - 1] if 0 < n <= len(self.diffs) else None
        if prev and prev[0]:
            cols = linalg.transpose(prev)
            _, _, piv = linalg.rref(F, prev)
            B = [cols[j] for j in piv]
        basis = list(B)
        H = []
        for z in Z:
            if linalg.rank(F, linalg.transpose(basis + [z])) > len(basis):
                basis.append(z)
                H.append(z)
        self._cache[n] = (H, B)
        return self._cache[n]

    def dim_cohomology(self, n):
        return len(self.cohomology_basis(n)[0])

    def induced_map(self, raw, n, m):
        """Matrix H^n -> H^m induced by a cochain-level map raw: C^n -> C^m
        (assumed to send cocycles to cocycles)."""
        F = self.field
        Hs, _ = self.cohomology_basis(n)
        Ht, Bt = self.cohomology_basis(m)
        cols = []
        for h in Hs:
            img = linalg.mat_vec(F, raw, h) if raw else []
            if not Ht and not Bt:
                if any(img):
                    raise RuntimeError("cocycle mapped outside zero cohomology")
                cols.append([])
                continue
            sol = linalg.solve(F, linalg.transpose(Ht + Bt), img)
            if sol is None:
                raise RuntimeError("image of cocycle not a cocycle")
            cols.append(sol[: len(Ht)])
        return [[cols[j][i] if cols[j] else F.zero for j in range(len(Hs))] for i in range(len(Ht))]


class ExtModule:
    """Ext*_A(M, N) for n <= bound, as a graded module over k[chi] with
    weight-2 variables chi_i, with explicit chi matrices Ext^n -> Ext^{n+2}."""

    __slots__ = ("algebra", "ring", "bound", "dims", "chi", "cochain")

    def __init__(self, algebra, ring, bound, dims, chi, cochain):
        self.algebra = algebra
        self.ring = ring
        self.bound = bound
        self.dims = dims          # dims[n] = dim Ext^n, 0 <= n <= bound
        self.chi = chi            # chi[i][n]: Ext^n -> Ext^{n+2}, n <= bound-2
        self.cochain = cochain

    def chi_matrix(self, i, n):
        return self.chi[i][n]

    def monomial_matrix(self, exp, n):
        """Matrix of chi^exp: Ext^n -> Ext^{n + deg}, composing ascending."""
        F = self.algebra.field
        deg = sum(2 * e for e in exp)
        if n + deg > self.bound:
            raise BoundTooSmall(f"degree {n + deg} exceeds bound {self.bound}")
        cur = linalg.identity(self.dims[n], F)
        at = n
        for i, e in enumerate(exp):
            for _ in range(e):
                cur = linalg.mat_mul(F, self.chi[i][at], cur)
                at += 2
        return cur


def ext_ring(algebra: CIAlgebra) -> Ring:
    names = [f"c{i + 1}" for i in range(algebra.c)]
    return Ring(algebra.field, names, weights=[2] * algebra.c)


def ext_module(M: FDModule, N: FDModule, bound: int) -> ExtModule:
    """Ext^n_A(M, N) for n <= bound via Hom_A(F_*, N) on the minimal
    resolution of M, with chi_i induced by precomposition with T_i."""
    if bound < 2:
        raise ValueError("bound must be >= 2")
    A = M.algebra
    F = A.field
    res = minimal_resolution(M, bound + 1)
    ops = eisenbud_operators(res)
    nd = N.dim

    # C^n = Hom_A(F_n, N) = N^{b_n}; coordinates (generator slot, N-basis)
    def delta(n):
        """C^n -> C^{n+1}: precompose with d_{n+1}."""
        b_src, b_tgt = res.betti[n], res.betti[n + 1]
        if b_src == 0 or b_tgt == 0 or nd == 0:
            return [[F.zero] * (b_src * nd) for _ in range(b_tgt * nd)]
        d = res.diffs[n]  # b_{n} x b_{n+1} over A
        out = [[F.zero] * (b_src * nd) for _ in range(b_tgt * nd)]
        for j in range(b_tgt):
            for i in range(b_src):
                block = N.act_poly(d[i][j])
                for r in range(nd):
                    for s in range(nd):
                        if block[r][s]:
                            out[j * nd + r][i * nd + s] = block[r][s]
        return out

    dims = [res.betti[n] * nd for n in range(bound + 2)]
    diffs = [delta(n) for n in range(bound + 1)]
    cochain = _KCochain(F, dims, diffs)

    chi = []
    for i in range(A.c):
        per_degree = []
        for n in range(bound - 1):
            b_src, b_tgt = res.betti[n], res.betti[n + 2]
            raw = [[F.zero] * (b_src * nd) for _ in range(b_tgt * nd)]
            if b_src and b_tgt and nd and n < len(ops.T):
                Ti = ops.T[n][i]  # b_n x b_{n+2} over k[x]
                for j in range(b_tgt):
                    for s in range(b_src):
                        block = N.act_poly(Ti[s][j])
                        for r in range(nd):
                            for t in range(nd):
                                if block[r][t]:
                                    raw[j * nd + r][s * nd + t] = block[r][t]
            per_degree.append(cochain.induced_map(raw, n, n + 2))
        chi.append(per_degree)

    ext_dims = [cochain.dim_cohomology(n) for n in range(bound + 1)]
    return ExtModule(A, ext_ring(A), bound, ext_dims, chi, cochain)


def chi_commutativity_check(E: ExtModule) -> bool:
    F = E.algebra.field
    c = E.algebra.c
    for i in range(c):
        for j in range(i + 1, c):
            for n in range(E.bound - 3):
                ij = linalg.mat_mul(F, E.chi[i][n + 2], E.chi[j][n])
                ji = linalg.mat_mul(F, E.chi[j][n + 2], E.chi[i][n])
                if ij != ji:
                    return False
    return True


def ann_to_bound(E: ExtModule, deg_cap: int) -> Ideal:
    """The ideal of polynomials f in k[chi] of weighted degree <= deg_cap
    with f . Ext^n = 0 for all n <= bound - deg f, found degreewise by
    linear algebra.  Truncation caveat: elements of the true annihilator of
    degree > deg_cap are not found."""
    if deg_cap > E.bound - 4:
        raise BoundTooSmall(
            f"deg_cap {deg_cap} needs Ext computed beyond bound {E.bound}"
        )
    F = E.algebra.field
    R = E.ring
    gens = []
    # degree 0: a constant annihilates iff all Ext vanish
    if all(d == 0 for d in E.dims):
        return Ideal(R, [R.one()])
    for d in range(2, deg_cap + 1, 2):
        monos = R.monomials_of_degree(d)
        if not monos:
            continue
        rows = []
        for n in range(E.bound - d + 1):
            src = E.dims[n]
            tgt = E.dims[n + d]
            if src == 0:
                continue
            mats = [E.monomial_matrix(m, n) for m in monos]
            # rows: one constraint per (target coord, source coord)
            for r in range(tgt):
                for s in range(src):
                    rows.append([mats[l][r][s] for l in range(len(monos))])
        if not rows:
            kernel = [
                [F.one if a == b else F.zero for a in range(len(monos))]
                for b in range(len(monos))
            ]
        else:
            kernel = linalg.kernel_basis(F, rows)
        for v in kernel:
            p = Poly(R, {m: c for m, c in zip(monos, v) if c})
            if not p.is_zero():
                gens.append(p)
    return Ideal(R, gens)
