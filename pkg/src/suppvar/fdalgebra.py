"""Finite-dimensional complete-intersection quotient algebras
A = k[x_1..x_c]/(x_1^{e_1}, .., x_c^{e_c}) and their modules, given by
commuting nilpotent action matrices.  Includes group algebras of elementary
abelian p-groups (all e_i = p = char k), minimal resolutions by Nakayama
covers, diagonal tensor/Hom module structure, Carlson modules, stable Homs,
and a randomized indecomposable-summand search.
"""
from __future__ import annotations

import random
from itertools import product
from math import prod

from . import linalg
from .linalg import Field
from .poly import Poly, Ring


class NotAGroupAlgebra(TypeError):
    pass


class ZeroClass(ValueError):
    pass


class BadModule(ValueError):
    pass


_NAMES = ["x", "y", "z"]


class CIAlgebra:
    """k[x_1..x_c]/(x_1^{e_1},..,x_c^{e_c}); basis = monomials with
    exponent_i < e_i, ordered by itertools.product."""

    __slots__ = ("field", "exponents", "poly_ring", "basis", "basis_index")

    def __init__(self, field: Field, exponents):
        self.field = field
        self.exponents = tuple(int(e) for e in exponents)
        if any(e < 2 for e in self.exponents):
            raise ValueError("exponents must be >= 2")
        c = len(self.exponents)
        names = _NAMES[:c] if c <= 3 else [f"x{i + 1}" for i in range(c)]
        self.poly_ring = Ring(field, names)
        # ordered so that earlier variables vary first: 1, x, y, xy, ...
        self.basis = sorted(
            (tuple(m) for m in product(*[range(e) for e in self.exponents])),
            key=lambda m: (sum(m), tuple(reversed(m))),
        )
        self.basis_index = {m: i for i, m in enumerate(self.basis)}

    @property
    def c(self) -> int:
        return len(self.exponents)

    @property
    def dim(self) -> int:
        return prod(self.exponents)

    @property
    def group_mode(self) -> bool:
        p = self.field.char
        return p != 0 and all(e == p for e in self.exponents)

    def __eq__(self, other):
        return (
            isinstance(other, CIAlgebra)
            and self.field == other.field
            and self.exponents == other.exponents
        )

    def __repr__(self):
        rels = ", ".join(
            f"{n}^{e}" for n, e in zip(self.poly_ring.names, self.exponents)
        )
        return f"{self.field!r}[{', '.join(self.poly_ring.names)}]/({rels})"

    # -- distinguished modules --------------------------------------------
    def trivial_module(self) -> "FDModule":
        z = [[self.field.zero]]
        return FDModule(self, [list(map(list, z)) for _ in range(self.c)])

    def regular_module(self) -> "FDModule":
        """A as a module over itself, in the monomial basis."""
        n = self.dim
        actions = []
        for i in range(self.c):
            mat = [[self.field.zero] * n for _ in range(n)]
            for col, m in enumerate(self.basis):
                if m[i] + 1 < self.exponents[i]:
                    m2 = tuple(a + 1 if j == i else a for j, a in enumerate(m))
                    mat[self.basis_index[m2]][col] = self.field.one
            actions.append(mat)
        return FDModule(self, actions)

    def free_module(self, rank: int) -> "FDModule":
        return direct_sum([self.regular_module()] * rank) if rank else FDModule(
            self, [[] for _ in range(self.c)], dim=0
        )


class FDModule:
    """Module over a CIAlgebra: a k-space with commuting nilpotent action
    matrices X_1..X_c satisfying X_i^{e_i} = 0 (asserted at construction)."""

    __slots__ = ("algebra", "dim", "actions")

    def __init__(self, algebra: CIAlgebra, actions, dim=None, check: bool = True):
        self.algebra = algebra
        self.actions = [
            [[algebra.field.of(v) for v in row] for row in mat] for mat in actions
        ]
        if dim is None:
            dim = len(actions[0]) if actions and actions[0] else 0
        self.dim = dim
        if check:
            self._validate()

    def _validate(self):
        F = self.algebra.field
        if len(self.actions) != self.algebra.c:
            raise BadModule("one action matrix per variable required")
        for i, mat in enumerate(self.actions):
            if len(mat) != self.dim or any(len(r) != self.dim for r in mat):
                raise BadModule(f"action matrix {i} has wrong shape")
        for i in range(self.algebra.c):
            power = linalg.identity(self.dim, F)
            for _ in range(self.algebra.exponents[i]):
                power = linalg.mat_mul(F, power, self.actions[i])
            if any(any(v for v in row) for row in power):
                raise BadModule(f"X_{i}^{self.algebra.exponents[i]} != 0")
            for j in range(i + 1, self.algebra.c):
                ab = linalg.mat_mul(F, self.actions[i], self.actions[j])
                ba = linalg.mat_mul(F, self.actions[j], self.actions[i])
                if ab != ba:
                    raise BadModule(f"X_{i} and X_{j} do not commute")

    def is_zero(self) -> bool:
        return self.dim == 0

    def act_monomial(self, exp):
        """Matrix of x^exp on the module."""
        F = self.algebra.field
        out = linalg.identity(self.dim, F)
        for i, e in enumerate(exp):
            for _ in range(e):
                out = linalg.mat_mul(F, out, self.actions[i])
        return out

    def act_poly(self, p: Poly):
        """Matrix of a polynomial in the x_i (canonical representative)."""
        F = self.algebra.field
        out = [[F.zero] * self.dim for _ in range(self.dim)]
        for e, c in p.terms.items():
            out = linalg.mat_add(F, out, linalg.mat_scale(F, c, self.act_monomial(e)))
        return out

    def radical_subspace(self):
        """Basis of rad M = sum of the images of the X_i."""
        F = self.algebra.field
        cols = []
        for mat in self.actions:
            cols.extend(linalg.transpose(mat) if mat else [])
        if not cols:
            return []
        _, _, piv = linalg.rref(F, linalg.transpose(cols))
        return [cols[j] for j in piv]

    def __repr__(self):
        return f"FDModule(dim={self.dim} over {self.algebra!r})"


def direct_sum(modules) -> FDModule:
    modules = list(modules)
    if not modules:
        raise ValueError("empty direct sum")
    A = modules[0].algebra
    F = A.field
    total = sum(m.dim for m in modules)
    actions = []
    for i in range(A.c):
        mat = [[F.zero] * total for _ in range(total)]
        off = 0
        for m in modules:
            for a in range(m.dim):
                for b in range(m.dim):
                    mat[off + a][off + b] = m.actions[i][a][b]
            off += m.dim
        actions.append(mat)
    return FDModule(A, actions, dim=total, check=False)


def submodule_on_basis(M: FDModule, basis_vectors) -> FDModule:
    """The FDModule structure on an action-stable subspace, in the given basis."""
    F = M.algebra.field
    d = len(basis_vectors)
    if d == 0:
        return FDModule(M.algebra, [[] for _ in range(M.algebra.c)], dim=0, check=False)
    B = linalg.transpose(basis_vectors)  # columns
    actions = []
    for mat in M.actions:
        sub = [[F.zero] * d for _ in range(d)]
        for j, v in enumerate(basis_vectors):
            img = linalg.mat_vec(F, mat, v)
            coords = linalg.solve(F, B, img)
            if coords is None:
                raise BadModule("subspace is not action-stable")
            for i in range(d):
                sub[i][j] = coords[i]
        actions.append(sub)
    return FDModule(M.algebra, actions, dim=d)


# ---------------------------------------------------------------------------
# Minimal resolutions
# ---------------------------------------------------------------------------

def minimal_generators(M: FDModule):
    """Vectors of M lifting a basis of M/rad M (Nakayama generators)."""
    F = M.algebra.field
    rad = M.radical_subspace()
    basis = list(rad)
    gens = []
    for j in range(M.dim):
        e = [F.one if i == j else F.zero for i in range(M.dim)]
        if linalg.rank(F, linalg.transpose(basis + [e])) > len(basis):
            basis.append(e)
            gens.append(e)
    return gens


def cover_map(M: FDModule):
    """(free_rank, k-matrix of the minimal cover A^{b_0} -> M).

    Free basis element (j, mu) maps to x^mu . g_j.
    """
    A = M.algebra
    F = A.field
    gens = minimal_generators(M)
    b0 = len(gens)
    # monomial action matrices by dynamic programming over the basis order
    table = {}
    for mu in A.basis:
        if not any(mu):
            table[mu] = linalg.identity(M.dim, F)
            continue
        i = next(t for t, e in enumerate(mu) if e)
        prev = tuple(e - 1 if t == i else e for t, e in enumerate(mu))
        table[mu] = linalg.mat_mul(F, M.actions[i], table[prev])
    cols = []
    for g in gens:
        for mu in A.basis:
            cols.append(linalg.mat_vec(F, table[mu], g))
    mat = linalg.transpose(cols) if cols else []
    return b0, mat


def _free_shift(A: CIAlgebra, rank: int, v, i: int):
    """x_i . v for v in A^rank, coordinates in the (slot, monomial) basis."""
    F = A.field
    na = A.dim
    w = [F.zero] * len(v)
    for j in range(rank):
        for idx, mu in enumerate(A.basis):
            c = v[j * na + idx]
            if c and mu[i] + 1 < A.exponents[i]:
                mu2 = tuple(e + 1 if t == i else e for t, e in enumerate(mu))
                pos = j * na + A.basis_index[mu2]
                w[pos] = F.add(w[pos], c)
    return w


def _free_mul_monomial(A: CIAlgebra, rank: int, polys, mu):
    """Coordinates of x^mu . (column of canonical polynomials) in A^rank."""
    F = A.field
    na = A.dim
    w = [F.zero] * (rank * na)
    for j in range(rank):
        for e, c in polys[j].terms.items():
            tot = tuple(a + b for a, b in zip(e, mu))
            if any(t >= bound for t, bound in zip(tot, A.exponents)):
                continue
            pos = j * na + A.basis_index[tot]
            w[pos] = F.add(w[pos], c)
    return w


def _free_coords_to_polys(A: CIAlgebra, rank: int, vector):
    """Element of A^rank in the (j, mu) basis -> list of canonical polynomials."""
    R = A.poly_ring
    out = []
    na = A.dim
    for j in range(rank):
        terms = {}
        for idx, mu in enumerate(A.basis):
            c = vector[j * na + idx]
            if c:
                terms[mu] = c
        out.append(Poly(R, terms))
    return out


class MinimalResolution:
    """F_n -> .. -> F_0 -> M with minimal covers at each step.

    ``betti`` lists b_0..b_n; ``diffs[s]`` is the (b_{s-1} x b_s) matrix over
    A (canonical polynomial representatives) of d_s: F_s -> F_{s-1}, for
    s = 1..n.  ``cover`` is the k-matrix F_0 -> M.
    """

    __slots__ = ("algebra", "module", "betti", "diffs", "cover")

    def __init__(self, algebra, module, betti, diffs, cover):
        self.algebra = algebra
        self.module = module
        self.betti = betti
        self.diffs = diffs
        self.cover = cover

    def diff_k_matrix(self, s: int):
        """d_s as a k-linear map A^{b_s} -> A^{b_{s-1}} in (j, mu) bases."""
        A = self.algebra
        F = A.field
        mat = self.diffs[s - 1]
        b_src, b_tgt = self.betti[s], self.betti[s - 1]
        na = A.dim
        out = [[F.zero] * (b_src * na) for _ in range(b_tgt * na)]
        for j in range(b_src):
            for idx, mu in enumerate(A.basis):
                # image of x^mu e_j: per target slot i, x^mu * mat[i][j]
                for i in range(b_tgt):
                    p = mat[i][j]
                    for e, c in p.terms.items():
                        tot = tuple(a + b for a, b in zip(e, mu))
                        if any(t >= ebound for t, ebound in zip(tot, A.exponents)):
                            continue
                        out[i * na + A.basis_index[tot]][j * na + idx] = F.add(
                            out[i * na + A.basis_index[tot]][j * na + idx], c
                        )
        return out


def minimal_resolution(M: FDModule, n: int) -> MinimalResolution:
    A = M.algebra
    F = A.field
    if M.is_zero():
        return MinimalResolution(A, M, [0] * (n + 1), [], [])
    b0, cover = cover_map(M)
    betti = [b0]
    diffs = []
    current_rank = b0
    # kernel of the cover, as vectors in A^{b0}
    kernel = linalg.kernel_basis(F, cover) if cover else []
    for _s in range(1, n + 1):
        if not kernel:
            betti.append(0)
            continue
        # minimal generators of the kernel K: kernel vectors extending a
        # basis of rad K = sum_i x_i K (Nakayama, in ambient coordinates)
        rad = []
        for v in kernel:
            for i in range(A.c):
                w = _free_shift(A, current_rank, v, i)
                if any(w):
                    rad.append(w)
        cols = rad + kernel
        _, _, piv = linalg.rref(F, linalg.transpose(cols))
        amb = [cols[j] for j in piv if j >= len(rad)]
        b = len(amb)
        betti.append(b)
        mat = [[A.poly_ring.zero()] * b for _ in range(current_rank)]
        col_polys = []
        for col, v in enumerate(amb):
            polys = _free_coords_to_polys(A, current_rank, v)
            col_polys.append(polys)
            for row, p in enumerate(polys):
                mat[row][col] = p
        diffs.append(mat)
        # next kernel: of the k-linear map A^b -> A^{current_rank}
        kmat = []
        for j in range(b):
            for mu in A.basis:
                kmat.append(_free_mul_monomial(A, current_rank, col_polys[j], mu))
        kernel = linalg.kernel_basis(F, linalg.transpose(kmat))
        current_rank = b
    while len(betti) < n + 1:
        betti.append(0)
    return MinimalResolution(A, M, betti, diffs, cover)


def syzygy_module(M: FDModule) -> FDModule:
    """Omega^1 M: the kernel of the minimal cover A^{b_0} -> M."""
    A = M.algebra
    F = A.field
    if M.is_zero():
        return M
    b0, cover = cover_map(M)
    kernel = linalg.kernel_basis(F, cover)
    return submodule_on_basis(A.free_module(b0), kernel)


def omega(M: FDModule, n: int) -> FDModule:
    for _ in range(n):
        M = syzygy_module(M)
    return M


def is_projective(M: FDModule) -> bool:
    return syzygy_module(M).is_zero()


# ---------------------------------------------------------------------------
# Tensor, Hom, dual (group-like diagonal structure)
# ---------------------------------------------------------------------------

def _require_group(A: CIAlgebra):
    if not A.group_mode:
        raise NotAGroupAlgebra(f"{A!r} is not a group algebra (e_i = char k needed)")


def tensor_module(M: FDModule, N: FDModule) -> FDModule:
    """Diagonal action x_i -> X_i (x) 1 + 1 (x) X_i + X_i (x) X_i."""
    A = M.algebra
    _require_group(A)
    F = A.field
    im = linalg.identity(M.dim, F)
    inn = linalg.identity(N.dim, F)
    actions = []
    for i in range(A.c):
        Xm, Xn = M.actions[i], N.actions[i]
        t = linalg.mat_add(
            F,
            linalg.mat_add(F, linalg.kronecker(F, Xm, inn), linalg.kronecker(F, im, Xn)),
            linalg.kronecker(F, Xm, Xn),
        )
        actions.append(t)
    return FDModule(A, actions, dim=M.dim * N.dim)


def hom_module(M: FDModule, N: FDModule) -> FDModule:
    """Hom_k(M, N) with conjugation action f -> g_N f g_M^{-1}; x_i acts as
    that minus the identity.  Basis: matrix units vectorized row-major."""
    A = M.algebra
    _require_group(A)
    F = A.field
    d = M.dim * N.dim
    actions = []
    for i in range(A.c):
        gN = linalg.mat_add(F, linalg.identity(N.dim, F), N.actions[i])
        # inverse of 1 + X: alternating geometric series (X nilpotent)
        gMinv = linalg.identity(M.dim, F)
        power = linalg.identity(M.dim, F)
        sign = F.one
        for _ in range(A.exponents[i] - 1):
            power = linalg.mat_mul(F, power, M.actions[i])
            sign = F.neg(sign)
            gMinv = linalg.mat_add(F, gMinv, linalg.mat_scale(F, sign, power))
        mat = [[F.zero] * d for _ in range(d)]
        # f (as N.dim x M.dim matrix, entry (a,b) at index a*M.dim+b)
        for a in range(N.dim):
            for b in range(M.dim):
                col = a * M.dim + b
                # image of matrix unit E_ab: gN E_ab gMinv - E_ab
                for r in range(N.dim):
                    for s in range(M.dim):
                        v = F.mul(gN[r][a], gMinv[b][s])
                        if r == a and s == b:
                            v = F.sub(v, F.one)
                        if v:
                            mat[r * M.dim + s][col] = v
        actions.append(mat)
    return FDModule(A, actions, dim=d)


def dual(M: FDModule) -> FDModule:
    return hom_module(M, M.algebra.trivial_module())


# ---------------------------------------------------------------------------
# Hom spaces, stable Homs, Carlson modules
# ---------------------------------------------------------------------------

def hom_space_basis(M: FDModule, N: FDModule):
    """k-basis of Hom_A(M, N), each element an N.dim x M.dim matrix."""
    F = M.algebra.field
    if M.dim == 0 or N.dim == 0:
        return []
    rows = []
    nm = N.dim * M.dim
    for i in range(M.algebra.c):
        Xm, Xn = M.actions[i], N.actions[i]
        # condition f Xm - Xn f = 0, entry (r, s)
        for r in range(N.dim):
            for s in range(M.dim):
                row = [F.zero] * nm
                for t in range(M.dim):
                    row[r * M.dim + t] = F.add(row[r * M.dim + t], Xm[t][s])
                for t in range(N.dim):
                    row[t * M.dim + s] = F.sub(row[t * M.dim + s], Xn[r][t])
                rows.append(row)
    kernel = linalg.kernel_basis(F, rows) if rows else []
    out = []
    for v in kernel:
        out.append([[v[r * M.dim + s] for s in range(M.dim)] for r in range(N.dim)])
    return out


def stable_hom_dim(M: FDModule, N: FDModule) -> int:
    """dim Hom_A(M,N) minus the dimension of maps factoring through the
    projective cover of N."""
    A = M.algebra
    F = A.field
    homs = hom_space_basis(M, N)
    if not homs:
        return 0
    if N.is_zero() or M.is_zero():
        return 0
    b0, cover = cover_map(N)
    P = A.free_module(b0)
    through = hom_space_basis(M, P)
    factored = []
    for g in through:
        # cover o g as a vectorized map M -> N
        comp = linalg.mat_mul(F, cover, g)
        factored.append([comp[r][s] for r in range(N.dim) for s in range(M.dim)])
    flat_homs = [[h[r][s] for r in range(N.dim) for s in range(M.dim)] for h in homs]
    total = linalg.rank(F, flat_homs)
    if not factored:
        return total
    joint = linalg.rank(F, flat_homs + factored)
    fact_rank = linalg.rank(F, factored)
    if joint != total:
        raise RuntimeError("factored maps escaped Hom_A")
    return total - fact_rank


def carlson_module(A: CIAlgebra, degree: int, zeta) -> FDModule:
    """L_zeta = ker(zeta-hat: Omega^d k -> k) for a nonzero degree-d class,
    given as a cocycle vector on F_d of the minimal resolution of k."""
    F = A.field
    zeta = [F.of(z) for z in zeta]
    if not any(zeta):
        raise ZeroClass("zeta must be a nonzero cohomology class")
    if degree < 1:
        raise ValueError("degree must be >= 1")
    res = minimal_resolution(A.trivial_module(), degree)
    if len(zeta) != res.betti[degree]:
        raise ValueError(
            f"zeta must have length b_{degree} = {res.betti[degree]}"
        )
    na = A.dim
    b_d = res.betti[degree]
    D = res.diff_k_matrix(degree)
    # functional on F_d: nonzero only on the constant slot of each generator
    zero_idx = A.basis_index[(0,) * A.c]
    zvec = [F.zero] * (b_d * na)
    for j in range(b_d):
        zvec[j * na + zero_idx] = zeta[j]
    cols = linalg.transpose(D)
    _, _, piv = linalg.rref(F, D)
    omega_basis = [cols[j] for j in piv]
    lam = [zvec[j] for j in piv]
    if not any(lam):
        raise ZeroClass("cocycle vanishes on the syzygy (coboundary input)")
    coeff_kernel = linalg.kernel_basis(F, [lam])
    kernel_vectors = []
    for cv in coeff_kernel:
        v = [F.zero] * len(omega_basis[0])
        for a, w in zip(cv, omega_basis):
            if a:
                for t, x in enumerate(w):
                    v[t] = F.add(v[t], F.mul(a, x))
        kernel_vectors.append(v)
    big_free = A.free_module(res.betti[degree - 1])
    return submodule_on_basis(big_free, kernel_vectors)


# ---------------------------------------------------------------------------
# Indecomposable decomposition (Fitting splits of random endomorphisms)
# ---------------------------------------------------------------------------

def _fitting_split(M: FDModule, phi):
    """Split M along ker(phi^dim) (+) im(phi^dim) if both are nonzero."""
    F = M.algebra.field
    power = linalg.identity(M.dim, F)
    for _ in range(M.dim):
        power = linalg.mat_mul(F, power, phi)
    ker = linalg.kernel_basis(F, power)
    if not ker or len(ker) == M.dim:
        return None
    cols = linalg.transpose(power)
    _, _, piv = linalg.rref(F, power)
    img = [cols[j] for j in piv]
    return submodule_on_basis(M, ker), submodule_on_basis(M, img)


def decompose_indecomposables(M: FDModule, seed: int = 0, trials: int = 64):
    """Direct-sum decomposition into (probabilistically) indecomposable
    summands, via Fitting decompositions of random endomorphisms."""
    F = M.algebra.field
    if F.char == 0:
        raise ValueError("decomposition requires a finite prime field")
    if M.is_zero():
        return []
    rng = random.Random(seed)
    ends = hom_space_basis(M, M)
    if len(ends) == 1:
        return [M]
    p = F.char
    for _ in range(trials):
        phi = [[F.zero] * M.dim for _ in range(M.dim)]
        for b in ends:
            c = rng.randrange(p)
            if c:
                phi = linalg.mat_add(F, phi, linalg.mat_scale(F, F.of(c), b))
        for lam in range(p):
            shifted = linalg.mat_add(
                F, phi, linalg.mat_scale(F, F.neg(F.of(lam)), linalg.identity(M.dim, F))
            )
            split = _fitting_split(M, shifted)
            if split is not None:
                left, right = split
                return decompose_indecomposables(
                    left, seed=rng.randrange(1 << 30), trials=trials
                ) + decompose_indecomposables(
                    right, seed=rng.randrange(1 << 30), trials=trials
                )
    return [M]


def end_ring_is_local(M: FDModule, seed: int = 0, trials: int = 64) -> bool:
    """True iff the random search finds no direct-sum splitting."""
    return len(decompose_indecomposables(M, seed=seed, trials=trials)) == 1


def find_isomorphism(M: FDModule, N: FDModule, seed: int = 0, trials: int = 64):
    """An invertible A-homomorphism M -> N found by random search, or None."""
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return []
    F = M.algebra.field
    if F.char == 0:
        trials = min(trials, 16)
    homs = hom_space_basis(M, N)
    if not homs:
        return None
    rng = random.Random(seed)
    p = F.char if F.char else 13
    for _ in range(trials):
        cand = [[F.zero] * M.dim for _ in range(N.dim)]
        for b in homs:
            c = rng.randrange(p)
            if c:
                cand = linalg.mat_add(F, cand, linalg.mat_scale(F, F.of(c), b))
        if linalg.rank(F, cand) == M.dim:
            return cand
    return None
