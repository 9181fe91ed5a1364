"""Bounded cochain complexes of graded free modules over a polynomial ring:
cones, shifts, tensor products, Koszul objects, and cohomology both as
graded strands (exact linear algebra per internal degree) and as module
presentations (via syzygies).

Conventions: cohomological (upper) indexing, differentials of degree +1.
``cone(f: X -> Y)`` has objects Y^n (+) X^{n+1} and differential
[[d_Y, f], [0, -d_X]].  ``shift(X, 1)^n = X^{n+1}``.  A Koszul object
``X//r`` is the cone on the multiplication map r: X -> X (with the internal
twist making it degree 0), shifted so that for X = R concentrated in degree
0 the result is the classical two-term Koszul complex in degrees 0 and 1.
"""
from __future__ import annotations

from . import linalg
from .groebner import (
    Ideal,
    Vec,
    buchberger,
    module_annihilator,
    syzygy_basis,
)
from .poly import MixedRings, Poly, Ring


class NotAChainMap(ValueError):
    pass


class NotFree(TypeError):
    pass


class NotHomogeneous(ValueError):
    pass


class GradedFreeModule:
    """A free module (+)_i R[-shift_i]; generator i has internal degree shift_i."""

    __slots__ = ("ring", "shifts")

    def __init__(self, ring: Ring, shifts):
        self.ring = ring
        self.shifts = tuple(int(s) for s in shifts)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def twist(self, d: int) -> "GradedFreeModule":
        return GradedFreeModule(self.ring, tuple(s - d for s in self.shifts))

    def strand_basis(self, t: int):
        """Monomial basis of the internal-degree-t component: (gen, exponent)."""
        out = []
        for j, s in enumerate(self.shifts):
            for m in self.ring.monomials_of_degree(t - s):
                out.append((j, m))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GradedFreeModule)
            and self.ring == other.ring
            and self.shifts == other.shifts
        )

    def __repr__(self):
        return f"Free{list(self.shifts)}"


def _zero_matrix(ring: Ring, rows: int, cols: int):
    z = ring.zero()
    return [[z] * cols for _ in range(rows)]


def _mat_compose(a, b, ring: Ring):
    """Poly-matrix product a . b."""
    if not a or not b:
        return []
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            s = ring.zero()
            for k in range(inner):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


class ChainComplex:
    """Bounded complex of graded free modules.

    ``objects[n]`` is a GradedFreeModule, ``diffs[n]`` the matrix of
    d^n: X^n -> X^{n+1} (rows indexed by target generators).  Both d o d = 0
    and homogeneity of every entry are asserted at construction.
    """

    __slots__ = ("ring", "objects", "diffs", "lo", "hi")

    def __init__(self, ring: Ring, objects: dict, diffs: dict, check: bool = True):
        self.ring = ring
        self.objects = {n: m for n, m in objects.items() if m.rank > 0}
        degs = sorted(self.objects)
        self.lo = degs[0] if degs else 0
        self.hi = degs[-1] if degs else 0
        self.diffs = {}
        for n, mat in diffs.items():
            if n in self.objects and (n + 1) in self.objects:
                self.diffs[n] = mat
        if check:
            self._validate()

    def module(self, n: int) -> GradedFreeModule:
        return self.objects.get(n, GradedFreeModule(self.ring, ()))

    def rank(self, n: int) -> int:
        return self.module(n).rank

    def diff(self, n: int):
        if n in self.diffs:
            return self.diffs[n]
        return _zero_matrix(self.ring, self.rank(n + 1), self.rank(n))

    def _validate(self):
        for n, mat in self.diffs.items():
            src, tgt = self.module(n), self.module(n + 1)
            if len(mat) != tgt.rank or (mat and len(mat[0]) != src.rank):
                raise ValueError(f"differential at {n} has wrong shape")
            for i in range(tgt.rank):
                for j in range(src.rank):
                    entry = mat[i][j]
                    if entry.is_zero():
                        continue
                    want = src.shifts[j] - tgt.shifts[i]
                    if entry.homogeneous_degree() != want:
                        raise NotHomogeneous(
                            f"entry ({i},{j}) of d^{n} is not homogeneous of degree {want}"
                        )
        for n in self.diffs:
            if (n + 1) in self.diffs:
                comp = _mat_compose(self.diffs[n + 1], self.diffs[n], self.ring)
                if any(not e.is_zero() for row in comp for e in row):
                    raise ValueError(f"d^{n + 1} o d^{n} != 0")

    def degrees(self):
        return sorted(self.objects)

    def is_zero(self) -> bool:
        return not self.objects

    # -- constructors ------------------------------------------------------
    @classmethod
    def single(cls, ring: Ring, rank: int = 1, shifts=None, degree: int = 0):
        shifts = tuple(shifts) if shifts is not None else (0,) * rank
        return cls(ring, {degree: GradedFreeModule(ring, shifts)}, {})

    def __repr__(self):
        parts = ", ".join(f"{n}: {self.module(n)!r}" for n in self.degrees())
        return f"ChainComplex({parts})"


class ChainMap:
    """Degree-0 chain map f: X -> Y, one matrix per cohomological degree."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: ChainComplex, target: ChainComplex, maps: dict, check: bool = True):
        if source.ring != target.ring:
            raise MixedRings("chain map between different rings")
        self.source = source
        self.target = target
        self.maps = {
            n: m for n, m in maps.items() if source.rank(n) > 0 and target.rank(n) > 0
        }
        if check:
            self._validate()

    def matrix(self, n: int):
        if n in self.maps:
            return self.maps[n]
        return _zero_matrix(self.source.ring, self.target.rank(n), self.source.rank(n))

    def _validate(self):
        ring = self.source.ring
        degs = set(self.source.degrees()) | set(self.target.degrees())
        for n in degs:
            lhs = _mat_compose(self.target.diff(n), self.matrix(n), ring)
            rhs = _mat_compose(self.matrix(n + 1), self.source.diff(n), ring)
            if lhs != rhs:
                raise NotAChainMap(f"square at degree {n} does not commute")


def cone(f: ChainMap) -> ChainComplex:
    """Mapping cone with objects Y^n (+) X^{n+1}, d = [[d_Y, f], [0, -d_X]]."""
    X, Y = f.source, f.target
    ring = X.ring
    objects = {}
    degs = set()
    for n in Y.degrees():
        degs.add(n)
    for n in X.degrees():
        degs.add(n - 1)
    for n in degs:
        shifts = Y.module(n).shifts + X.module(n + 1).shifts
        if shifts:
            objects[n] = GradedFreeModule(ring, shifts)
    diffs = {}
    for n in degs:
        ry, rx1 = Y.rank(n), X.rank(n + 1)
        ry1, rx2 = Y.rank(n + 1), X.rank(n + 2)
        rows, cols = ry1 + rx2, ry + rx1
        if rows == 0 or cols == 0:
            continue
        mat = _zero_matrix(ring, rows, cols)
        dY = Y.diff(n)
        for i in range(ry1):
            for j in range(ry):
                mat[i][j] = dY[i][j]
        fm = f.matrix(n + 1)
        for i in range(ry1):
            for j in range(rx1):
                mat[i][ry + j] = fm[i][j]
        dX = X.diff(n + 1)
        for i in range(rx2):
            for j in range(rx1):
                mat[ry1 + i][ry + j] = -dX[i][j]
        diffs[n] = mat
    return ChainComplex(ring, objects, diffs)


def shift(X: ChainComplex, n: int) -> ChainComplex:
    """Suspension: shift(X, n)^i = X^{i+n}, differentials scaled by (-1)^n."""
    ring = X.ring
    sign = 1 if n % 2 == 0 else -1
    objects = {i - n: X.module(i) for i in X.degrees()}
    diffs = {}
    for i, mat in X.diffs.items():
        diffs[i - n] = [[e * sign for e in row] for row in mat] if sign == -1 else mat
    return ChainComplex(ring, objects, diffs, check=False)


def twist(X: ChainComplex, d: int) -> ChainComplex:
    """Internal-degree twist: generator degrees drop by d, matrices unchanged."""
    objects = {n: X.module(n).twist(d) for n in X.degrees()}
    return ChainComplex(X.ring, objects, dict(X.diffs), check=False)


def multiplication_map(X: ChainComplex, r: Poly) -> ChainMap:
    """The chain map r . id : X -> twist(X, deg r)."""
    if r.is_zero() or not r.is_homogeneous():
        raise NotHomogeneous(f"{r} is not nonzero homogeneous")
    d = r.homogeneous_degree()
    Y = twist(X, d)
    maps = {}
    for n in X.degrees():
        rk = X.rank(n)
        mat = _zero_matrix(X.ring, rk, rk)
        for i in range(rk):
            mat[i][i] = r
        maps[n] = mat
    return ChainMap(X, Y, maps)


def koszul_object(X: ChainComplex, r: Poly) -> ChainComplex:
    """X//r: cone of r: X -> X (internally twisted), normalized so that
    R//x over k[x] lives in degrees 0, 1 with H^1 = R/(x)."""
    return shift(cone(multiplication_map(X, r)), -1)


def koszul_tower(X: ChainComplex, elements) -> list:
    """Stages of the iterated Koszul construction; stage 0 is X itself."""
    stages = [X]
    for r in elements:
        stages.append(koszul_object(stages[-1], r))
    return stages


def koszul_complex(ring: Ring, elements) -> ChainComplex:
    """Koszul complex of a sequence, built as an iterated Koszul object on R."""
    return koszul_tower(ChainComplex.single(ring), elements)[-1]


def tensor_complex(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    """Total complex of the tensor bicomplex, with Koszul signs."""
    if X.ring != Y.ring:
        raise MixedRings("tensor over different rings")
    ring = X.ring

    # generator bookkeeping: per total degree, blocks (p, q) in order
    def blocks(n):
        return [(p, n - p) for p in X.degrees() if (n - p) in Y.objects]

    def gen_offsets(n):
        offs = {}
        total = 0
        for p, q in blocks(n):
            offs[(p, q)] = total
            total += X.rank(p) * Y.rank(q)
        return offs, total

    degrees = sorted({p + q for p in X.degrees() for q in Y.degrees()})
    objects = {}
    for n in degrees:
        shifts = []
        for p, q in blocks(n):
            for sx in X.module(p).shifts:
                for sy in Y.module(q).shifts:
                    shifts.append(sx + sy)
        if shifts:
            objects[n] = GradedFreeModule(ring, tuple(shifts))
    diffs = {}
    for n in degrees:
        if (n + 1) not in objects:
            continue
        offs_src, cols = gen_offsets(n)
        offs_tgt, rows = gen_offsets(n + 1)
        if rows == 0 or cols == 0:
            continue
        mat = _zero_matrix(ring, rows, cols)
        for (p, q), off in offs_src.items():
            rx, ry = X.rank(p), Y.rank(q)
            # horizontal: d_X (x) id
            if (p + 1, q) in offs_tgt:
                toff = offs_tgt[(p + 1, q)]
                dX = X.diff(p)
                rx1 = X.rank(p + 1)
                for i in range(rx1):
                    for j in range(rx):
                        e = dX[i][j]
                        if e.is_zero():
                            continue
                        for b in range(ry):
                            mat[toff + i * ry + b][off + j * ry + b] = e
            # vertical: (-1)^p id (x) d_Y
            if (p, q + 1) in offs_tgt:
                toff = offs_tgt[(p, q + 1)]
                dY = Y.diff(q)
                ry1 = Y.rank(q + 1)
                sign = 1 if p % 2 == 0 else -1
                for a in range(rx):
                    for i in range(ry1):
                        for j in range(ry):
                            e = dY[i][j]
                            if e.is_zero():
                                continue
                            mat[toff + a * ry1 + i][off + a * ry + j] = e * sign
        diffs[n] = mat
    return ChainComplex(ring, objects, diffs)


# ---------------------------------------------------------------------------
# Cohomology as a presentation over R
# ---------------------------------------------------------------------------

class CohomologyPresentation:
    """H^n(X) = coker(R^m -> R^s): generator cycles inside X^n plus the
    relation columns among them."""

    __slots__ = ("ring", "generators", "gen_degrees", "relations")

    def __init__(self, ring, generators, gen_degrees, relations):
        self.ring = ring
        self.generators = generators      # list of Vec in R^{rank X^n}
        self.gen_degrees = gen_degrees    # internal degree per generator
        self.relations = relations        # list of Vec in R^{len(generators)}

    def is_zero_presentation(self) -> bool:
        if not self.generators:
            return True
        return self.annihilator().is_unit()

    def annihilator(self) -> Ideal:
        return module_annihilator(
            self.relations, ring=self.ring, rank=len(self.generators)
        )


def cohomology(X: ChainComplex, n: int) -> CohomologyPresentation:
    """ker d^n / im d^{n-1}, presented by generators and relations."""
    ring = X.ring
    rk = X.rank(n)
    if rk == 0:
        return CohomologyPresentation(ring, [], [], [])
    src = X.module(n)
    if X.rank(n + 1) == 0:
        kernel = [
            Vec(ring, rk, {(j, (0,) * ring.nvars): ring.field.one}) for j in range(rk)
        ]
    else:
        d = X.diff(n)
        cols = [Vec.from_polys([d[i][j] for i in range(X.rank(n + 1))]) for j in range(rk)]
        # kernel of d^n: syzygies of its columns, as vectors in R^{rk}
        kernel = syzygy_basis(cols)
    gen_degrees = [v.degree_wrt(src.shifts) for v in kernel]
    if not kernel:
        return CohomologyPresentation(ring, [], [], [])
    prev = []
    if X.rank(n - 1) > 0:
        dprev = X.diff(n - 1)
        prev = [
            Vec.from_polys([dprev[i][j] for i in range(rk)])
            for j in range(X.rank(n - 1))
        ]
    combined = kernel + prev
    s = len(kernel)
    relations = []
    for v in syzygy_basis(combined):
        head = Vec(ring, s, {(c, e): co for (c, e), co in v.terms.items() if c < s})
        if not head.is_zero():
            relations.append(head)
    return CohomologyPresentation(ring, kernel, gen_degrees, relations)


def cohomology_annihilator(X: ChainComplex, degrees=None) -> Ideal:
    """ann of (+)_n H^n(X) over the listed (default: all) degrees."""
    from .groebner import ideal_intersection

    ring = X.ring
    if degrees is None:
        degrees = range(X.lo, X.hi + 1)
    result = None
    for n in degrees:
        h = cohomology(X, n)
        if not h.generators:
            continue
        ann = h.annihilator()
        result = ann if result is None else ideal_intersection(result, ann)
        if result.is_zero():
            return result
    if result is None:
        return Ideal(ring, [ring.one()])
    return result


# ---------------------------------------------------------------------------
# Graded strands: exact dimension counts per internal degree
# ---------------------------------------------------------------------------

def strand_matrix(mat, src: GradedFreeModule, tgt: GradedFreeModule, t: int):
    """k-matrix of a homogeneous degree-0 Poly matrix on internal degree t."""
    ring = src.ring
    field = ring.field
    src_basis = src.strand_basis(t)
    tgt_basis = tgt.strand_basis(t)
    tgt_index = {b: i for i, b in enumerate(tgt_basis)}
    out = [[field.zero] * len(src_basis) for _ in range(len(tgt_basis))]
    for col, (j, m) in enumerate(src_basis):
        for i in range(tgt.rank):
            entry = mat[i][j]
            if entry.is_zero():
                continue
            for e, c in entry.terms.items():
                key = (i, tuple(a + b for a, b in zip(e, m)))
                row = tgt_index.get(key)
                if row is not None:
                    out[row][col] = field.add(out[row][col], c)
    return out


def strand_cohomology_basis(X: ChainComplex, n: int, t: int):
    """(cycles Z, boundaries B, H-basis columns) of H^n(X) in internal degree t.

    Vectors are coordinates in the monomial strand basis of X^n at degree t.
    """
    ring = X.ring
    field = ring.field
    src = X.module(n)
    dim = len(src.strand_basis(t))
    if dim == 0:
        return [], [], []
    mat = []
    if X.rank(n + 1) > 0:
        mat = strand_matrix(X.diff(n), src, X.module(n + 1), t)
    if mat:
        Z = linalg.kernel_basis(field, mat)
    else:
        Z = [[field.one if i == j else field.zero for i in range(dim)] for j in range(dim)]
    B = []
    if X.rank(n - 1) > 0:
        prev = strand_matrix(X.diff(n - 1), X.module(n - 1), src, t)
        if prev and prev[0]:
            cols = linalg.transpose(prev)
            # image basis: independent columns of the previous differential
            _, _, pivots = linalg.rref(field, prev)
            B = [cols[j] for j in pivots]
    # H-basis: cycles extending a basis of B
    basis = list(B)
    H = []
    for z in Z:
        trial = basis + [z]
        if linalg.rank(field, linalg.transpose(trial)) > len(basis):
            basis.append(z)
            H.append(z)
    return Z, B, H


def strand_cohomology_dim(X: ChainComplex, n: int, t: int) -> int:
    _, _, H = strand_cohomology_basis(X, n, t)
    return len(H)


def graded_cohomology_dims(X: ChainComplex, box):
    """{(n, t): dim H^n(X)_t} over cohomological degrees of X and t in box."""
    lo_t, hi_t = box
    out = {}
    for n in range(X.lo, X.hi + 1):
        for t in range(lo_t, hi_t + 1):
            d = strand_cohomology_dim(X, n, t)
            if d:
                out[(n, t)] = d
    return out


def _induced_multiplication(X: ChainComplex, r: Poly, n: int, t: int):
    """Matrix of r . : H^n(X)_t -> H^n(X)_{t + deg r} in the chosen bases."""
    ring = X.ring
    field = ring.field
    d = r.homogeneous_degree()
    _, Bs, Hs = strand_cohomology_basis(X, n, t)
    _, Bt, Ht = strand_cohomology_basis(X, n, t + d)
    src = X.module(n)
    src_basis = src.strand_basis(t)
    tgt_basis = src.strand_basis(t + d)
    tgt_index = {b: i for i, b in enumerate(tgt_basis)}
    cols = []
    for h in Hs:
        img = [field.zero] * len(tgt_basis)
        for coord, (j, m) in zip(h, src_basis):
            if not coord:
                continue
            for e, c in r.terms.items():
                key = (j, tuple(a + b for a, b in zip(e, m)))
                row = tgt_index.get(key)
                if row is not None:
                    img[row] = field.add(img[row], field.mul(coord, c))
        # project onto H-coordinates modulo boundaries
        if Ht or Bt:
            mat = linalg.transpose(Ht + Bt)
            sol = linalg.solve(field, mat, img) if mat else None
            if sol is None:
                raise RuntimeError("image of a cycle failed to project to cohomology")
            cols.append(sol[: len(Ht)])
        else:
            if any(img):
                raise RuntimeError("nonzero image in zero cohomology strand")
            cols.append([])
    rows = len(Ht)
    return [[cols[j][i] if cols[j] else field.zero for j in range(len(Hs))] for i in range(rows)]


def koszul_les_check(X: ChainComplex, r: Poly, box) -> bool:
    """Exactness bookkeeping for the long exact sequence of X//r.

    Per cohomological degree n and internal degree t in the box:
    dim H^n(X//r)_t = dim coker(r: H^{n-1}(X)_t -> H^{n-1}(X)_{t+d})
                    + dim ker(r: H^n(X)_t -> H^n(X)_{t+d}).
    """
    field = X.ring.field
    d = r.homogeneous_degree()
    if d is None:
        raise NotHomogeneous(f"{r} not homogeneous")
    Xr = koszul_object(X, r)
    lo_t, hi_t = box
    for n in range(Xr.lo, Xr.hi + 1):
        for t in range(lo_t, hi_t + 1):
            lhs = strand_cohomology_dim(Xr, n, t)
            rhs = 0
            # coker of r on H^{n-1}
            m1 = _induced_multiplication(X, r, n - 1, t)
            tgt_dim = strand_cohomology_dim(X, n - 1, t + d)
            rk = linalg.rank(field, m1) if m1 and m1[0] else 0
            rhs += tgt_dim - rk
            # ker of r on H^n
            m2 = _induced_multiplication(X, r, n, t)
            src_dim = strand_cohomology_dim(X, n, t)
            rk2 = linalg.rank(field, m2) if m2 and m2[0] else 0
            rhs += src_dim - rk2
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# Free resolutions over the polynomial ring
# ---------------------------------------------------------------------------

def free_resolution_complex(columns, ring: Ring, rank: int = 1, shifts=None, max_length: int = 10) -> ChainComplex:
    """Resolve M = coker(columns: R^m -> R^r) by free modules, returned as a
    complex in degrees [-length, 0] with H^0 = M and no other cohomology.

    Columns must be homogeneous for the given generator shifts.
    """
    if shifts is None:
        shifts = (0,) * rank
    shifts = tuple(shifts)
    objects = {0: GradedFreeModule(ring, shifts)}
    diffs = {}
    cur_cols = [c for c in columns if not c.is_zero()]
    cur_shifts = shifts
    level = 0
    while cur_cols and level < max_length:
        level += 1
        col_degs = []
        for c in cur_cols:
            deg = c.degree_wrt(cur_shifts)
            if deg is None:
                raise NotHomogeneous("presentation column is not homogeneous")
            col_degs.append(deg)
        objects[-level] = GradedFreeModule(ring, tuple(col_degs))
        mat = [[cur_cols[j].component(i) for j in range(len(cur_cols))] for i in range(len(cur_shifts))]
        diffs[-level] = mat
        cur_shifts = tuple(col_degs)
        cur_cols = syzygy_basis(cur_cols)
    if cur_cols:
        raise RuntimeError(f"resolution did not terminate within {max_length} steps")
    return ChainComplex(ring, objects, diffs)


def resolve_quotient(I: Ideal, max_length: int = 10) -> ChainComplex:
    """Free resolution of R/I as a complex with H^0 = R/I."""
    cols = [Vec.from_poly(g) for g in I.groebner().elements]
    return free_resolution_complex(cols, I.ring, rank=1, max_length=max_length)
