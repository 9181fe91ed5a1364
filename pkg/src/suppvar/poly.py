"""Multivariate polynomials over an exact field, with weighted gradings and
monomial orders.

Monomials are exponent tuples.  A polynomial is an immutable mapping from
exponent tuples to nonzero canonical scalars.  The string grammar used for
serialization is ``term + term + ...`` with ``term = coeff*x1^2*x2`` (the
coefficient may be omitted when 1, exponent omitted when 1); it parses and
prints bijectively for canonical inputs.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .linalg import Field


class MixedRings(ValueError):
    pass


class Ring:
    """A graded polynomial ring k[x_1..x_n] with per-variable positive weights.

    In multigraded mode the grading group is Z^n and the degree of a monomial
    is its exponent tuple; otherwise degrees are weighted total degrees.
    """

    __slots__ = ("field", "names", "weights", "multigraded")

    def __init__(self, field: Field, names, weights=None, multigraded: bool = False):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names) or any(w < 1 for w in weights):
            raise ValueError("need one positive weight per variable")
        self.field = field
        self.names = names
        self.weights = weights
        self.multigraded = bool(multigraded)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.field == other.field
            and self.names == other.names
            and self.weights == other.weights
            and self.multigraded == other.multigraded
        )

    def __hash__(self):
        return hash((self.field, self.names, self.weights, self.multigraded))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    # -- degrees -----------------------------------------------------------
    def degree(self, exp) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def multidegree(self, exp):
        return tuple(exp)

    # -- element constructors ---------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field.of(c)
        if not c:
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "Poly":
        exp = [0] * self.nvars
        exp[i] = 1
        return Poly(self, {tuple(exp): self.field.one})

    def monomial(self, exp, coeff=1) -> "Poly":
        c = self.field.of(coeff)
        if not c:
            return self.zero()
        return Poly(self, {tuple(int(e) for e in exp): c})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def extend(self, extra_names, extra_weights=None) -> "Ring":
        """Ring with auxiliary variables appended after all existing ones."""
        if extra_weights is None:
            extra_weights = (1,) * len(tuple(extra_names))
        return Ring(
            self.field,
            self.names + tuple(extra_names),
            self.weights + tuple(extra_weights),
            self.multigraded,
        )

    def monomials_of_degree(self, d: int):
        """All exponent tuples of weighted degree exactly d (single grading)."""
        out = []

        def rec(i, rem, acc):
            if i == self.nvars:
                if rem == 0:
                    out.append(tuple(acc))
                return
            w = self.weights[i]
            for e in range(rem // w + 1):
                rec(i + 1, rem - w * e, acc + [e])

        if d >= 0:
            rec(0, d, [])
        return out


def exp_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_div(a, b):
    """a / b as exponent tuples, or None when not divisible."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


class Poly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = dict(terms)
        self._hash = None

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        degs = {self.ring.degree(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        """Weighted degree when homogeneous nonzero, else None."""
        degs = {self.ring.degree(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def total_degree(self):
        if not self.terms:
            return None
        return max(self.ring.degree(e) for e in self.terms)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise MixedRings(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        f = self.ring.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(terms.get(e, f.zero), c)
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms)

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.const(other) - self

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ring.field.of(other)
            if not c:
                return self.ring.zero()
            f = self.ring.field
            return Poly(self.ring, {e: f.mul(c, v) for e, v in self.terms.items()})
        self._check(other)
        f = self.ring.field
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_mul(e1, e2)
                s = f.add(terms.get(e, f.zero), f.mul(c1, c2))
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        return self * c

    def mul_monomial(self, exp, coeff=1):
        f = self.ring.field
        c = f.of(coeff)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {exp_mul(e, exp): f.mul(c, v) for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- projections -------------------------------------------------------
    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def constant_term(self):
        return self.coefficient((0,) * self.ring.nvars)

    def support_vars(self):
        """Indices of variables occurring in some term."""
        out = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    out.add(i)
        return out

    def map_ring(self, new_ring: Ring, var_map):
        """Reinterpret in new_ring; var_map[i] is the target index of x_i."""
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * new_ring.nvars
            for i, x in enumerate(e):
                if x:
                    ne[var_map[i]] += x
            terms[tuple(ne)] = new_ring.field.of(c)
        return Poly(new_ring, {e: c for e, c in terms.items() if c})

    def substitute_vars(self, new_ring: Ring, images):
        """Ring map sending x_i to images[i] (polynomials in new_ring)."""
        out = new_ring.zero()
        for e, c in self.terms.items():
            term = new_ring.const(c)
            for i, x in enumerate(e):
                if x:
                    term = term * images[i] ** x
            out = out + term
        return out

    # -- printing ----------------------------------------------------------
    def __repr__(self):
        return poly_to_string(self)

    def __str__(self):
        return poly_to_string(self)


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------

class MonomialOrder:
    """Total, multiplicative well-orders on monomials.

    Keys compare so that larger key == larger monomial.  ``elimination(k)``
    makes the *last* k variables heaviest (auxiliary variables are always
    appended after the ring variables).
    """

    def __init__(self, kind: str, block_size: int = 0):
        if kind not in ("lex", "grevlex", "elimination"):
            raise ValueError(f"unknown order {kind!r}")
        self.kind = kind
        self.block_size = block_size

    def __repr__(self):
        if self.kind == "elimination":
            return f"elimination({self.block_size})"
        return self.kind

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block_size == other.block_size
        )

    def __hash__(self):
        return hash((self.kind, self.block_size))

    def key(self, exp):
        if self.kind == "lex":
            return tuple(exp)
        if self.kind == "grevlex":
            return _grevlex_key(exp)
        # elimination: last `block_size` variables dominate, grevlex within blocks
        k = self.block_size
        main, aux = exp[: len(exp) - k], exp[len(exp) - k:]
        return (_grevlex_key(aux), _grevlex_key(main))


def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(num_aux: int) -> MonomialOrder:
    return MonomialOrder("elimination", num_aux)


def leading_term(p: Poly, order: MonomialOrder):
    """(exponent, coefficient) of the leading term; None for zero."""
    if not p.terms:
        return None
    e = max(p.terms, key=order.key)
    return e, p.terms[e]


def sorted_terms(p: Poly, order: MonomialOrder):
    return sorted(p.terms.items(), key=lambda ec: order.key(ec[0]), reverse=True)


# ---------------------------------------------------------------------------
# String grammar
# ---------------------------------------------------------------------------

def _coeff_str(c) -> str:
    return str(c)


def poly_to_string(p: Poly, order: MonomialOrder = GREVLEX) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted_terms(p, order):
        factors = []
        for name, x in zip(p.ring.names, e):
            if x == 1:
                factors.append(name)
            elif x > 1:
                factors.append(f"{name}^{x}")
        if not factors:
            parts.append(_coeff_str(c))
        elif c == p.ring.field.one:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([_coeff_str(c)] + factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-|\(|\))")


class ParseError(ValueError):
    pass


def poly_from_string(ring: Ring, s: str) -> Poly:
    """Parse the ``coeff*x^2*y + ...`` grammar (plus unary minus and ints)."""
    tokens = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"bad token at {s[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial string")

    name_index = {n: i for i, n in enumerate(ring.names)}
    result = ring.zero()
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign")
        coeff = Fraction(sign)
        exp = [0] * ring.nvars
        expect_factor = True
        while i < n and expect_factor:
            tok = tokens[i]
            if re.fullmatch(r"\d+/\d+|\d+", tok):
                coeff *= Fraction(tok)
                i += 1
            elif tok in name_index:
                vi = name_index[tok]
                i += 1
                power = 1
                if i < n and tokens[i] == "^":
                    i += 1
                    if i >= n or not tokens[i].isdigit():
                        raise ParseError("expected exponent after '^'")
                    power = int(tokens[i])
                    i += 1
                exp[vi] += power
            else:
                raise ParseError(f"unexpected token {tok!r}")
            if i < n and tokens[i] == "*":
                i += 1
                expect_factor = True
            else:
                expect_factor = False
        if ring.field.char == 0:
            c = coeff
        else:
            if coeff.denominator != 1:
                c = ring.field.div(ring.field.of(coeff.numerator), ring.field.of(coeff.denominator))
            else:
                c = ring.field.of(coeff.numerator)
        result = result + ring.monomial(exp, c)
    return result
