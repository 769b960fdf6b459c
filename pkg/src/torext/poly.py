"""Sparse multivariate polynomials over F_p or Q with weighted gradings.

Monomials are packed into Python integers, 16 bits per variable with the top
bit of every field kept clear as a guard.  That makes monomial multiplication
an integer addition and divisibility a single subtraction plus a mask test.
Module terms reuse the same packing with the free-module position stored
above the exponent fields, so ``term + monomial`` multiplies a module term.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

BITS = 16
FIELD_MASK = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1
CODE_BASE = 1 << (BITS - 1)


class StructuralError(ValueError):
    """Inputs live in incompatible ambient rings or have the wrong shape."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


class Field:
    """Coefficient field: F_p for an odd prime p, or Q when ``char == 0``."""

    __slots__ = ("char",)

    def __init__(self, char: int):
        if char != 0 and not is_prime(char):
            raise StructuralError(f"characteristic {char} is not prime")
        self.char = char

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return f"Field({self.char})"

    def __call__(self, c) -> int | Fraction:
        if self.char:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, self.char) % self.char
            return int(c) % self.char
        return Fraction(c)

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.char:
            return pow(c, -1, self.char)
        return 1 / Fraction(c)

    def text(self, c) -> str:
        return str(c)


class MonomialOrder:
    """A monomial order, turned into integer sort keys (bigger key = bigger monomial).

    ``kind`` is one of ``"grevlex"``, ``"wgrevlex"``, ``"lex"``, ``"elim"``.
    For ``"elim"`` the first ``block`` variables are eliminated (grevlex inside
    each block).
    """

    KINDS = ("grevlex", "wgrevlex", "lex", "elim")

    def __init__(self, kind: str = "grevlex", weights: Sequence[int] | None = None, block: int | None = None):
        if kind not in self.KINDS:
            raise StructuralError(f"unknown monomial order {kind!r}")
        if kind == "elim" and not block:
            raise StructuralError("elimination order needs a block size")
        self.kind = kind
        self.weights = tuple(weights) if weights is not None else None
        self.block = block

    @property
    def graded(self) -> bool:
        return self.kind in ("grevlex", "wgrevlex")

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.weights == other.weights and self.block == other.block)

    def __hash__(self):
        return hash((self.kind, self.weights, self.block))

    def __repr__(self):
        extra = f", weights={self.weights}" if self.weights else ""
        extra += f", block={self.block}" if self.block else ""
        return f"MonomialOrder({self.kind!r}{extra})"

    def key(self, exps: Sequence[int]) -> int:
        n = len(exps)
        if self.kind in ("grevlex", "wgrevlex"):
            w = self.weights if self.kind == "wgrevlex" else None
            return _grevlex_key(tuple(exps), w)
        if self.kind == "lex":
            k = 0
            for e in exps:
                k = k * CODE_BASE + e
            return k
        b = self.block
        if b > n:
            raise StructuralError("elimination block larger than variable count")
        hi = _grevlex_key(tuple(exps[:b]), None)
        lo = _grevlex_key(tuple(exps[b:]), None)
        return (hi << (BITS * (n - b + 4))) + lo

    def degree_unit(self, n: int) -> int:
        """Multiplier of the degree inside a graded key."""
        return CODE_BASE ** n


@lru_cache(maxsize=None)
def _grevlex_key(exps: tuple, weights: tuple | None) -> int:
    deg = sum(exps) if weights is None else sum(w * e for w, e in zip(weights, exps))
    code = 0
    for e in reversed(exps):
        code = code * CODE_BASE + (CODE_BASE - 1 - e)
    # reversed loop puts the last variable in the most significant slot
    return deg * CODE_BASE ** len(exps) + code


def monomial_compare(a: Sequence[int], b: Sequence[int], order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as ``a`` is smaller than, equal to, or bigger than ``b``."""
    if len(a) != len(b):
        raise StructuralError("monomials of different lengths")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


class PolyRing:
    """The ambient polynomial ring k[x_1..x_n] with a positive weight vector."""

    def __init__(self, names: Sequence[str], weights: Sequence[int] | None = None, char: int = 101):
        names = tuple(names)
        if not names:
            raise StructuralError("need at least one variable")
        if len(set(names)) != len(names):
            raise StructuralError("duplicate variable names")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise StructuralError(f"bad variable name {nm!r}")
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        if len(weights) != len(names) or any(int(w) < 1 for w in weights):
            raise StructuralError("weights must be positive, one per variable")
        self.names = names
        self.n = len(names)
        self.weights = tuple(int(w) for w in weights)
        self.field = Field(char)
        self.char = char
        self.pos_shift = BITS * self.n
        self.mon_mask = (1 << self.pos_shift) - 1
        self.guard = sum(1 << (BITS * i + BITS - 1) for i in range(self.n))
        self.pos_unit = 1 << self.pos_shift
        self.order = MonomialOrder("wgrevlex", self.weights) if any(w != 1 for w in self.weights) \
            else MonomialOrder("grevlex")
        self._unpack: dict[int, tuple] = {}
        self._wdeg: dict[int, int] = {}
        self._var_units = tuple(1 << (BITS * i) for i in range(self.n))

    # identity -----------------------------------------------------------
    def _sig(self):
        return (self.names, self.weights, self.char)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        return f"PolyRing({list(self.names)}, weights={list(self.weights)}, char={self.char})"

    # packing ------------------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise StructuralError("exponent vector has wrong length")
        m = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MAX_EXP:
                raise StructuralError(f"exponent {e} out of range")
            m |= e << (BITS * i)
        return m

    def unpack(self, m: int) -> tuple:
        t = self._unpack.get(m)
        if t is None:
            mm = m & self.mon_mask
            t = tuple((mm >> (BITS * i)) & FIELD_MASK for i in range(self.n))
            self._unpack[m] = t
        return t

    def wdeg(self, m: int) -> int:
        """Weighted degree of the monomial part of a packed term."""
        d = self._wdeg.get(m)
        if d is None:
            d = sum(w * e for w, e in zip(self.weights, self.unpack(m & self.mon_mask)))
            self._wdeg[m] = d
        return d

    def divides(self, a: int, b: int) -> bool:
        """Monomial divisibility on packed monomials (positions ignored)."""
        d = (b & self.mon_mask) - (a & self.mon_mask)
        return d >= 0 and not (d & self.guard)

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([max(x, y) for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        return all(x == 0 or y == 0 for x, y in zip(self.unpack(a), self.unpack(b)))

    def pos(self, t: int) -> int:
        return t >> self.pos_shift

    # construction -------------------------------------------------------
    def gens(self) -> list["Polynomial"]:
        return [Polynomial(self, {u: 1}) for u in self._var_units]

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.names.index(name)
        except ValueError:
            raise StructuralError(f"no variable named {name!r}") from None
        return Polynomial(self, {self._var_units[i]: 1})

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {0: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        return Polynomial(self, {self.pack(exps): self.field(c)})

    def from_terms(self, terms: Mapping[tuple, object]) -> "Polynomial":
        d = {}
        for e, c in terms.items():
            c = self.field(c)
            if c:
                d[self.pack(e)] = c
        return Polynomial(self, d)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def monomials_of_degree(self, deg: int) -> list[int]:
        """All packed monomials of the given weighted degree, sorted."""
        return list(_monomials_of_degree(self.weights, deg, self.n))

    def extend(self, name: str, weight: int = 1, prepend: bool = False) -> "PolyRing":
        names = (name,) + self.names if prepend else self.names + (name,)
        weights = (weight,) + self.weights if prepend else self.weights + (weight,)
        return PolyRing(names, weights, self.char)


@lru_cache(maxsize=None)
def _monomials_of_degree(weights: tuple, deg: int, n: int) -> tuple:
    out = []

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(acc)
            return
        w = weights[i]
        for e in range(left // w + 1):
            rec(i + 1, left - e * w, acc | (e << (BITS * i)))

    if deg >= 0:
        rec(0, deg, 0)
    return tuple(sorted(out))


class Polynomial:
    """Immutable sparse polynomial: a map packed monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # arithmetic ---------------------------------------------------------
    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructuralError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add(self.terms, other.terms, 1, self.ring.char))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add(self.terms, other.terms, -1, self.ring.char))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Polynomial(self.ring, _add({}, self.terms, -1, self.ring.char))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, poly_mul(self.terms, other.terms, self.ring.char))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    # inspection ---------------------------------------------------------
    def leading_term(self, order: MonomialOrder | None = None) -> tuple[tuple, object]:
        if not self.terms:
            raise StructuralError("zero polynomial has no leading term")
        order = order or self.ring.order
        m = max(self.terms, key=lambda t: order.key(self.ring.unpack(t)))
        return self.ring.unpack(m), self.terms[m]

    def total_weighted_degree(self) -> int:
        return max(self.ring.wdeg(m) for m in self.terms)

    def derivative(self, i: int) -> "Polynomial":
        ring = self.ring
        unit = ring._var_units[i]
        out = {}
        for m, c in self.terms.items():
            e = ring.unpack(m)[i]
            if e:
                c2 = ring.field(c * e)
                if c2:
                    out[m - unit] = c2
        return Polynomial(ring, out)

    def __str__(self):
        return poly_text(self.ring, self.terms)

    def __repr__(self):
        return f"Polynomial({self})"


def _add(a: dict, b: dict, sign: int, p: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if p:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = m1 + m2
            v = out.get(m, 0) + c1 * c2
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def homogeneous_degree(f: Polynomial, weights: Sequence[int] | None = None):
    """Weighted degree shared by every term of ``f``.

    Returns ``None`` when the polynomial is not homogeneous and the string
    ``"any"`` for the zero polynomial, which is homogeneous of every degree.
    """
    ring = f.ring
    if not f.terms:
        return "any"
    w = tuple(weights) if weights is not None else ring.weights
    degs = {sum(a * b for a, b in zip(w, ring.unpack(m))) for m in f.terms}
    return degs.pop() if len(degs) == 1 else None


def mon_text(ring: PolyRing, m: int) -> str:
    parts = []
    for name, e in zip(ring.names, ring.unpack(m & ring.mon_mask)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


_GREVLEX = MonomialOrder("grevlex")


def poly_text(ring: PolyRing, terms: Mapping[int, object]) -> str:
    """Canonical text: terms descending by (unweighted) grevlex."""
    if not terms:
        return "0"
    ms = sorted(terms, key=lambda m: _GREVLEX.key(ring.unpack(m)), reverse=True)
    out = []
    for m in ms:
        c = terms[m]
        neg = False
        if not ring.char and c < 0:
            neg, c = True, -c
        mt = mon_text(ring, m)
        if not mt:
            body = str(c)
        elif c == 1:
            body = mt
        else:
            body = f"{c}*{mt}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if not mt:
                break
            if mt.group(1):
                self.toks.append(("num", int(mt.group(1)), mt.start(1)))
            elif mt.group(2):
                self.toks.append(("name", mt.group(2), mt.start(2)))
            else:
                self.toks.append(("op", mt.group(3), mt.start(3)))
            pos = mt.end()
        self.i = 0

    def error(self, msg):
        where = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise SyntaxError(f"{msg} at column {where + 1} in {self.text!r}")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.toks:
            self.error("empty polynomial")
        f = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.factor()
        while True:
            k, v, _ = self.peek()
            if k == "op" and v in "*/":
                self.take()
                g = self.factor()
                if v == "/":
                    if not g.is_constant() or g.is_zero():
                        self.error("can only divide by a nonzero constant")
                    f = f * self.ring.const(self.ring.field.inv(g.terms[0]))
                else:
                    f = f * g
            else:
                return f

    def factor(self):
        k, v, _ = self.peek()
        if k == "op" and v == "-":
            self.take()
            return -self.factor()
        if k == "op" and v == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            k2, v2, _ = self.take()
            if k2 != "num":
                self.i -= 1
                self.error("expected exponent")
            base = base ** v2
        return base

    def atom(self):
        k, v, _ = self.take()
        if k == "num":
            return self.ring.const(v)
        if k == "name":
            if v not in self.ring.names:
                self.i -= 1
                self.error(f"unknown variable {v!r}")
            return self.ring.var(v)
        if k == "op" and v == "(":
            f = self.expr()
            if self.take()[:2] != ("op", ")"):
                self.i -= 1
                self.error("expected ')'")
            return f
        self.i -= 1
        self.error("expected a number, variable or '('")


def parse_many(ring: PolyRing, texts: Iterable[str]) -> list[Polynomial]:
    return [ring.parse(t) for t in texts]
