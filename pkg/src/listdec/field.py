"""Finite field contexts and polynomial arithmetic.

Elements of GF(q) are plain ints in [0, q).  For a prime field the int is
the residue itself.  For GF(p^e) the int encodes the coefficient vector of
the residue polynomial in base p: value = sum(c_i * p**i), lowest degree
first.  All arithmetic goes through a context object (PrimeField or
ExtField); the FieldElem wrapper adds operator syntax and guards against
mixing contexts.

Conventions used throughout the package:

* the zero polynomial has an empty coefficient tuple and degree -inf;
* coefficient lists are stored lowest degree first with no trailing zeros;
* extension moduli are the irreducible monic polynomial whose non-leading
  coefficient vector has the smallest base-p integer encoding (GF(4) gets
  X^2+X+1, GF(9) gets X^2+1), so a context is determined by q alone;
* elements serialize as decimal strings over prime fields and comma-joined
  coefficient vectors (lowest first, exactly e entries) over extensions.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    ArityMismatch,
    ContextMismatch,
    DegreeTooLarge,
    DivisionByZero,
    ParamOutOfRange,
)

NEG_INF = float("-inf")


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending. Trial division; n stays small here."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, e) with p prime and q = p**e, or raise."""
    if q < 2:
        raise ParamOutOfRange(f"field order must be at least 2, got {q}")
    fs = _prime_factors(q)
    if len(fs) != 1:
        raise ParamOutOfRange(f"field order must be a prime power, got {q}")
    p = fs[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


def binom_mod(n: int, k: int, p: int) -> int:
    """Binomial coefficient C(n, k) mod prime p, digit by digit in base p."""
    if k < 0 or k > n:
        return 0
    r = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        r = (r * math.comb(ni, ki)) % p
        n //= p
        k //= p
    return r


# ---------------------------------------------------------------------------
# contexts


class FieldCtx:
    """Arithmetic context for GF(q). Subclasses fix the representation."""

    __slots__ = ("p", "e", "q", "modulus", "_gamma")

    def __init__(self, p: int, e: int, modulus):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._gamma = None

    @property
    def char(self) -> int:
        return self.p

    def canon(self, c: int) -> int:
        raise NotImplementedError

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero field element")
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        r, b = 1, a
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def elem(self, a) -> "FieldElem":
        if isinstance(a, FieldElem):
            if a.ctx is not self:
                raise ContextMismatch("element belongs to a different field")
            return a
        return FieldElem(self, self.canon(a))

    def coeff_vector(self, a: int) -> tuple[int, ...]:
        """Base-p digits of a, always e entries."""
        v = []
        for _ in range(self.e):
            v.append(a % self.p)
            a //= self.p
        return tuple(v)

    def from_coeff_vector(self, cs: Sequence[int]) -> int:
        if len(cs) > self.e:
            raise ParamOutOfRange("coefficient vector longer than extension degree")
        a = 0
        for c in reversed([c % self.p for c in cs]):
            a = a * self.p + c
        return a

    def format_elem(self, a: int) -> str:
        raise NotImplementedError

    def parse_elem(self, s: str) -> int:
        raise NotImplementedError

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        n = self.q - 1
        for r in _prime_factors(n):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def primitive_element(self) -> int:
        """Smallest generator of the multiplicative group, by int encoding."""
        if self._gamma is None:
            n = self.q - 1
            fs = _prime_factors(n)
            for a in range(1, self.q):
                if all(self.pow(a, n // r) != 1 for r in fs):
                    self._gamma = a
                    break
        return self._gamma

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))


class PrimeField(FieldCtx):
    """GF(p) with residue arithmetic."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ParamOutOfRange(f"{p} is not prime")
        super().__init__(p, 1, None)

    def canon(self, c: int) -> int:
        return c % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def format_elem(self, a: int) -> str:
        return str(a)

    def parse_elem(self, s: str) -> int:
        return int(s) % self.p

    def __repr__(self):
        return f"GF({self.p})"


def _pp_divmod(num: list[int], den: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Divmod for coefficient lists over GF(p); den must be nonzero."""
    num = list(num)
    dd = len(den) - 1
    while dd >= 0 and den[dd] == 0:
        dd -= 1
    if dd < 0:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(den[dd], p - 2, p)
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            f = (c * inv_lead) % p
            quot[i - dd] = f
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - f * den[j]) % p
    return quot, [c % p for c in num[:dd]] if dd > 0 else []


def _pp_is_irreducible(m: Sequence[int], p: int) -> bool:
    """Trial-division irreducibility test for a monic poly over GF(p)."""
    e = len(m) - 1
    # degree-1 divisors: root test
    for a in range(p):
        acc = 0
        for c in reversed(m):
            acc = (acc * a + c) % p
        if acc == 0:
            return False
    for d in range(2, e // 2 + 1):
        for v in range(p**d):
            den = []
            x = v
            for _ in range(d):
                den.append(x % p)
                x //= p
            den.append(1)
            _, rem = _pp_divmod(list(m), den, p)
            if not any(rem):
                return False
    return True


class ExtField(FieldCtx):
    """GF(p^e) as residues modulo a fixed irreducible monic polynomial.

    The modulus is chosen deterministically: non-leading coefficients are
    scanned in ascending base-p integer encoding and the first irreducible
    candidate wins.
    """

    def __init__(self, p: int, e: int):
        if not is_prime(p):
            raise ParamOutOfRange(f"{p} is not prime")
        if e < 2:
            raise ParamOutOfRange("extension degree must be at least 2")
        modulus = None
        for v in range(p**e):
            cand = []
            x = v
            for _ in range(e):
                cand.append(x % p)
                x //= p
            cand.append(1)
            if _pp_is_irreducible(cand, p):
                modulus = tuple(cand)
                break
        assert modulus is not None
        super().__init__(p, e, modulus)

    def canon(self, c: int) -> int:
        if not 0 <= c < self.q:
            raise ParamOutOfRange(
                f"extension field element must be an encoding in [0, {self.q})"
            )
        return c

    def add(self, a, b):
        p = self.p
        r = 0
        mult = 1
        for _ in range(self.e):
            r += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return r

    def sub(self, a, b):
        p = self.p
        r = 0
        mult = 1
        for _ in range(self.e):
            r += ((a % p - b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return r

    def neg(self, a):
        return self.sub(0, a)

    def mul(self, a, b):
        p = self.p
        av = self.coeff_vector(a)
        bv = self.coeff_vector(b)
        prod = [0] * (2 * self.e - 1)
        for i, ai in enumerate(av):
            if ai:
                for j, bj in enumerate(bv):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        _, rem = _pp_divmod(prod, self.modulus, p)
        return self.from_coeff_vector(rem)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.q - 2)

    def format_elem(self, a: int) -> str:
        return ",".join(str(c) for c in self.coeff_vector(a))

    def parse_elem(self, s: str) -> int:
        return self.from_coeff_vector([int(t) for t in s.split(",")])

    def __repr__(self):
        return f"GF({self.p}^{self.e})"


@lru_cache(maxsize=None)
def GF(q: int) -> FieldCtx:
    """Context for the field with q elements. Cached, so contexts are shared."""
    p, e = prime_power(q)
    return PrimeField(p) if e == 1 else ExtField(p, e)


class FieldElem:
    """A field element bound to its context. Mixing contexts raises."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx: FieldCtx, val: int):
        self.ctx = ctx
        self.val = val

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ContextMismatch(
                    f"cannot combine elements of {self.ctx!r} and {other.ctx!r}"
                )
            return other.val
        if isinstance(other, int):
            return self.ctx.canon(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.sub(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.sub(v, self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.div(self.val, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.div(v, self.val))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.val))

    def __pow__(self, n: int):
        return FieldElem(self.ctx, self.ctx.pow(self.val, n))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ContextMismatch("comparison across field contexts")
            return self.val == other.val
        if isinstance(other, int):
            return self.val == self.ctx.canon(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.val))

    def __int__(self):
        return self.val

    def __repr__(self):
        return f"{self.ctx.format_elem(self.val)}:{self.ctx!r}"

    def __str__(self):
        return self.ctx.format_elem(self.val)


def find_primitive(ctx: FieldCtx) -> FieldElem:
    """Smallest primitive element of the field, in canonical element order."""
    return FieldElem(ctx, ctx.primitive_element())


# ---------------------------------------------------------------------------
# univariate polynomials


class Poly:
    """Dense univariate polynomial over a field context.

    Coefficients are ints, lowest degree first, normalized (no trailing
    zeros).  The zero polynomial has no coefficients and degree -inf.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[int] = ()):
        cs = [ctx.canon(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(ctx: FieldCtx) -> "Poly":
        return Poly(ctx)

    @staticmethod
    def one(ctx: FieldCtx) -> "Poly":
        return Poly(ctx, (1,))

    @staticmethod
    def x(ctx: FieldCtx) -> "Poly":
        return Poly(ctx, (0, 1))

    @staticmethod
    def constant(ctx: FieldCtx, c: int) -> "Poly":
        return Poly(ctx, (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def leading(self) -> int:
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other: "Poly"):
        if self.ctx != other.ctx:
            raise ContextMismatch("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        add = self.ctx.add
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Poly(self.ctx, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        sub = self.ctx.sub
        return Poly(
            self.ctx, [sub(self.coeff(i), other.coeff(i)) for i in range(n)]
        )

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, [self.ctx.neg(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.ctx)
        mul, add = self.ctx.mul, self.ctx.add
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = add(out[i + j], mul(a, b))
        return Poly(self.ctx, out)

    def scale(self, c: int) -> "Poly":
        c = self.ctx.canon(c)
        return Poly(self.ctx, [self.ctx.mul(c, a) for a in self.coeffs])

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        dd = other.degree
        inv_lead = ctx.inv(other.leading())
        quot = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                f = ctx.mul(c, inv_lead)
                quot[i - dd] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dd + j] = ctx.sub(rem[i - dd + j], ctx.mul(f, b))
        return Poly(ctx, quot), Poly(ctx, rem[:dd])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def eval(self, x: int) -> int:
        acc = 0
        ctx = self.ctx
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def eval_many(self, xs: Sequence[int]) -> list[int]:
        return [self.eval(x) for x in xs]

    def scale_arg(self, c: int) -> "Poly":
        """f(c*X)."""
        ctx = self.ctx
        out, cp = [], 1
        for a in self.coeffs:
            out.append(ctx.mul(a, cp))
            cp = ctx.mul(cp, c)
        return Poly(ctx, out)

    def shift_arg(self, beta: int) -> "Poly":
        """f(X + beta), by Horner over the linear factor."""
        ctx = self.ctx
        out = Poly(ctx)
        lin = Poly(ctx, (beta, 1))
        for c in reversed(self.coeffs):
            out = out * lin + Poly.constant(ctx, c)
        return out

    def derivative(self, order: int = 1) -> "Poly":
        """Iterated formal derivative."""
        if order < 0:
            raise ParamOutOfRange("derivative order must be nonnegative")
        f = self
        for _ in range(order):
            ctx = f.ctx
            f = Poly(
                ctx,
                [ctx.mul(i % ctx.p, c) for i, c in enumerate(f.coeffs)][1:],
            )
        return f

    def hasse(self, j: int) -> "Poly":
        """j-th Hasse derivative: coefficient t maps to C(t, j) * c_t at t - j."""
        if j < 0:
            raise ParamOutOfRange("Hasse derivative order must be nonnegative")
        ctx = self.ctx
        out = []
        for t in range(j, len(self.coeffs)):
            out.append(ctx.mul(binom_mod(t, j, ctx.p), self.coeffs[t]))
        return Poly(ctx, out)

    def pow_mod(self, n: int, modulus: "Poly") -> "Poly":
        self._check(modulus)
        r = Poly.one(self.ctx)
        b = self % modulus
        while n:
            if n & 1:
                r = (r * b) % modulus
            b = (b * b) % modulus
            n >>= 1
        return r

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        return f"Poly({self.ctx!r}, {list(self.coeffs)})"


def formal_derivative(f: Poly, order: int = 1) -> Poly:
    return f.derivative(order)


def poly_to_text(f: Poly) -> str:
    if f.is_zero():
        return f.ctx.format_elem(0)
    return " ".join(f.ctx.format_elem(c) for c in f.coeffs)


def poly_from_text(ctx: FieldCtx, s: str) -> Poly:
    parts = s.split()
    return Poly(ctx, [ctx.parse_elem(t) for t in parts])


# ---------------------------------------------------------------------------
# multivariate polynomials


class MultiPoly:
    """Sparse polynomial in a fixed number of variables over a field context.

    Terms map exponent tuples to nonzero coefficients.
    """

    __slots__ = ("ctx", "arity", "terms")

    def __init__(self, ctx: FieldCtx, arity: int, terms=None):
        if arity < 1:
            raise ArityMismatch("need at least one variable")
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != arity:
                raise ArityMismatch(
                    f"exponent tuple {exps} does not match arity {arity}"
                )
            if any(e < 0 for e in exps):
                raise ParamOutOfRange("negative exponent")
            c = ctx.canon(c)
            if c:
                clean[tuple(exps)] = c
        self.ctx = ctx
        self.arity = arity
        self.terms = clean

    @staticmethod
    def zero(ctx: FieldCtx, arity: int) -> "MultiPoly":
        return MultiPoly(ctx, arity)

    @staticmethod
    def constant(ctx: FieldCtx, arity: int, c: int) -> "MultiPoly":
        return MultiPoly(ctx, arity, {(0,) * arity: c})

    @staticmethod
    def monomial(ctx: FieldCtx, arity: int, exps: Sequence[int], c: int = 1) -> "MultiPoly":
        return MultiPoly(ctx, arity, {tuple(exps): c})

    @staticmethod
    def variable(ctx: FieldCtx, arity: int, idx: int) -> "MultiPoly":
        exps = [0] * arity
        exps[idx] = 1
        return MultiPoly(ctx, arity, {tuple(exps): 1})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, idx: int):
        if not self.terms:
            return NEG_INF
        return max(e[idx] for e in self.terms)

    def _check(self, other: "MultiPoly"):
        if self.ctx != other.ctx:
            raise ContextMismatch("polynomials over different fields")
        if self.arity != other.arity:
            raise ArityMismatch("polynomials in different numbers of variables")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        add = self.ctx.add
        for e, c in other.terms.items():
            out[e] = add(out.get(e, 0), c)
        return MultiPoly(self.ctx, self.arity, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        sub = self.ctx.sub
        for e, c in other.terms.items():
            out[e] = sub(out.get(e, 0), c)
        return MultiPoly(self.ctx, self.arity, out)

    def __neg__(self) -> "MultiPoly":
        neg = self.ctx.neg
        return MultiPoly(
            self.ctx, self.arity, {e: neg(c) for e, c in self.terms.items()}
        )

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out: dict[tuple[int, ...], int] = {}
        mul, add = self.ctx.mul, self.ctx.add
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = add(out.get(e, 0), mul(c1, c2))
        return MultiPoly(self.ctx, self.arity, out)

    def scale(self, c: int) -> "MultiPoly":
        c = self.ctx.canon(c)
        mul = self.ctx.mul
        return MultiPoly(
            self.ctx, self.arity, {e: mul(c, v) for e, v in self.terms.items()}
        )

    def eval(self, point: Sequence[int]) -> int:
        if len(point) != self.arity:
            raise ArityMismatch("evaluation point has wrong length")
        ctx = self.ctx
        acc = 0
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = ctx.mul(v, ctx.pow(x, e))
            acc = ctx.add(acc, v)
        return acc

    def hasse_derivative(self, order: Sequence[int]) -> "MultiPoly":
        """Hasse derivative for an exponent vector: coefficient of Z^order in P(X+Z)."""
        if len(order) != self.arity:
            raise ArityMismatch("derivative order vector has wrong length")
        if any(o < 0 for o in order):
            raise ParamOutOfRange("negative derivative order")
        ctx = self.ctx
        out: dict[tuple[int, ...], int] = {}
        for exps, c in self.terms.items():
            if all(e >= o for e, o in zip(exps, order)):
                b = c
                for e, o in zip(exps, order):
                    b = ctx.mul(b, binom_mod(e, o, ctx.p))
                if b:
                    ne = tuple(e - o for e, o in zip(exps, order))
                    out[ne] = ctx.add(out.get(ne, 0), b)
        return MultiPoly(ctx, self.arity, out)

    def compose_univariate(self, polys: Sequence[Poly]) -> Poly:
        """Substitute a univariate polynomial for every variable."""
        if len(polys) != self.arity:
            raise ArityMismatch("need one substitution per variable")
        ctx = self.ctx
        acc = Poly.zero(ctx)
        for exps, c in self.terms.items():
            term = Poly.constant(ctx, c)
            for f, e in zip(polys, exps):
                for _ in range(e):
                    term = term * f
            acc = acc + term
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ctx == other.ctx
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, self.arity, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"MultiPoly({self.ctx!r}, {self.arity}, {self.terms})"


def hasse_derivative(P: MultiPoly, order: Sequence[int]) -> MultiPoly:
    return P.hasse_derivative(order)


def multiplicity(P: MultiPoly, a: Sequence[int]):
    """Largest M such that every Hasse derivative of weight < M vanishes at a.

    Returns math.inf for the zero polynomial.
    """
    if P.is_zero():
        return math.inf
    if len(a) != P.arity:
        raise ArityMismatch("point has wrong length")
    deg = int(P.total_degree)
    for w in range(deg + 1):
        for order in weight_exponents(P.arity, w):
            if P.hasse_derivative(order).eval(a) != 0:
                return w
    # some weight-deg derivative of a nonzero polynomial is a nonzero constant
    raise AssertionError("unreachable: multiplicity exceeds total degree")


def weight_exponents(arity: int, w: int) -> Iterator[tuple[int, ...]]:
    """All exponent tuples of the given total weight, lexicographically
    with the first variable largest first."""
    if arity == 1:
        yield (w,)
        return
    for first in range(w, -1, -1):
        for rest in weight_exponents(arity - 1, w - first):
            yield (first,) + rest


def frobenius_shift_check(f: Poly, ctx: FieldCtx) -> bool:
    """Check f(gamma*X) = f(X)^q modulo X^(q-1) - gamma for the canonical
    primitive gamma. Requires deg f < q - 1."""
    if f.ctx != ctx:
        raise ContextMismatch("polynomial not over the given field")
    if f.degree >= ctx.q - 1:
        raise DegreeTooLarge("degree must be below q - 1")
    gamma = ctx.primitive_element()
    mod_coeffs = [ctx.neg(gamma)] + [0] * (ctx.q - 2) + [1]
    modulus = Poly(ctx, mod_coeffs)
    lhs = f.scale_arg(gamma)
    rhs = f.pow_mod(ctx.q, modulus)
    return lhs == rhs
