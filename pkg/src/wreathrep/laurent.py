"""Sparse Laurent polynomials over GF(p) in d commuting variables.

Elements of ``GF(p)[x1^{+-1}, ..., xd^{+-1}]`` are stored as term maps
``{exponent tuple: residue}`` holding nonzero residues only, so equality of
polynomials is equality of term maps. The same objects serve as elements of
the base group A of ``C_p wr Z^d`` written additively.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from . import kernels

__all__ = [
    "ContextMismatch",
    "NotInIdealError",
    "LaurentRing",
    "LaurentPoly",
    "poly_add",
    "poly_mul",
    "evaluate",
    "divide_by_linear",
    "geometric_sum",
    "substitute_monomials",
    "poly_gcd",
    "parse_poly",
]


class ContextMismatch(ValueError):
    """Operands live in different rings (different p or d)."""


class NotInIdealError(ValueError):
    """An operation defined on an ideal got an element outside it."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class LaurentRing:
    """The ring GF(p)[x1^{+-1}, ..., xd^{+-1}]."""

    p: int
    d: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.d < 1:
            raise ValueError(f"rank d must be positive, got {self.d}")

    @property
    def zero_exp(self) -> tuple:
        return (0,) * self.d

    def unit(self, i: int) -> tuple:
        """Exponent vector of the variable x_{i+1} (0-based ``i``)."""
        e = [0] * self.d
        e[i] = 1
        return tuple(e)

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, c: int) -> "LaurentPoly":
        return self.monomial(self.zero_exp, c)

    def monomial(self, exps: Sequence[int], coef: int = 1) -> "LaurentPoly":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.d:
            raise ValueError(f"exponent vector {exps} has wrong length for d={self.d}")
        c = coef % self.p
        return LaurentPoly(self, {exps: c} if c else {})

    def var(self, i: int) -> "LaurentPoly":
        """The variable x_i, 1-based as in the text notation."""
        if not 1 <= i <= self.d:
            raise ValueError(f"no variable x{i} in rank {self.d}")
        return self.monomial(self.unit(i - 1))

    def from_terms(self, terms: dict) -> "LaurentPoly":
        p = self.p
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.d:
                raise ValueError(f"exponent vector {e} has wrong length for d={self.d}")
            c = (clean.get(e, 0) + c) % p
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        return LaurentPoly(self, clean)

    def parse(self, text: str) -> "LaurentPoly":
        return parse_poly(self, text)


class LaurentPoly:
    """Immutable sparse Laurent polynomial; build through a :class:`LaurentRing`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: LaurentRing, terms: dict):
        # terms must already be canonical; public construction goes through the ring
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure -------------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if self.ring != other.ring:
            raise ContextMismatch(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self) -> list:
        """Terms in the canonical order (descending lexicographic exponents)."""
        return sorted(self.terms.items(), reverse=True)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.ring, kernels.add_terms(self.terms, other.terms, self.ring.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.ring, kernels.sub_terms(self.terms, other.terms, self.ring.p))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return LaurentPoly(self.ring, kernels.scale_terms(self.terms, -1, self.ring.p))

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.ring, kernels.scale_terms(self.terms, other, self.ring.p))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        return LaurentPoly(self.ring, kernels.mul_terms(self.terms, other.terms, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.monomial_inverse() ** (-k)
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monomial_inverse(self) -> "LaurentPoly":
        """Inverse of a unit monomial c*X^e; other elements are not units."""
        if not self.is_monomial():
            raise ValueError(f"{self} is not a unit monomial")
        (e, c), = self.terms.items()
        p = self.ring.p
        return LaurentPoly(self.ring, {tuple(-x for x in e): pow(c, -1, p)})

    def shift(self, v: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial X^v."""
        v = tuple(v)
        if not any(v):
            return self
        return LaurentPoly(self.ring, kernels.shift_terms(self.terms, v))

    def substitute(self, images: Sequence[Sequence[int]], ring: LaurentRing | None = None) -> "LaurentPoly":
        """Ring map x_i -> X^{images[i]}; exponent rows multiply the image matrix."""
        ring = ring or self.ring
        images = tuple(tuple(int(x) for x in row) for row in images)
        if len(images) != self.ring.d or any(len(r) != ring.d for r in images):
            raise ValueError("image matrix has the wrong shape")
        return LaurentPoly(ring, kernels.subst_terms(self.terms, images, self.ring.p))

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        point = tuple(c % p for c in point)
        if len(point) != self.ring.d:
            raise ValueError(f"point {point} has wrong length for d={self.ring.d}")
        if any(c == 0 for c in point):
            raise ValueError(f"cannot evaluate a Laurent polynomial at {point}: zero coordinate")
        total = 0
        for e, c in self.terms.items():
            term = c
            for base, k in zip(point, e):
                term = term * pow(base, k, p) % p
            total += term
        return total % p

    def augmentation(self) -> int:
        """Sum of coefficients, i.e. the value at (1, ..., 1)."""
        return sum(self.terms.values()) % self.ring.p

    def min_exponents(self) -> tuple:
        if not self.terms:
            return self.ring.zero_exp
        return tuple(min(col) for col in zip(*self.terms))

    # -- text --------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly(GF({self.ring.p}), d={self.ring.d}: {format_poly(self)})"


# ---------------------------------------------------------------------------
# free-function forms


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def evaluate(f: LaurentPoly, point: Sequence[int]) -> int:
    return f.evaluate(point)


def substitute_monomials(f: LaurentPoly, images: Sequence[Sequence[int]]) -> LaurentPoly:
    return f.substitute(images)


def geometric_sum(ring: LaurentRing, n: int) -> LaurentPoly:
    """1 + x + ... + x^{n-1} in rank one."""
    if ring.d != 1:
        raise ValueError("geometric_sum is defined for d = 1")
    if n < 1:
        raise ValueError(f"geometric_sum needs n >= 1, got {n}")
    return ring.from_terms({(k,): 1 for k in range(n)})


def _dense(f: LaurentPoly) -> tuple[list[int], int]:
    """Coefficient list (low degree first) of f * x^{-m} and the shift m."""
    if not f.terms:
        return [], 0
    m = min(e[0] for e in f.terms)
    top = max(e[0] for e in f.terms)
    coeffs = [0] * (top - m + 1)
    for (k,), c in f.terms.items():
        coeffs[k - m] = c
    return coeffs, m


def _from_dense(ring: LaurentRing, coeffs: Iterable[int], shift: int = 0) -> LaurentPoly:
    return ring.from_terms({(k + shift,): c for k, c in enumerate(coeffs) if c % ring.p})


def divide_by_linear(f: LaurentPoly, c: int) -> LaurentPoly:
    """Return r with r * (x - c) == f; raises if f is not in the ideal <x - c>."""
    ring = f.ring
    p = ring.p
    if ring.d != 1:
        raise ValueError("divide_by_linear is defined for d = 1")
    c %= p
    if c == 0:
        raise ValueError("x is a unit; divide by x - c needs c != 0")
    if not f.terms:
        return f
    a, m = _dense(f)
    deg = len(a) - 1
    if deg == 0:
        raise NotInIdealError(f"{f} is not divisible by x - {c}")
    # synthetic division, high degree first
    b = [0] * deg
    b[deg - 1] = a[deg]
    for k in range(deg - 1, 0, -1):
        b[k - 1] = (a[k] + c * b[k]) % p
    if (a[0] + c * b[0]) % p:
        raise NotInIdealError(f"{f} is not divisible by x - {c}")
    return _from_dense(ring, b, m)


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod_dense(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    b = _strip(list(b))
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        coef = a[k + len(b) - 1] * inv % p
        q[k] = coef
        if coef:
            for i, bi in enumerate(b):
                a[k + i] = (a[k + i] - coef * bi) % p
    return q, _strip(a[: len(b) - 1])


def normalize_principal(f: LaurentPoly) -> LaurentPoly:
    """Unit-normal generator of the principal ideal (f) in rank one."""
    if not f.terms:
        return f
    a, _ = _dense(f)
    inv = pow(a[-1], -1, f.ring.p)
    return _from_dense(f.ring, [x * inv for x in a])


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Unit-normal gcd in rank one (monic, lowest exponent zero)."""
    f._check(g)
    if f.ring.d != 1:
        raise ValueError("poly_gcd is defined for d = 1")
    p = f.ring.p
    a, _ = _dense(f)
    b, _ = _dense(g)
    while b:
        _, r = _divmod_dense(a, b, p)
        a, b = b, r
    if not a:
        return f.ring.zero()
    return normalize_principal(_from_dense(f.ring, a))


def divides(g: LaurentPoly, f: LaurentPoly) -> bool:
    """Whether g | f in the rank-one Laurent ring."""
    if g.ring.d != 1:
        raise ValueError("divides is defined for d = 1")
    if not f.terms:
        return True
    if not g.terms:
        return False
    a, _ = _dense(f)
    b, _ = _dense(g)
    return not _divmod_dense(a, b, f.ring.p)[1]


def poly_sum(polys: Iterable[LaurentPoly], ring: LaurentRing) -> LaurentPoly:
    return reduce(lambda x, y: x + y, polys, ring.zero())


# ---------------------------------------------------------------------------
# text form


def _format_monomial(e: tuple, star: str = "*", braces: bool = False) -> str:
    parts = []
    for i, k in enumerate(e, start=1):
        if k == 0:
            continue
        if k == 1:
            parts.append(f"x{i}")
        elif braces:
            parts.append(f"x{i}^{{{k}}}")
        else:
            parts.append(f"x{i}^{k}")
    return star.join(parts)


def format_poly(f: LaurentPoly) -> str:
    """Canonical text: ``1 + x1^-1*x2^-1``; descending lexicographic term order."""
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms():
        mono = _format_monomial(e)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


def format_poly_braced(f: LaurentPoly) -> str:
    """Exponent-calculus text in the style ``x1^{-1}x2^{-1}+x2^{-1}``."""
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms():
        mono = _format_monomial(e, star="", braces=True)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}{mono}")
    return "+".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d*)|([-+*^(){}]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character {text[pos]!r} at position {pos} in {text!r}")
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("var", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    return toks


class _PolyParser:
    """Recursive-descent parser for polynomial text; accepts both the
    canonical form (``2*x1^-1``) and the exponent-calculus form
    (``x1^{-1}x2^{-1}``, ``(1+x1^{-1})x2^{-1}``)."""

    def __init__(self, ring: LaurentRing, text: str, tokens=None, pos: int = 0):
        self.ring = ring
        self.text = text
        self.toks = _tokenize(text) if tokens is None else tokens
        self.i = pos

    def error(self, msg: str):
        where = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise ValueError(f"{msg} at position {where} in {self.text!r}")

    def peek(self, kind=None, value=None):
        if self.i >= len(self.toks):
            return None
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            return None
        if value and tok[1] != value:
            return None
        return tok

    def take(self, kind=None, value=None):
        tok = self.peek(kind, value)
        if tok is None:
            self.error(f"expected {value or kind}")
        self.i += 1
        return tok

    def parse_all(self) -> LaurentPoly:
        out = self.expr()
        if self.i != len(self.toks):
            self.error("trailing input")
        return out

    def expr(self) -> LaurentPoly:
        sign = 1
        if self.peek("op", "-"):
            self.i += 1
            sign = -1
        elif self.peek("op", "+"):
            self.i += 1
        total = self.term() * sign
        while True:
            if self.peek("op", "+"):
                self.i += 1
                total = total + self.term()
            elif self.peek("op", "-"):
                self.i += 1
                total = total - self.term()
            else:
                return total

    def _starts_factor(self) -> bool:
        tok = self.peek()
        return tok is not None and (tok[0] in ("num", "var") or tok[1] in ("(", "{"))

    def term(self) -> LaurentPoly:
        out = self.factor()
        while True:
            if self.peek("op", "*"):
                self.i += 1
                out = out * self.factor()
            elif self._starts_factor():
                out = out * self.factor()
            else:
                return out

    def factor(self) -> LaurentPoly:
        base = self.atom()
        if self.peek("op", "^"):
            self.i += 1
            k = self.exponent()
            if k < 0 and not base.is_monomial():
                self.error("negative power of a non-monomial")
            base = base ** k
        return base

    def exponent(self) -> int:
        close = None
        if self.peek("op", "{"):
            self.i += 1
            close = "}"
        elif self.peek("op", "("):
            self.i += 1
            close = ")"
        sign = 1
        if self.peek("op", "-"):
            self.i += 1
            sign = -1
        k = sign * int(self.take("num")[1])
        if close:
            self.take("op", close)
        return k

    def atom(self) -> LaurentPoly:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        kind, val, _ = tok
        if kind == "num":
            self.i += 1
            return self.ring.const(int(val))
        if kind == "var":
            self.i += 1
            if val == "x":
                if self.ring.d != 1:
                    self.i -= 1
                    self.error("bare 'x' is only allowed when d = 1")
                return self.ring.var(1)
            idx = int(val[1:])
            if not 1 <= idx <= self.ring.d:
                self.i -= 1
                self.error(f"variable {val} out of range for d={self.ring.d}")
            return self.ring.var(idx)
        if val in ("(", "{"):
            self.i += 1
            inner = self.expr()
            self.take("op", ")" if val == "(" else "}")
            return inner
        self.error(f"unexpected {val!r}")


def parse_poly(ring: LaurentRing, text: str) -> LaurentPoly:
    """Parse polynomial text; errors carry the offending character position."""
    if not text.strip():
        raise ValueError("empty polynomial text")
    return _PolyParser(ring, text).parse_all()
