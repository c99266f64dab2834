"""Elements, words and permutations for G = A x| X, A = GF(p)[X], X = Z^d.

The pair ``(f, v)`` stands for ``a^f x^v``: the polynomial part f in A
(written additively, with conjugation ``(a^f)^{x^v} = a^{f X^v}``) followed
by the translation x^v. Multiplication is therefore

    (f1, v1)(f2, v2) = (f1 + f2 X^{-v1}, v1 + v2).
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .laurent import ContextMismatch, LaurentPoly, LaurentRing, format_poly, format_poly_braced, parse_poly

__all__ = [
    "WreathElement",
    "Permutation",
    "wreath_mul",
    "conjugate_by_x",
    "eval_word",
    "parse_word",
    "parse_element",
    "format_element",
    "element_name",
    "generator_letters",
    "reduced_words",
]


class WreathElement:
    """Canonical element a^f x^v of G_{p,d}; immutable and hashable."""

    __slots__ = ("f", "v", "_hash")

    def __init__(self, f: LaurentPoly, v: Sequence[int]):
        v = tuple(v)
        if len(v) != f.ring.d:
            raise ValueError(f"translation {v} has wrong length for d={f.ring.d}")
        self.f = f
        self.v = v
        self._hash = None

    @classmethod
    def identity(cls, ring: LaurentRing) -> "WreathElement":
        return cls(ring.zero(), ring.zero_exp)

    @classmethod
    def a(cls, ring: LaurentRing, f: LaurentPoly | int = 1) -> "WreathElement":
        if isinstance(f, int):
            f = ring.const(f)
        return cls(f, ring.zero_exp)

    @classmethod
    def x(cls, ring: LaurentRing, v: Sequence[int]) -> "WreathElement":
        return cls(ring.zero(), v)

    @classmethod
    def gen_x(cls, ring: LaurentRing, i: int) -> "WreathElement":
        """The generator x_i, 1-based."""
        return cls(ring.zero(), ring.unit(i - 1))

    @property
    def ring(self) -> LaurentRing:
        return self.f.ring

    def is_identity(self) -> bool:
        return not self.f.terms and not any(self.v)

    def __eq__(self, other):
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.v == other.v and self.f == other.f

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.f, self.v))
        return self._hash

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        if not isinstance(other, WreathElement):
            return NotImplemented
        if self.ring != other.ring:
            raise ContextMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
        g = other.f.shift(tuple(-k for k in self.v)) if other.f.terms else other.f
        return WreathElement(self.f + g, tuple(a + b for a, b in zip(self.v, other.v)))

    def inverse(self) -> "WreathElement":
        return WreathElement(-self.f.shift(self.v), tuple(-k for k in self.v))

    def __pow__(self, k: int) -> "WreathElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = WreathElement.identity(self.ring)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self, h: "WreathElement") -> "WreathElement":
        """g^h = h^{-1} g h."""
        return h.inverse() * self * h

    def commutator(self, h: "WreathElement") -> "WreathElement":
        """[g, h] = g^{-1} h^{-1} g h."""
        return self.inverse() * h.inverse() * self * h

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"WreathElement({format_element(self)})"


def wreath_mul(g: WreathElement, h: WreathElement) -> WreathElement:
    return g * h


def conjugate_by_x(f: LaurentPoly, v: Sequence[int]) -> LaurentPoly:
    """Polynomial of (a^f)^{x^v}, i.e. f X^v."""
    return f.shift(v)


# ---------------------------------------------------------------------------
# permutations


class Permutation:
    """Bijection of {0..m-1}; products apply the left factor first."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation")
        self.images = images

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(m))

    @classmethod
    def from_cycles(cls, m: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(m))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                img[a] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation([other.images[i] for i in self.images])

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple]:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# text forms


def format_element(g: WreathElement) -> str:
    """Canonical element text ``(poly ; v1,...,vd)``."""
    return f"({format_poly(g.f)} ; {','.join(map(str, g.v))})"


def element_name(g: WreathElement) -> str:
    """Exponent-calculus name such as ``a^{x1^{-1}x2^{-1}}x2``; ``e`` for 1."""
    if g.is_identity():
        return "e"
    out = ""
    if g.f.terms:
        if g.f == g.ring.one():
            out = "a"
        elif len(g.f.terms) == 1 and not any(next(iter(g.f.terms))):
            out = f"a^{{{next(iter(g.f.terms.values()))}}}"
        else:
            out = f"a^{{{format_poly_braced(g.f)}}}"
    for i, k in enumerate(g.v, start=1):
        if k == 1:
            out += f"x{i}"
        elif k:
            out += f"x{i}^{{{k}}}"
    return out


def _match_brace(text: str, start: int, open_: str, close: str) -> int:
    depth = 0
    for k in range(start, len(text)):
        if text[k] == open_:
            depth += 1
        elif text[k] == close:
            depth -= 1
            if depth == 0:
                return k
    raise ValueError(f"unbalanced {open_!r} at position {start} in {text!r}")


_INT = re.compile(r"\s*([-+]?\d+)")
_CANON = re.compile(r"^\s*\((?P<poly>[^;]*);(?P<vec>[^)]*)\)\s*$")


def _read_int_exponent(text: str, pos: int) -> tuple[int, int]:
    """Read ``^k`` / ``^{k}`` / ``^(k)`` starting at ``pos`` (which is '^')."""
    pos += 1
    if pos < len(text) and text[pos] in "{(":
        end = _match_brace(text, pos, text[pos], "}" if text[pos] == "{" else ")")
        body = text[pos + 1 : end].strip()
        try:
            return int(body), end + 1
        except ValueError:
            raise ValueError(f"expected an integer exponent at position {pos} in {text!r}") from None
    m = _INT.match(text, pos)
    if not m:
        raise ValueError(f"expected an integer exponent at position {pos} in {text!r}")
    return int(m.group(1)), m.end()


def parse_element(ring: LaurentRing, text: str) -> WreathElement:
    """Parse an element written either canonically, ``(poly ; v)``, or as a
    product of factors ``e``, ``a``, ``A``, ``a^k``, ``a^{poly}``, ``x_i``,
    ``X_i``, ``x_i^k`` (juxtaposed or joined by ``*``).
    """
    m = _CANON.match(text)
    if m:
        f = parse_poly(ring, m.group("poly"))
        parts = [s for s in m.group("vec").replace(" ", "").split(",") if s]
        if len(parts) != ring.d:
            raise ValueError(f"translation part of {text!r} needs {ring.d} entries")
        return WreathElement(f, [int(s) for s in parts])

    out = WreathElement.identity(ring)
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace() or ch in "*.·":
            pos += 1
            continue
        start = pos
        if ch in "e1" and (pos + 1 == n or not text[pos + 1].isalnum()):
            pos += 1
            continue
        if ch in "aA":
            sign = 1 if ch == "a" else -1
            pos += 1
            f = ring.one()
            if pos < n and text[pos] == "^":
                if pos + 1 < n and text[pos + 1] in "{(":
                    opener = text[pos + 1]
                    end = _match_brace(text, pos + 1, opener, "}" if opener == "{" else ")")
                    f = parse_poly(ring, text[pos + 2 : end])
                    pos = end + 1
                else:
                    k, pos = _read_int_exponent(text, pos)
                    f = ring.const(k)
            out = out * WreathElement.a(ring, f * sign)
            continue
        if ch in "xX":
            sign = 1 if ch == "x" else -1
            pos += 1
            m2 = re.match(r"\d+", text[pos:])
            if m2:
                idx = int(m2.group(0))
                pos += m2.end()
            elif ring.d == 1:
                idx = 1
            else:
                raise ValueError(f"generator without index at position {start} in {text!r}")
            if not 1 <= idx <= ring.d:
                raise ValueError(f"generator x{idx} out of range for d={ring.d} at position {start} in {text!r}")
            k = 1
            if pos < n and text[pos] == "^":
                k, pos = _read_int_exponent(text, pos)
            out = out * (WreathElement.gen_x(ring, idx) ** (sign * k))
            continue
        raise ValueError(f"unexpected character {ch!r} at position {pos} in {text!r}")
    return out


# ---------------------------------------------------------------------------
# words


def generator_letters(d: int) -> list[str]:
    """Letters a, A, x1, X1, ..., xd, Xd (capital = inverse)."""
    out = ["a", "A"]
    for i in range(1, d + 1):
        out += [f"x{i}", f"X{i}"]
    return out


def _inverse_letter(letter: str) -> str:
    return letter.swapcase() if letter[0] in "aA" else (letter[0].swapcase() + letter[1:])


def parse_word(text: str | Sequence[str], d: int) -> list[str]:
    """Split ``a*x1*X2`` (or an iterable of letters) into validated letters."""
    if isinstance(text, str):
        letters = [s.strip() for s in text.split("*") if s.strip()]
    else:
        letters = list(text)
    valid = set(generator_letters(d))
    if d == 1:
        letters = [{"x": "x1", "X": "X1"}.get(s, s) for s in letters]
    for pos, s in enumerate(letters):
        if s not in valid:
            raise ValueError(f"bad letter {s!r} (letter {pos}) for d={d}")
    return letters


def letter_element(ring: LaurentRing, letter: str) -> WreathElement:
    if letter == "a":
        return WreathElement.a(ring)
    if letter == "A":
        return WreathElement.a(ring, -1)
    i = int(letter[1:])
    g = WreathElement.gen_x(ring, i)
    return g if letter[0] == "x" else g.inverse()


def eval_word(ring: LaurentRing, word: str | Sequence[str]) -> WreathElement:
    """Left-to-right product of the generator images of ``word``."""
    out = WreathElement.identity(ring)
    for letter in parse_word(word, ring.d):
        out = out * letter_element(ring, letter)
    return out


def free_reduce(word: Sequence[str]) -> list[str]:
    out: list[str] = []
    for s in word:
        if out and out[-1] == _inverse_letter(s):
            out.pop()
        else:
            out.append(s)
    return out


def reduced_words(d: int, max_length: int) -> Iterator[tuple[str, ...]]:
    """All freely reduced words of length 1..max_length, shortest first."""
    letters = generator_letters(d)
    inv = {s: _inverse_letter(s) for s in letters}
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for s in letters:
                if w and inv[s] == w[-1]:
                    continue
                nxt.append(w + (s,))
        yield from nxt
        frontier = nxt

