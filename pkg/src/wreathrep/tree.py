"""Tree representations induced by a similarity pair.

For a right transversal T = {t_0 = e, ..., t_{m-1}} of H in G and g in G,

    g = (f(h_0), ..., f(h_{m-1})) g^sigma,   h_i = t_i g t_j^{-1},  H t_i g = H t_j,

and the tree action is ``(i w)^g = (i^sigma)(w^{f(h_i)})``. Transversal
elements are t = x^r a^s with r running over the residues of X mod Y and s
over a transversal of A0 in A; the letter of t is ``index(r) * [A:A0] + index(s)``
(so x1^i a^j is letter p*i + j for the degree p^2 constructions).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .automaton import MealyAutomaton
from .laurent import NotInIdealError
from .lattice import vec_sub
from .similarity import AugmentationClosedForm, DegreeP, SimilarityPair
from .wreath import Permutation, WreathElement, eval_word, reduced_words

DEFAULT_MAX_STATES = 10_000
DEFAULT_WORD_LENGTH = 6
DEFAULT_PORTRAIT_DEPTH = 8


class CosetError(RuntimeError):
    """A Schreier element fell outside H; the context is inconsistent."""


class Action(str, Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "NonTrivial"
    UNKNOWN = "Unknown"


class RepContext:
    """Compiled data for one pair: transversal, letters and a section cache."""

    def __init__(self, pair: SimilarityPair, cache_limit: int = 200_000):
        self.pair = pair
        self.ring = pair.ring
        self.x_reps = pair.y.transversal()
        self.a_reps = pair.a0.transversal(self.ring)
        self._x_index = {r: k for k, r in enumerate(self.x_reps)}
        self._a_index = {s: k for k, s in enumerate(self.a_reps)}
        self.m = len(self.x_reps) * len(self.a_reps)
        if self.m != pair.index:
            raise CosetError(f"transversal size {self.m} differs from index {pair.index}")
        self.transversal = [
            WreathElement.x(self.ring, r) * WreathElement.a(self.ring, s) for r in self.x_reps for s in self.a_reps
        ]
        self._cache: dict = {}
        self._cache_limit = cache_limit

    @property
    def degree(self) -> int:
        return self.m

    def letter(self, x_rep, a_rep) -> int:
        return self._x_index[tuple(x_rep)] * len(self.a_reps) + self._a_index[a_rep]

    # -- coset resolution ----------------------------------------------
    def resolve(self, g: WreathElement) -> tuple[int, WreathElement]:
        """Letter j with g in H t_j, and the element g t_j^{-1} of H."""
        pair = self.pair
        v = g.v
        r = pair.y.reduce(v)
        yv = vec_sub(v, r)
        dpart = pair.deformation_part(yv)
        s = pair.a0.reduce((g.f - dpart).shift(v))
        j = self.letter(r, s)
        h = WreathElement(g.f - s.shift(tuple(-k for k in v)), yv)
        return j, h

    def in_subgroup(self, h: WreathElement) -> bool:
        pair = self.pair
        if not pair.y.contains(h.v):
            return False
        return pair.a0.contains(h.f - pair.deformation_part(h.v))

    def resolve_by_scan(self, g: WreathElement) -> int:
        """Slow oracle for :meth:`resolve`: the unique t_j with g t_j^{-1} in H."""
        hits = [j for j, t in enumerate(self.transversal) if self.in_subgroup(g * t.inverse())]
        if len(hits) != 1:
            raise CosetError(f"{g} lies in {len(hits)} cosets")
        return hits[0]

    def f_image(self, h: WreathElement) -> WreathElement:
        """Image of h in H under the virtual endomorphism."""
        pair = self.pair
        core = h.f - pair.deformation_part(h.v)
        try:
            a_img = pair.mu(core)
        except NotInIdealError as exc:
            raise CosetError(f"{h} is not in H") from exc
        return WreathElement(a_img, pair.alpha(h.v))

    # -- recursion ---------------------------------------------------------
    def decompose(self, g: WreathElement) -> tuple[tuple, Permutation]:
        hit = self._cache.get(g)
        if hit is not None:
            return hit
        children = []
        images = []
        for t in self.transversal:
            j, h = self.resolve(t * g)
            images.append(j)
            children.append(self.f_image(h))
        out = (tuple(children), Permutation(images))
        if len(self._cache) >= self._cache_limit:
            self._cache.clear()
        self._cache[g] = out
        return out

    def coset_action(self, g: WreathElement) -> Permutation:
        return Permutation([self.resolve(t * g)[0] for t in self.transversal])

    def generators(self) -> dict[str, WreathElement]:
        out = {"a": WreathElement.a(self.ring)}
        for i in range(1, self.ring.d + 1):
            out[f"x{i}"] = WreathElement.gen_x(self.ring, i)
        return out


def coset_action(ctx: RepContext, g: WreathElement) -> Permutation:
    return ctx.coset_action(g)


def decompose(ctx: RepContext, g: WreathElement) -> tuple[tuple, Permutation]:
    return ctx.decompose(g)


def wreath_compose(dg, dh):
    """Product of two wreath recursions (children, perm), left factor first."""
    cg, sg = dg
    ch, sh = dh
    return tuple(cg[i] * ch[sg(i)] for i in range(len(cg))), sg * sh


# ---------------------------------------------------------------------------
# action on the tree


def section(ctx: RepContext, g: WreathElement, vertex: Sequence[int]) -> WreathElement:
    for letter in vertex:
        g = ctx.decompose(g)[0][letter]
    return g


def act_on_vertex(ctx: RepContext, g: WreathElement, vertex: Sequence[int]) -> tuple:
    out = []
    for letter in vertex:
        if not 0 <= letter < ctx.m:
            raise ValueError(f"letter {letter} out of range for degree {ctx.m}")
        children, perm = ctx.decompose(g)
        out.append(perm(letter))
        g = children[letter]
    return tuple(out)


def vertex_text(vertex: Sequence[int], m: int) -> str:
    if m <= 10:
        return "".join(map(str, vertex))
    return ".".join(map(str, vertex))


def parse_vertex(text: str, m: int) -> tuple:
    text = text.strip()
    if not text:
        return ()
    parts = text.replace(",", ".").split(".") if ("." in text or "," in text or m > 10) else list(text)
    try:
        out = tuple(int(s) for s in parts)
    except ValueError:
        raise ValueError(f"bad vertex {text!r}") from None
    for pos, k in enumerate(out):
        if not 0 <= k < m:
            raise ValueError(f"letter {k} at position {pos} of {text!r} out of range for degree {m}")
    return out


@dataclass
class Portrait:
    depth: int
    degree: int
    labels: dict = field(default_factory=dict)

    def render(self) -> str:
        lines = []
        self._render((), lines)
        return "\n".join(lines)

    def _render(self, w, lines):
        if w not in self.labels:
            return
        name = vertex_text(w, self.degree) or "*"
        lines.append("  " * len(w) + f"{name}: {self.labels[w]}")
        for k in range(self.degree):
            self._render(w + (k,), lines)

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "degree": self.degree,
            "labels": {vertex_text(w, self.degree): str(p) for w, p in sorted(self.labels.items())},
        }


def portrait(ctx: RepContext, g: WreathElement, depth: int = DEFAULT_PORTRAIT_DEPTH) -> Portrait:
    """Root permutations of the sections at all vertices of length < depth."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    out = Portrait(depth, ctx.m)
    level = [((), g)]
    for _ in range(depth):
        nxt = []
        for w, h in level:
            children, perm = ctx.decompose(h)
            out.labels[w] = perm
            nxt.extend((w + (k,), children[k]) for k in range(ctx.m))
        level = nxt
    return out


# ---------------------------------------------------------------------------
# finite-state analysis


def state_closure(ctx: RepContext, g: WreathElement, max_states: int = DEFAULT_MAX_STATES) -> MealyAutomaton | None:
    """All sections of g, or None when more than ``max_states`` turn up."""
    if max_states < 1:
        raise ValueError("max_states must be >= 1")
    states = [g]
    index = {g: 0}
    transitions = []
    outputs = []
    k = 0
    while k < len(states):
        children, perm = ctx.decompose(states[k])
        row = []
        for c in children:
            j = index.get(c)
            if j is None:
                if len(states) >= max_states:
                    return None
                j = len(states)
                index[c] = j
                states.append(c)
            row.append(j)
        transitions.append(tuple(row))
        outputs.append(perm)
        k += 1
    return MealyAutomaton(ctx.ring, ctx.m, states, transitions, outputs)


def is_trivial_action(ctx: RepContext, g: WreathElement, max_states: int = DEFAULT_MAX_STATES) -> Action:
    """Decide triviality of a finite-state element by exploring its sections."""
    seen = {g}
    queue = deque([g])
    while queue:
        h = queue.popleft()
        children, perm = ctx.decompose(h)
        if not perm.is_identity():
            return Action.NONTRIVIAL
        for c in children:
            if c not in seen:
                if len(seen) >= max_states:
                    return Action.UNKNOWN
                seen.add(c)
                queue.append(c)
    return Action.TRIVIAL


@dataclass
class KernelReport:
    max_word_length: int
    words: int = 0
    elements: int = 0
    witnesses: list = field(default_factory=list)
    unknown: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.witnesses and not self.unknown

    def to_json(self) -> dict:
        return {
            "max_word_length": self.max_word_length,
            "words": self.words,
            "distinct_nontrivial_elements": self.elements,
            "witnesses": [{"word": "*".join(w), "element": str(g)} for w, g in self.witnesses],
            "unknown": [{"word": "*".join(w), "element": str(g)} for w, g in self.unknown],
            "ok": self.ok,
        }


def kernel_scan(
    ctx: RepContext,
    max_word_length: int = DEFAULT_WORD_LENGTH,
    max_states: int = DEFAULT_MAX_STATES,
    stop_at_first: bool = False,
) -> KernelReport:
    """Look for nontrivial group elements (as short words) acting trivially."""
    rep = KernelReport(max_word_length)
    verdicts: dict = {}
    gens = {}
    for s in ("a", "A") + tuple(f"{c}{i}" for i in range(1, ctx.ring.d + 1) for c in "xX"):
        gens[s] = eval_word(ctx.ring, [s])
    # evaluate words incrementally along the prefix tree
    values = {(): WreathElement.identity(ctx.ring)}
    for w in reduced_words(ctx.ring.d, max_word_length):
        g = values[w[:-1]] * gens[w[-1]]
        if len(w) < max_word_length:
            values[w] = g
        rep.words += 1
        if g.is_identity():
            continue
        verdict = verdicts.get(g)
        if verdict is None:
            verdict = is_trivial_action(ctx, g, max_states)
            verdicts[g] = verdict
            rep.elements += 1
            if verdict is Action.TRIVIAL:
                rep.witnesses.append((w, g))
            elif verdict is Action.UNKNOWN:
                rep.unknown.append((w, g))
            if stop_at_first and rep.witnesses:
                return rep
    return rep


@dataclass
class ClosedFormReport:
    family: str
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.family != "none" and not self.mismatches

    def to_json(self) -> dict:
        return {"family": self.family, "checked": self.checked, "mismatches": self.mismatches, "ok": self.ok}


def expected_generator_recursions(ctx: RepContext) -> tuple[str, dict]:
    """Closed-form recursions of the generators for the two constructed families."""
    pair = ctx.pair
    ring = ctx.ring
    p, d = ring.p, ring.d
    if pair.is_deformed() or pair.endo.twist is not None:
        return "none", {}
    e = WreathElement.identity(ring)
    mu = pair.endo.mu
    out = {}
    if isinstance(mu, DegreeP) and pair.y.same_subgroup(mu.base_lattice(ring)):
        n, u, c = mu.n, mu.u, mu.c
        out["a"] = ((e,) * p, Permutation([(i + 1) % p for i in range(p)]))
        # x = (x^n, x^n a^{u}, ..., x^n a^{u(p-1)}) with x^sigma: i -> ic
        xn = WreathElement.gen_x(ring, 1) ** n
        out["x1"] = (
            tuple(xn * WreathElement.a(ring, u * i) for i in range(p)),
            Permutation([i * c % p for i in range(p)]),
        )
        return "degree_p", out
    if isinstance(mu, AugmentationClosedForm):
        idx = lambda i, j: p * i + j  # noqa: E731
        out["a"] = ((e,) * (p * p), Permutation([idx(i, (j + 1) % p) for i in range(p) for j in range(p)]))
        x2inv = ring.monomial(tuple(-1 if k == 1 else 0 for k in range(d)))
        kids = []
        for i in range(p):
            for j in range(p):
                child = WreathElement.a(ring, x2inv * j)
                if i == p - 1:
                    child = child * WreathElement.gen_x(ring, 2)
                kids.append(child)
        out["x1"] = (tuple(kids), Permutation([idx((i + 1) % p, j) for i in range(p) for j in range(p)]))
        for l in range(2, d + 1):
            nxt = l % d + 1  # x_{l+1}, indices mod d
            xn = ring.var(nxt)
            xninv = xn.monomial_inverse()
            kids = []
            for i in range(p):
                for j in range(p):
                    poly = x2inv * xninv * (xn - ring.one()) * (-i * j)
                    kids.append(WreathElement.a(ring, poly) * WreathElement.gen_x(ring, nxt))
            out[f"x{l}"] = (tuple(kids), Permutation.identity(p * p))
        return "augmentation", out
    return "none", {}


def verify_closed_form(ctx: RepContext) -> ClosedFormReport:
    family, expected = expected_generator_recursions(ctx)
    rep = ClosedFormReport(family)
    gens = ctx.generators()
    for name, (kids, perm) in expected.items():
        got_kids, got_perm = ctx.decompose(gens[name])
        rep.checked += 1
        if got_perm != perm:
            rep.mismatches.append({"generator": name, "what": "perm", "expected": str(perm), "got": str(got_perm)})
        for i, (want, got) in enumerate(zip(kids, got_kids)):
            if want != got:
                rep.mismatches.append(
                    {"generator": name, "what": f"child {i}", "expected": str(want), "got": str(got)}
                )
    return rep
