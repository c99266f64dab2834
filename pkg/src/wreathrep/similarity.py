"""Similarity pairs (H, f) for G = C_p wr Z^d in module form.

H is described by the ideal A0 = A n H of A = GF(p)[X], the lattice
Y = AH n X, and a deformation assigning to each basis vector y_k of Y a
polynomial v_k, so that H = A0 <a^{v_k} x^{y_k}>. The virtual endomorphism
f restricts to an additive map mu: A0 -> A and a monomorphism alpha: Y -> X
satisfying the skew rule  mu(w nu) = alpha(w) mu(nu)  for w in GF(p)[Y].

Only the two closed-form families of mu that the constructions need are
implemented (:class:`DegreeP` and :class:`AugmentationClosedForm`). A new
family is added by subclassing :class:`MuKind` and providing ``apply``,
``ideal`` and ``base_alpha``; :func:`check_skew_condition` then tests it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import product
from math import gcd
from typing import Sequence

from .laurent import (
    LaurentPoly,
    LaurentRing,
    NotInIdealError,
    divide_by_linear,
    normalize_principal,
    poly_gcd,
)
from .lattice import (
    Lattice,
    as_matrix,
    determinant,
    identity_matrix,
    mat_mul,
    unimodular_inverse,
    vec_mat,
)
from .wreath import WreathElement

DEFAULT_ORBIT_BOUND = 10_000
DEFAULT_TRANSVERSAL_BOUND = 4096


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class EvaluationKernel:
    """Ideal {f : f(c) = 0} for a point c in (GF(p)^*)^d; index p."""

    point: tuple

    def contains(self, f: LaurentPoly) -> bool:
        return f.evaluate(self.point) == 0

    def index(self, ring: LaurentRing) -> int:
        return ring.p

    def reduce(self, f: LaurentPoly) -> LaurentPoly:
        return f.ring.const(f.evaluate(self.point))

    def transversal(self, ring: LaurentRing, bound: int | None = None) -> list[LaurentPoly]:
        return [ring.const(k) for k in range(ring.p)]

    def to_json(self) -> dict:
        return {"kind": "eval", "point": list(self.point)}


@dataclass(frozen=True)
class ExponentReduction:
    """Ideal A(v) = sum_i A (x_i^v - 1): zero after reducing exponents mod v."""

    v: int

    def __post_init__(self):
        if self.v < 1:
            raise ValueError("exponent reduction needs v >= 1")

    def reduce(self, f: LaurentPoly) -> LaurentPoly:
        return f.ring.from_terms(_merge((tuple(k % self.v for k in e), c) for e, c in f.terms.items()))

    def contains(self, f: LaurentPoly) -> bool:
        return self.reduce(f).is_zero()

    def index(self, ring: LaurentRing) -> int:
        return ring.p ** (self.v ** ring.d)

    def transversal(self, ring: LaurentRing, bound: int | None = None) -> list[LaurentPoly]:
        size = self.index(ring)
        if bound is not None and size > bound:
            raise ValueError(f"transversal of A(v) has {size} elements, above the bound {bound}")
        box = sorted(product(range(self.v), repeat=ring.d), key=lambda t: (sum(t), t))
        out = []
        for coeffs in product(range(ring.p), repeat=len(box)):
            out.append(ring.from_terms({e: c for e, c in zip(box, reversed(coeffs)) if c}))
        return out

    def to_json(self) -> dict:
        return {"kind": "expred", "v": self.v}


def _merge(items):
    out: dict = {}
    for e, c in items:
        out[e] = out.get(e, 0) + c
    return out


IdealSpec = EvaluationKernel | ExponentReduction


def transform_ideal(ideal: IdealSpec, gamma_inv, p: int) -> IdealSpec:
    if isinstance(ideal, EvaluationKernel):
        pt = []
        for row in gamma_inv:
            val = 1
            for c, k in zip(ideal.point, row):
                val = val * pow(c, k, p) % p
            pt.append(val)
        return EvaluationKernel(tuple(pt))
    return ideal


def ideal_contains(spec: IdealSpec, f: LaurentPoly) -> bool:
    return spec.contains(f)


def random_poly(ring: LaurentRing, rng: random.Random, max_terms: int = 4, spread: int = 3) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(-spread, spread) for _ in range(ring.d))
        terms[e] = terms.get(e, 0) + rng.randrange(1, ring.p)
    return ring.from_terms(terms)


def random_ideal_element(ideal: IdealSpec, ring: LaurentRing, rng: random.Random, **kw) -> LaurentPoly:
    r = random_poly(ring, rng, **kw)
    return r - ideal.reduce(r)


# ---------------------------------------------------------------------------
# mu families


class MuKind:
    """A closed-form family of additive maps mu: A0 -> A (untwisted frame)."""

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        raise NotImplementedError

    def ideal(self, ring: LaurentRing) -> IdealSpec:
        raise NotImplementedError

    def base_lattice(self, ring: LaurentRing) -> Lattice:
        raise NotImplementedError

    def base_alpha(self, ring: LaurentRing, y: Sequence[int]) -> tuple:
        raise NotImplementedError


@dataclass(frozen=True)
class DegreeP(MuKind):
    """d = 1, A0 = <x - c>, mu(r(x)(x - c)) = r(x^n) u(x), alpha: x -> x^n."""

    n: int
    u: LaurentPoly
    c: int

    def __post_init__(self):
        if self.u.ring.d != 1:
            raise ValueError("DegreeP needs d = 1")
        if self.n == 0:
            raise ValueError("alpha: x -> x^0 is not injective")
        object.__setattr__(self, "c", self.c % self.u.ring.p)
        if self.c == 0:
            raise ValueError("c must be a unit of GF(p)")

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        r = divide_by_linear(f, self.c)
        return r.substitute(((self.n,),)) * self.u

    def ideal(self, ring):
        return EvaluationKernel((self.c,))

    def base_lattice(self, ring):
        return Lattice.full(1)

    def base_alpha(self, ring, y):
        return (self.n * y[0],)

    def to_json(self) -> dict:
        from .laurent import format_poly

        return {"kind": "degree_p", "n": self.n, "u": format_poly(self.u), "c": self.c}


@dataclass(frozen=True)
class AugmentationClosedForm(MuKind):
    """d >= 2, A0 = augmentation ideal, Y = <x1^p, x2, ..., xd>,
    alpha: x1^p -> x2, x_j -> x_{j+1}, x_d -> x1, and on the basis {m - 1}

        mu(x1^{u0 + u1 p} z - 1) = u0 x2^{u1} alpha(z),   0 <= u0 < p,

    with z a monomial in x2..xd."""

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        ring = f.ring
        p, d = ring.p, ring.d
        if f.augmentation():
            raise NotInIdealError(f"{f} is not in the augmentation ideal")
        out: dict = {}
        for e, c in f.terms.items():
            u1, u0 = divmod(e[0], p)
            if not u0:
                continue
            img = [0] * d
            img[1] += u1
            for j in range(1, d):
                img[(j + 1) % d] += e[j]
            img = tuple(img)
            out[img] = out.get(img, 0) + c * u0
        return ring.from_terms(out)

    def ideal(self, ring):
        if ring.d < 2:
            raise ValueError("the augmentation family needs d >= 2")
        return EvaluationKernel((1,) * ring.d)

    def base_lattice(self, ring):
        rows = [list(r) for r in identity_matrix(ring.d)]
        rows[0][0] = ring.p
        return Lattice(rows)

    def base_alpha(self, ring, y):
        p, d = ring.p, ring.d
        if y[0] % p:
            raise ValueError(f"{y} is not in <x1^p, x2, ..., xd>")
        img = [0] * d
        img[1] += y[0] // p
        for j in range(1, d):
            img[(j + 1) % d] += y[j]
        return tuple(img)

    def to_json(self) -> dict:
        return {"kind": "augmentation"}


@dataclass(frozen=True)
class VirtualEndo:
    """(mu, alpha): alpha_matrix row k is alpha of the k-th Y-basis vector.

    ``twist`` is the automorphism gamma of X (row-vector convention) through
    which the untwisted family ``mu`` has been transported; mu then acts as
    gamma o mu o gamma^{-1}.
    """

    alpha_matrix: tuple
    mu: MuKind
    twist: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha_matrix", as_matrix(self.alpha_matrix))
        if determinant(self.alpha_matrix) == 0:
            raise ValueError("alpha is not injective (singular alpha matrix)")
        if self.twist is not None:
            object.__setattr__(self, "twist", as_matrix(self.twist))

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        if self.twist is None:
            return self.mu.apply(f)
        back = unimodular_inverse(self.twist)
        return self.mu.apply(f.substitute(back)).substitute(self.twist)


def mu_apply(endo: VirtualEndo, f: LaurentPoly) -> LaurentPoly:
    return endo.apply(f)


def mu_apply_via_decomposition(endo: VirtualEndo, f: LaurentPoly) -> LaurentPoly:
    """Augmentation-family mu computed through the unique decomposition

        nu = b0 + sum_i b_i (x1^i - 1) + sum_z a_z (z - 1)
                + sum_{i,z} b_{i,z} (z - 1)(x1^i - 1),

    b0 in the augmentation ideal of k<x1^p>, the rest in k<x1^p>, 1 <= i < p,
    z != 1 a monomial of <x2..xd>. mu kills b0 and the a_z terms and sends
    x1^i - 1 to i; the remaining coefficients pass through alpha.
    """
    if not isinstance(endo.mu, AugmentationClosedForm):
        raise TypeError("decomposition oracle exists for the augmentation family only")
    if endo.twist is not None:
        back = unimodular_inverse(endo.twist)
        inner = replace(endo, twist=None)
        return mu_apply_via_decomposition(inner, f.substitute(back)).substitute(endo.twist)
    ring = f.ring
    p, d = ring.p, ring.d
    zero_z = (0,) * (d - 1)

    # beta[(i, z)] is a polynomial in t = x1^p, kept as {q: coef}
    beta: dict = {}
    for e, c in f.terms.items():
        q, i = divmod(e[0], p)
        slot = beta.setdefault((i, tuple(e[1:])), {})
        slot[q] = slot.get(q, 0) + c

    b0_aug = sum(sum(v.values()) for v in beta.values()) % p
    if b0_aug:
        raise NotInIdealError(f"{f} is not in the augmentation ideal")

    def alpha_t(poly_t: dict) -> LaurentPoly:
        # k<x1^p> -> k<x2>, t -> x2
        return ring.from_terms({tuple(q if k == 1 else 0 for k in range(d)): c for q, c in poly_t.items()})

    def alpha_z(z: tuple) -> LaurentPoly:
        img = [0] * d
        for j, k in enumerate(z, start=1):
            img[(j + 1) % d] += k
        return ring.monomial(img)

    b = {}
    b_iz = {}
    for (i, z), poly_t in beta.items():
        if i == 0:
            continue  # contributes to b0 and a_z only
        acc = b.setdefault(i, {})
        for q, c in poly_t.items():
            acc[q] = acc.get(q, 0) + c
        if z != zero_z:
            b_iz[(i, z)] = poly_t

    out = ring.zero()
    for i, poly_t in b.items():
        out = out + alpha_t(poly_t) * i
    for (i, z), poly_t in b_iz.items():
        out = out + alpha_t(poly_t) * (alpha_z(z) - ring.one()) * i
    return out


# ---------------------------------------------------------------------------
# pairs


@dataclass(frozen=True)
class SimilarityPair:
    ring: LaurentRing
    a0: IdealSpec
    y: Lattice
    deformation: tuple
    endo: VirtualEndo

    def __post_init__(self):
        d = self.ring.d
        if self.y.d != d:
            raise ValueError("lattice rank does not match d")
        defo = tuple(self.deformation) if self.deformation else tuple(self.ring.zero() for _ in range(d))
        if len(defo) != d:
            raise ValueError(f"deformation needs {d} entries (one per lattice basis row)")
        for k, v in enumerate(defo):
            if v.ring != self.ring:
                raise ValueError("deformation polynomial from another ring")
            if v and self.a0.contains(v):
                raise ValueError(f"deformation value {v} for basis row {k} lies in A0; use 0 instead")
        object.__setattr__(self, "deformation", defo)
        if len(self.endo.alpha_matrix) != d or any(len(r) != d for r in self.endo.alpha_matrix):
            raise ValueError("alpha matrix must be d x d")
        self._validate_family()

    def _validate_family(self):
        ring = self.ring
        mu = self.endo.mu
        gamma = self.endo.twist or identity_matrix(ring.d)
        gamma_inv = unimodular_inverse(gamma)
        expected = transform_ideal(mu.ideal(ring), gamma_inv, ring.p)
        if expected != self.a0:
            raise ValueError(f"mu family expects ideal {expected.to_json()}, pair has {self.a0.to_json()}")
        base_y = mu.base_lattice(ring)
        if not self.y.transform(gamma_inv).same_subgroup(base_y):
            raise ValueError("lattice does not match the mu family")
        for g in base_y.basis:
            g_tw = vec_mat(g, gamma)
            want = vec_mat(mu.base_alpha(ring, g), gamma)
            if self.alpha(g_tw) != want:
                raise ValueError(f"alpha disagrees with the mu family on {g_tw}")

    @property
    def index(self) -> int:
        return self.a0.index(self.ring) * self.y.index

    def is_deformed(self) -> bool:
        return any(v for v in self.deformation)

    def alpha(self, yvec: Sequence[int]) -> tuple:
        c = self.y.coords(yvec)
        if c is None:
            raise ValueError(f"{tuple(yvec)} is not in Y")
        return vec_mat(c, self.endo.alpha_matrix)

    def alpha_poly(self, w: LaurentPoly) -> LaurentPoly:
        """Ring extension of alpha to GF(p)[Y]."""
        out = {}
        for e, c in w.terms.items():
            img = self.alpha(e)
            out[img] = out.get(img, 0) + c
        return self.ring.from_terms(out)

    def mu(self, f: LaurentPoly) -> LaurentPoly:
        if not self.a0.contains(f):
            raise NotInIdealError(f"{f} is not in A0")
        return self.endo.apply(f)

    def deformed_generator(self, k: int) -> WreathElement:
        return WreathElement(self.deformation[k], self.y.basis[k])

    def deformation_part(self, yvec: Sequence[int]) -> LaurentPoly:
        """A-part of prod_k (a^{v_k} y_k)^{c_k} where yvec = sum c_k y_k."""
        if not self.is_deformed():
            return self.ring.zero()
        c = self.y.coords(yvec)
        if c is None:
            raise ValueError(f"{tuple(yvec)} is not in Y")
        w = WreathElement.identity(self.ring)
        for k, ck in enumerate(c):
            if ck:
                w = w * (self.deformed_generator(k) ** ck)
        return w.f

    def deformation_consistent(self) -> bool:
        return deformation_consistent(self.ring, self.a0, self.y, self.deformation)

    def to_json(self) -> dict:
        from .laurent import format_poly

        out = {
            "p": self.ring.p,
            "d": self.ring.d,
            "ideal": self.a0.to_json(),
            "lattice": [list(r) for r in self.y.basis],
            "alpha": [list(r) for r in self.endo.alpha_matrix],
            "mu": self.endo.mu.to_json(),
            "deformation": [format_poly(v) for v in self.deformation],
        }
        if self.endo.twist is not None:
            out["twist"] = [list(r) for r in self.endo.twist]
        return out


def pair_from_json(data: dict) -> SimilarityPair:
    ring = LaurentRing(int(data["p"]), int(data["d"]))
    ideal = data["ideal"]
    if ideal["kind"] == "eval":
        a0 = EvaluationKernel(tuple(int(c) % ring.p for c in ideal["point"]))
    elif ideal["kind"] == "expred":
        a0 = ExponentReduction(int(ideal["v"]))
    else:
        raise ValueError(f"unknown ideal kind {ideal['kind']!r}")
    mu = data["mu"]
    if mu["kind"] == "degree_p":
        kind = DegreeP(int(mu["n"]), ring.parse(str(mu["u"])), int(mu["c"]))
    elif mu["kind"] == "augmentation":
        kind = AugmentationClosedForm()
    else:
        raise ValueError(f"unknown mu kind {mu['kind']!r}")
    defo = data.get("deformation") or []
    deformation = tuple(ring.parse(s) for s in defo) if defo else ()
    endo = VirtualEndo(as_matrix(data["alpha"]), kind, as_matrix(data["twist"]) if data.get("twist") else None)
    return SimilarityPair(ring, a0, Lattice(data["lattice"]), deformation, endo)


# ---------------------------------------------------------------------------
# checks and transformations


@dataclass
class SkewReport:
    trials: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "ok": self.ok,
            "failures": [{k: str(v) for k, v in f.items()} for f in self.failures[:10]],
        }


def random_lattice_poly(pair: SimilarityPair, rng: random.Random, max_terms: int = 4, spread: int = 2) -> LaurentPoly:
    """Random element of GF(p)[Y]."""
    ring = pair.ring
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        c = [rng.randint(-spread, spread) for _ in range(ring.d)]
        e = vec_mat(c, pair.y.basis)
        terms[e] = terms.get(e, 0) + rng.randrange(1, ring.p)
    return ring.from_terms(terms)


def check_skew_condition(pair: SimilarityPair, trials: int = 1000, seed: int = 0) -> SkewReport:
    """Sample w in GF(p)[Y], nu in A0 and test mu(w nu) == alpha(w) mu(nu)."""
    rng = random.Random(seed)
    rep = SkewReport(trials)
    for _ in range(trials):
        w = random_lattice_poly(pair, rng)
        nu = random_ideal_element(pair.a0, pair.ring, rng)
        lhs = pair.mu(w * nu)
        rhs = pair.alpha_poly(w) * pair.mu(nu)
        if lhs != rhs:
            rep.failures.append({"w": w, "nu": nu, "lhs": lhs, "rhs": rhs})
    return rep


def replace_pair(pair: SimilarityPair) -> SimilarityPair:
    """Undeformed pair A0 Y with the same (mu, alpha)."""
    if not pair.is_deformed():
        return pair
    return replace(pair, deformation=())


def twist_pair(pair: SimilarityPair, gamma: Sequence[Sequence[int]]) -> SimilarityPair:
    """Transport the pair through the automorphism x^v -> x^{v gamma} of X."""
    gamma = as_matrix(gamma)
    if len(gamma) != pair.ring.d:
        raise ValueError("twist matrix must be d x d")
    gamma_inv = unimodular_inverse(gamma)  # raises on non-unimodular input
    endo = pair.endo
    twist = gamma if endo.twist is None else mat_mul(endo.twist, gamma)
    new_endo = VirtualEndo(mat_mul(endo.alpha_matrix, gamma), endo.mu, twist)
    return SimilarityPair(
        pair.ring,
        transform_ideal(pair.a0, gamma_inv, pair.ring.p),
        pair.y.transform(gamma),
        tuple(v.substitute(gamma) for v in pair.deformation),
        new_endo,
    )


# ---------------------------------------------------------------------------
# simplicity


@dataclass(frozen=True)
class Verdict:
    status: str  # "Simple" | "NotSimple" | "Inconclusive"
    reason: str
    witness: LaurentPoly | None = None
    witness_name: str | None = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "witness": None if self.witness is None else str(self.witness),
            "witness_name": self.witness_name,
        }


def _orbit_of_unit(c: int, n: int, p: int) -> list[int]:
    """c, c^n, c^{n^2}, ... until the sequence repeats."""
    seen = []
    t = c
    while t not in seen:
        seen.append(t)
        t = pow(t, n, p)
    return seen


def _mult_order(c: int, p: int) -> int:
    k, t = 1, c
    while t != 1:
        t = t * c % p
        k += 1
    return k


def check_simplicity_degree_p(n: int, u: LaurentPoly, c: int) -> Verdict:
    """Simplicity of mu(r(x)(x - c)) = r(x^n) u(x) on <x - c> in GF(p)[x^{+-1}].

    NotSimple comes with a generator of a nonzero mu-invariant ideal inside
    <x - c>; Simple is returned only where a sufficiency argument applies
    (c = 1 with gcd(p, n) = 1 and u(1) != 0, or n = 1 with u a nonzero
    constant); otherwise Inconclusive.
    """
    ring = u.ring
    p = ring.p
    if ring.d != 1:
        raise ValueError("degree-p criteria need d = 1")
    if u.is_zero():
        raise ValueError("u must be nonzero")
    if n == 0:
        raise ValueError("n must be nonzero (alpha injective)")
    c %= p
    if c == 0:
        raise ValueError("c must be nonzero")
    lin = ring.var(1) - c

    # u(c^{n^i}) != 0 along the orbit of c under t -> t^n
    prod = ring.one()
    for i, t in enumerate(_orbit_of_unit(c, n, p)):
        if u.evaluate((t,)) == 0:
            gen = lin * prod
            name = "M" if i == 0 else f"M*prod_{{t<{i}}} u(x^(n^t))"
            if c == 1 and i == 0:
                name = "I"
            return Verdict("NotSimple", f"u vanishes at c^(n^{i}) = {t}", gen, name)
        prod = prod * u.substitute(((n ** i,),))
    # n = p^s n' with s > 0 and o(c) | n' - 1
    s, n1 = 0, n
    while n1 % p == 0:
        n1 //= p
        s += 1
    if s and (n1 - 1) % _mult_order(c, p) == 0:
        name = "I(x-1)^2" if c == 1 else "M(x-c)^2"
        return Verdict("NotSimple", f"n = p^{s} * {n1} with o(c) | n' - 1", lin ** 3, name)

    if c == 1 and gcd(p, n) == 1 and u.evaluate((1,)) != 0:
        return Verdict("Simple", "c = 1, gcd(p, n) = 1 and u(1) != 0")
    if n == 1 and len(u.terms) == 1 and not any(next(iter(u.terms))):
        return Verdict("Simple", "n = 1 and u is a nonzero constant")
    return Verdict("Inconclusive", "necessary conditions hold; no sufficiency argument applies")


def _monic_shift(f: LaurentPoly) -> LaurentPoly:
    """Canonical unit multiple: leading coefficient 1, minimal exponents 0."""
    lead = f.sorted_terms()[0][1]
    f = f * pow(lead, -1, f.ring.p)
    return f.shift(tuple(-k for k in f.min_exponents()))


@dataclass
class IdealWitness:
    generators: list
    steps: int

    def to_json(self) -> dict:
        return {"generators": [str(g) for g in self.generators], "steps": self.steps}


def invariant_ideal_witness(
    pair: SimilarityPair, seeds: Sequence[LaurentPoly], iteration_bound: int = DEFAULT_ORBIT_BOUND
) -> IdealWitness | None:
    """Search for a nonzero mu-invariant ideal of A inside A0 containing a seed.

    The ideal generated by a set S inside A0 is mu-invariant as soon as
    mu(X^t s) lies in it for every s in S and t in the transversal of Y,
    because mu(w X^t s) = alpha(w) mu(X^t s) for w in GF(p)[Y]. In rank one
    ideals are principal and the closure is tracked by a gcd; otherwise the
    orbit of the seed under s -> mu(X^t s) is closed up to unit multiples.
    """
    ring = pair.ring
    shifts = pair.y.transversal()
    for seed in seeds:
        if seed.is_zero():
            continue
        if ring.d == 1:
            found = _principal_closure(pair, seed, shifts, iteration_bound)
        else:
            found = _orbit_closure(pair, seed, shifts, iteration_bound)
        if found is not None:
            return found
    return None


def _principal_closure(pair, seed, shifts, bound):
    g = normalize_principal(seed)
    for step in range(bound):
        if not pair.a0.contains(g):
            return None
        new = g
        for t in shifts:
            new = poly_gcd(new, pair.mu(g.shift(t)))
        if new == g:
            return IdealWitness([g], step)
        g = new
    return None


def _orbit_closure(pair, seed, shifts, bound):
    start = _monic_shift(seed)
    seen = {start}
    queue = [start]
    steps = 0
    while queue:
        s = queue.pop()
        steps += 1
        if not pair.a0.contains(s):
            return None
        for t in shifts:
            img = pair.mu(s.shift(t))
            if img.is_zero():
                continue
            img = _monic_shift(img)
            if img not in seen:
                if len(seen) >= bound:
                    return None
                seen.add(img)
                queue.append(img)
    return IdealWitness(sorted(seen, key=str), steps)


# ---------------------------------------------------------------------------
# deformations


def _commutator_poly(y: Sequence[int], w: LaurentPoly) -> LaurentPoly:
    """Additive form of [y, w] = y^{-1} w^{-1} y w, namely w (1 - X^y)."""
    return w - w.shift(y)


def deformation_consistent(ring: LaurentRing, a0: IdealSpec, y: Lattice, values: Sequence[LaurentPoly]) -> bool:
    """[y_i, w_j] in [y_j, w_i] A0 for all i, j, where w_i = v_i^{y_i}."""
    basis = y.basis
    ws = [v.shift(b) for v, b in zip(values, basis)]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            diff = _commutator_poly(basis[i], ws[j]) - _commutator_poly(basis[j], ws[i])
            if not a0.contains(diff):
                return False
    return True


def enumerate_deformations(
    ring: LaurentRing, a0: IdealSpec, y: Lattice, transversal_bound: int = DEFAULT_TRANSVERSAL_BOUND
) -> list[tuple]:
    """All choices v_i from a transversal of A0 in A meeting the commutator rule."""
    size = a0.index(ring)
    if size > transversal_bound:
        raise ValueError(f"[A:A0] = {size} exceeds the transversal bound {transversal_bound}")
    trans = a0.transversal(ring, transversal_bound)
    out = []
    for choice in product(trans, repeat=ring.d):
        if deformation_consistent(ring, a0, y, choice):
            out.append(tuple(choice))
    return out
