"""Ready-made similarity pairs and the run configuration format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from .laurent import LaurentPoly, LaurentRing, evaluate
from .lattice import Lattice
from .similarity import (
    AugmentationClosedForm,
    DegreeP,
    EvaluationKernel,
    SimilarityPair,
    VirtualEndo,
    pair_from_json,
)


class ConstructionError(ValueError):
    """Parameters outside the domain where the construction is valid."""


def _as_poly(ring: LaurentRing, u) -> LaurentPoly:
    if isinstance(u, LaurentPoly):
        return u
    if isinstance(u, int):
        return ring.const(u)
    return ring.parse(str(u))


def degree_p(p: int, n: int, u, c: int = 1) -> SimilarityPair:
    """Degree-p pair on C_p wr Z: A0 = <x - c>, Y = X, alpha: x -> x^n,
    mu(r(x)(x - c)) = r(x^n) u(x). No validity conditions beyond n != 0."""
    ring = LaurentRing(p, 1)
    u = _as_poly(ring, u)
    kind = DegreeP(n, u, c)
    return SimilarityPair(ring, EvaluationKernel((kind.c,)), Lattice.full(1), (), VirtualEndo(((n,),), kind))


def theorem2(p: int, n: int, u, c: int = 1) -> SimilarityPair:
    ring = LaurentRing(p, 1)
    u = _as_poly(ring, u)
    if c % p != 1:
        raise ConstructionError("this family has c = 1")
    if n == 0 or gcd(p, n) != 1:
        raise ConstructionError(f"need gcd(p, n) = 1 (got p={p}, n={n})")
    if evaluate(u, (1,)) == 0:
        raise ConstructionError(f"need u(1) != 0 (u = {u} vanishes at 1)")
    return degree_p(p, n, u, 1)


def theorem3(p: int, j: int) -> SimilarityPair:
    if not 1 <= j <= p - 1:
        raise ConstructionError(f"need 1 <= j <= p-1 (got j={j}, p={p})")
    return degree_p(p, 1, 1, j)


def classical_lamplighter() -> SimilarityPair:
    return theorem3(2, 1)


def theorem4(p: int, d: int) -> SimilarityPair:
    """Degree p^2 pair on C_p wr Z^d (d >= 2) with A0 the augmentation ideal."""
    if d < 2:
        raise ConstructionError(f"need d >= 2 (got d={d})")
    ring = LaurentRing(p, d)
    kind = AugmentationClosedForm()
    y = kind.base_lattice(ring)
    alpha = [kind.base_alpha(ring, row) for row in y.basis]
    return SimilarityPair(ring, kind.ideal(ring), y, (), VirtualEndo(alpha, kind))


CONSTRUCTIONS = {
    "classical_lamplighter": classical_lamplighter,
    "theorem2": theorem2,
    "theorem3": theorem3,
    "theorem4": theorem4,
    "degree_p": degree_p,
}


@dataclass
class RunConfig:
    construction: str = "theorem4"
    params: dict = field(default_factory=lambda: {"p": 2, "d": 2})
    pair_data: dict | None = None
    seed: int = 0
    max_states: int = 10_000
    max_word_length: int = 6
    depth: int = 8
    trials: int = 1000

    def build(self) -> SimilarityPair:
        if self.pair_data is not None:
            return pair_from_json(self.pair_data)
        try:
            factory = CONSTRUCTIONS[self.construction]
        except KeyError:
            raise ConstructionError(
                f"unknown construction {self.construction!r}; choose from {sorted(CONSTRUCTIONS)} or 'custom'"
            ) from None
        try:
            return factory(**self.params)
        except TypeError as exc:
            raise ConstructionError(f"bad parameters for {self.construction}: {exc}") from None

    @classmethod
    def from_dict(cls, data: dict, base: Path | None = None) -> "RunConfig":
        data = dict(data)
        if "ideal" in data and "mu" in data:  # a bare pair file
            return cls(construction="custom", params={}, pair_data=data)
        cfg = cls()
        name = data.pop("construction", cfg.construction)
        inline = {}
        if isinstance(name, dict):
            inline = {k: v for k, v in name.items() if k != "name"}
            name = name["name"]
        cfg.construction = name
        if name == "custom":
            pair = inline.pop("pair", None) or data.pop("pair", None)
            if isinstance(pair, str):
                path = Path(pair) if base is None else base / pair
                pair = json.loads(path.read_text())
            if not isinstance(pair, dict):
                raise ConstructionError("custom construction needs a 'pair' object or file name")
            cfg.pair_data = pair
            cfg.params = {}
        else:
            cfg.params = {**dict(data.pop("params", {})), **inline}
        for key in ("seed", "max_states", "max_word_length", "depth", "trials"):
            if key in data:
                setattr(cfg, key, int(data.pop(key)))
        if data:
            raise ConstructionError(f"unknown config keys: {sorted(data)}")
        return cfg

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        path = Path(path)
        return cls.from_dict(json.loads(path.read_text()), base=path.parent)


__all__ = [
    "ConstructionError",
    "RunConfig",
    "classical_lamplighter",
    "degree_p",
    "theorem2",
    "theorem3",
    "theorem4",
]
