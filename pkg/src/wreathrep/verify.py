"""Verification suites shared by the command line and the test-suite.

Each suite returns a JSON-ready dict with a boolean ``ok``.
"""

from __future__ import annotations

import random

from .automaton import compare_to_reference, incidence_matrix, load_reference
from .similarity import check_skew_condition
from .tree import (
    DEFAULT_MAX_STATES,
    DEFAULT_WORD_LENGTH,
    Action,
    RepContext,
    is_trivial_action,
    kernel_scan,
    state_closure,
    verify_closed_form,
)
from .wreath import WreathElement, element_name, parse_element

SUITES = ("relations", "skew", "closed_forms", "kernel", "matrix")


def relation_checks(ctx: RepContext, seed: int = 0, samples: int = 10, max_states: int = DEFAULT_MAX_STATES) -> dict:
    """Defining relations act trivially; generators do not."""
    ring = ctx.ring
    rng = random.Random(seed)
    a = WreathElement.a(ring)
    xs = [WreathElement.gen_x(ring, i) for i in range(1, ring.d + 1)]
    checks = [("a^p", a ** ring.p, Action.TRIVIAL)]
    for _ in range(samples):
        v = tuple(rng.randint(-4, 4) for _ in range(ring.d))
        conj = a.conjugate(WreathElement.x(ring, v))
        checks.append((f"[a, a^x^{v}]", a.commutator(conj), Action.TRIVIAL))
    for i in range(ring.d):
        for j in range(i + 1, ring.d):
            checks.append((f"[x{i + 1}, x{j + 1}]", xs[i].commutator(xs[j]), Action.TRIVIAL))
    checks.append(("a", a, Action.NONTRIVIAL))
    for i, x in enumerate(xs, start=1):
        checks.append((f"x{i}", x, Action.NONTRIVIAL))
    results = []
    for name, g, want in checks:
        got = is_trivial_action(ctx, g, max_states)
        results.append({"check": name, "expected": want.value, "got": got.value, "ok": got is want})
    return {"suite": "relations", "ok": all(r["ok"] for r in results), "checks": results}


def skew_checks(ctx: RepContext, seed: int = 0, trials: int = 1000) -> dict:
    rep = check_skew_condition(ctx.pair, trials, seed)
    return {"suite": "skew", **rep.to_json()}


def closed_form_checks(ctx: RepContext) -> dict:
    return {"suite": "closed_forms", **verify_closed_form(ctx).to_json()}


def kernel_checks(
    ctx: RepContext, max_word_length: int = DEFAULT_WORD_LENGTH, max_states: int = DEFAULT_MAX_STATES
) -> dict:
    return {"suite": "kernel", **kernel_scan(ctx, max_word_length, max_states).to_json()}


def matrix_checks(ctx: RepContext, reference: dict | None = None, max_states: int = DEFAULT_MAX_STATES) -> dict:
    """Compare the automaton of the reference element with the stored table.

    Mismatches listed as errata in the reference file are reported but do
    not fail the suite; anything else does.
    """
    reference = load_reference() if reference is None else reference
    ring = ctx.ring
    if (ring.p, ring.d) != (reference.get("p"), reference.get("d")):
        return {"suite": "matrix", "ok": False, "error": "reference is for a different group"}
    g = parse_element(ring, reference.get("element", "x1"))
    aut = state_closure(ctx, g, max_states)
    if aut is None:
        return {"suite": "matrix", "ok": False, "error": "not shown finite-state within bound"}
    diff = compare_to_reference(aut, reference)
    errata = reference.get("errata", [])
    left = diff.unexplained(errata)
    return {
        "suite": "matrix",
        "ok": not (diff.missing or diff.extra or left),
        "states": len(aut),
        "names": [element_name(s) for s in aut.states],
        "matrix": incidence_matrix(aut),
        "diff": diff.to_json(),
        "errata_applied": [e for e in errata if (e["row"], e["col"], e["tabulated"], e["recomputed"]) in diff.cells],
        "unexplained": [{"row": r, "col": c, "reference": a, "computed": b} for r, c, a, b in left],
    }


def run_suite(ctx: RepContext, suite: str, seed: int = 0, **opts) -> dict:
    if suite == "relations":
        return relation_checks(ctx, seed, max_states=opts.get("max_states", DEFAULT_MAX_STATES))
    if suite == "skew":
        return skew_checks(ctx, seed, opts.get("trials", 1000))
    if suite == "closed_forms":
        return closed_form_checks(ctx)
    if suite == "kernel":
        return kernel_checks(
            ctx, opts.get("max_word_length", DEFAULT_WORD_LENGTH), opts.get("max_states", DEFAULT_MAX_STATES)
        )
    if suite == "matrix":
        return matrix_checks(ctx, max_states=opts.get("max_states", DEFAULT_MAX_STATES))
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
