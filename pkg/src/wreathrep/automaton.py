"""Mealy automata built from state closures, with matrix and graph exports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from .laurent import LaurentRing
from .wreath import Permutation, WreathElement, element_name, format_element, parse_element


class AlignmentError(ValueError):
    """A reference state name did not resolve to a group element."""


@dataclass
class MealyAutomaton:
    ring: LaurentRing
    m: int
    states: list
    transitions: list  # transitions[s][letter] -> state index
    outputs: list  # outputs[s] -> Permutation

    def __post_init__(self):
        n = len(self.states)
        if len(self.transitions) != n or len(self.outputs) != n:
            raise ValueError("states, transitions and outputs differ in length")
        for row, out in zip(self.transitions, self.outputs):
            if len(row) != self.m or out.degree != self.m:
                raise ValueError("row width differs from the alphabet size")
            if any(not 0 <= t < n for t in row):
                raise ValueError("transition leaves the state set")

    def __len__(self):
        return len(self.states)

    @property
    def names(self) -> list[str]:
        return [element_name(g) for g in self.states]

    @property
    def canonical_names(self) -> list[str]:
        return [format_element(g) for g in self.states]

    def index_of(self, g: WreathElement) -> int:
        return self.states.index(g)

    def default_order(self) -> list[int]:
        """Identity first (when present), then discovery order."""
        ident = [k for k, g in enumerate(self.states) if g.is_identity()]
        return ident + [k for k in range(len(self.states)) if k not in ident]

    def is_closed(self) -> bool:
        n = len(self.states)
        return all(0 <= t < n for row in self.transitions for t in row)

    def to_json(self) -> dict:
        return {
            "degree": self.m,
            "states": [
                {"name": element_name(g), "element": format_element(g), "output": str(out), "next": list(row)}
                for g, row, out in zip(self.states, self.transitions, self.outputs)
            ],
        }


def incidence_matrix(aut: MealyAutomaton, order: Sequence[int] | None = None) -> list[list[int]]:
    """Entry (s, t) counts the letters taking state s to state t."""
    order = list(aut.default_order() if order is None else order)
    pos = {k: i for i, k in enumerate(order)}
    out = [[0] * len(order) for _ in order]
    for k in order:
        for t in aut.transitions[k]:
            out[pos[k]][pos[t]] += 1
    return out


def matrix_csv(aut: MealyAutomaton, order: Sequence[int] | None = None) -> str:
    order = list(aut.default_order() if order is None else order)
    names = [format_element(aut.states[k]) for k in order]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["state"] + names)
    for name, row in zip(names, incidence_matrix(aut, order)):
        w.writerow([name] + row)
    return buf.getvalue()


def export_dot(aut: MealyAutomaton, name: str = "automaton") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    order = aut.default_order()
    for k in order:
        label = format_element(aut.states[k]).replace('"', r"\"")
        lines.append(f'  s{k} [label="{label}"];')
    for k in order:
        out = aut.outputs[k]
        for letter, t in enumerate(aut.transitions[k]):
            lines.append(f'  s{k} -> s{t} [label="{letter}|{out(letter)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class MatrixDiff:
    missing: list = field(default_factory=list)  # reference names with no computed state
    extra: list = field(default_factory=list)  # computed states absent from the reference
    cells: list = field(default_factory=list)  # (row name, column name, reference, computed)

    @property
    def empty(self) -> bool:
        return not (self.missing or self.extra or self.cells)

    def unexplained(self, errata: Sequence[dict] = ()) -> list:
        """Cell mismatches not accounted for by a listed erratum."""
        known = {(e["row"], e["col"], e["tabulated"], e["recomputed"]) for e in errata}
        return [c for c in self.cells if c not in known]

    def to_json(self) -> dict:
        return {
            "missing": self.missing,
            "extra": self.extra,
            "cells": [{"row": r, "col": c, "reference": a, "computed": b} for r, c, a, b in self.cells],
            "empty": self.empty,
        }


def compare_to_reference(aut: MealyAutomaton, reference: dict) -> MatrixDiff:
    """Align states by element names and diff the incidence matrices.

    ``reference`` holds ``states`` (element names) and ``matrix`` (rows in
    that order). Names are parsed into elements, so any spelling accepted by
    :func:`parse_element` works.
    """
    names = list(reference["states"])
    matrix = reference["matrix"]
    if len(matrix) != len(names) or any(len(r) != len(names) for r in matrix):
        raise AlignmentError("reference matrix shape does not match its state list")
    elems = []
    for nm in names:
        try:
            elems.append(parse_element(aut.ring, nm))
        except ValueError as exc:
            raise AlignmentError(f"cannot resolve reference state {nm!r}: {exc}") from exc
    if len(set(elems)) != len(elems):
        raise AlignmentError("reference names two equal elements")
    index = {g: k for k, g in enumerate(aut.states)}
    diff = MatrixDiff()
    present = []
    for nm, g in zip(names, elems):
        if g in index:
            present.append((nm, index[g]))
        else:
            diff.missing.append(nm)
    ref_set = set(elems)
    diff.extra = [element_name(g) for g in aut.states if g not in ref_set]
    full = incidence_matrix(aut, list(range(len(aut.states))))
    ref_pos = {nm: i for i, nm in enumerate(names)}
    for rn, rk in present:
        for cn, ck in present:
            want = matrix[ref_pos[rn]][ref_pos[cn]]
            got = full[rk][ck]
            if want != got:
                diff.cells.append((rn, cn, want, got))
    return diff


def load_reference(name: str = "c2_wr_z2_x1_reference.json") -> dict:
    text = resources.files("wreathrep").joinpath("data", name).read_text()
    return json.loads(text)


def identity_automaton(ring: LaurentRing, m: int) -> MealyAutomaton:
    return MealyAutomaton(ring, m, [WreathElement.identity(ring)], [(0,) * m], [Permutation.identity(m)])
