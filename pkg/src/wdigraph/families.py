"""Constructors for the standard digraph families.

The eight dihedral templates are 2m-vertex cycles with two directed arcs from
the source a0 to the sink bm; the left arc alternates labels s,t,s,... and the
right arc t,s,t,...  Dashes occur only at the four extreme edges (the two out
of the source, the two into the sink) in the per-figure patterns below.

Also here: the twisted-involution digraph attached to an involutory diagram
automorphism, the left-regular digraph on all of W, and a handful of
named example digraphs used as fixtures throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

from .coxeter import CoxeterSystem, DiagramAutomorphism
from .digraph import DASHED, SOLID, Edge, SLabeledDigraph

# dash patterns, as subsets of the four extreme edge slots
_DASH_PATTERNS = {
    1: frozenset(),
    2: frozenset({"left_first", "right_last"}),
    3: frozenset({"right_first", "left_last"}),
    4: frozenset({"left_first", "right_first"}),
    5: frozenset({"left_last", "right_last"}),
    6: frozenset({"left_first", "right_first", "left_last", "right_last"}),
    7: frozenset(),
    8: frozenset({"left_first", "right_first", "left_last", "right_last"}),
}


@dataclass(frozen=True)
class FamilySpec:
    """Which template to build: figure 1..8, size parameter m, and the two labels."""

    figure: int
    m: int
    s: str = "s"
    t: str = "t"

    def __post_init__(self):
        if self.figure not in range(1, 9):
            raise ValueError("figure must be 1..8")
        if self.s == self.t:
            raise ValueError("the two labels must differ")
        if self.figure in (7, 8):
            if self.m != 1:
                raise ValueError("figures 7 and 8 have m = 1")
        elif self.m < 2:
            raise ValueError("figures 1-6 require m >= 2")


def family_arc_steps(spec: FamilySpec) -> tuple[list, list]:
    """The two arcs as (label, style) step lists from the source to the sink."""
    m, s, t = spec.m, spec.s, spec.t
    dashes = _DASH_PATTERNS[spec.figure]
    left = []
    right = []
    for i in range(1, m + 1):
        left_label = s if i % 2 == 1 else t
        right_label = t if i % 2 == 1 else s
        left_style = DASHED if (
            (i == 1 and "left_first" in dashes)
            or (i == m and "left_last" in dashes)) else SOLID
        right_style = DASHED if (
            (i == 1 and "right_first" in dashes)
            or (i == m and "right_last" in dashes)) else SOLID
        left.append((left_label, left_style))
        right.append((right_label, right_style))
    return left, right


def build_family(system: CoxeterSystem, spec: FamilySpec) -> SLabeledDigraph:
    """The 2m-vertex template digraph over the given system."""
    for g in (spec.s, spec.t):
        if g not in system.index:
            raise ValueError(f"generator {g!r} not in the system")
    m = spec.m
    left, right = family_arc_steps(spec)
    left_names = [f"a{i}" for i in range(m)] + [f"b{m}"]
    right_names = ["a0"] + [f"b{i}" for i in range(1, m + 1)]
    edges = []
    for i in range(m):
        label, style = left[i]
        edges.append(Edge(left_names[i], left_names[i + 1], label, style))
    for i in range(m):
        label, style = right[i]
        edges.append(Edge(right_names[i], right_names[i + 1], label, style))
    vertices = [f"a{i}" for i in range(m)] + [f"b{i}" for i in range(1, m + 1)]
    return SLabeledDigraph(system, vertices, edges)


def family_divisibility_ok(figure: int, m: int, n) -> bool:
    """The membership condition relating a template to the dihedral order n."""
    if n is inf:
        return False
    if figure in (7, 8):
        return m == 1 and n >= 2
    if m < 2:
        return False
    if figure in (1, 2, 3):
        return n % m == 0
    if figure in (4, 5):
        return n % (2 * m - 1) == 0
    if figure == 6:
        return n % (2 * m - 2) == 0
    raise ValueError("figure must be 1..8")


def build_lv(system: CoxeterSystem, star: DiagramAutomorphism,
             length_bound=None) -> SLabeledDigraph:
    """The digraph on twisted involutions x with star(x) = x^{-1}.

    For each vertex w and generator s with l(sw) > l(w): a solid edge
    w -> s w star(s) when sw != w star(s), and a dashed edge w -> sw when
    sw = w star(s).
    """
    involutions = system.twisted_involutions(star, length_bound)
    vertex_of = {x: str(x) for x in involutions}
    members = set(involutions)
    edges = []
    for w in involutions:
        for si in range(system.rank()):
            sw, delta = system.multiply_by_generator(w, si, "left")
            if delta < 0:
                continue
            ws = system.multiply_by_generator(w, star.apply_gen(si), "right")[0]
            if sw == ws:
                target = sw
                style = DASHED
            else:
                target = system.multiply_by_generator(sw, star.apply_gen(si),
                                                      "right")[0]
                style = SOLID
            if target in members:
                edges.append(Edge(vertex_of[w], vertex_of[target],
                                  system.generators[si], style))
    return SLabeledDigraph(system, [vertex_of[x] for x in involutions], edges)


def build_regular(system: CoxeterSystem, length_bound=None) -> SLabeledDigraph:
    """The left-Cayley digraph: solid x -> sx whenever that multiplies up."""
    elements = system.enumerate(length_bound)
    members = set(elements)
    edges = []
    for x in elements:
        for si in range(system.rank()):
            sx, delta = system.multiply_by_generator(x, si, "left")
            if delta > 0 and sx in members:
                edges.append(Edge(str(x), str(sx), system.generators[si], SOLID))
    return SLabeledDigraph(system, [str(x) for x in elements], edges)


# -- named example digraphs --------------------------------------------------------


def _affine_a2_system() -> CoxeterSystem:
    return CoxeterSystem(["r", "s", "t"],
                         {("r", "s"): 3, ("s", "t"): 3, ("r", "t"): 3})


def _b3_system() -> CoxeterSystem:
    return CoxeterSystem(["r", "s", "t"],
                         {("r", "s"): 3, ("s", "t"): 4, ("r", "t"): 2})


def _h3_system() -> CoxeterSystem:
    return CoxeterSystem(["r", "s", "t"],
                         {("r", "s"): 3, ("s", "t"): 5, ("r", "t"): 2})


def _a3_system() -> CoxeterSystem:
    return CoxeterSystem(["r", "s", "t"],
                         {("r", "s"): 3, ("s", "t"): 3, ("r", "t"): 2})


def build_example(name: str) -> SLabeledDigraph:
    """Named fixture digraphs, embedded as explicit vertex/edge data."""
    if name == "affine_a2_cycle":
        # two directed triangles joined by solid spokes; no source, no sink
        system = _affine_a2_system()
        edges = [
            ("a1", "a3", "s", SOLID), ("a3", "a2", "t", SOLID),
            ("a2", "a1", "r", SOLID),
            ("a1", "b1", "t", SOLID), ("a2", "b2", "s", SOLID),
            ("a3", "b3", "r", SOLID),
            ("b1", "b3", "s", SOLID), ("b3", "b2", "t", SOLID),
            ("b2", "b1", "r", SOLID),
        ]
        return SLabeledDigraph(system, ["a1", "a2", "a3", "b1", "b2", "b3"], edges)
    if name == "b3_no_bar":
        system = _b3_system()
        edges = [
            ("v0", "v2", "s", SOLID), ("v2", "v4", "r", SOLID),
            ("v2", "v4", "t", SOLID), ("v4", "v6", "s", SOLID),
            ("v0", "v1", "t", SOLID), ("v1", "v3", "s", SOLID),
            ("v3", "v5", "r", SOLID), ("v3", "v5", "t", SOLID),
            ("v5", "v7", "s", SOLID), ("v6", "v7", "t", SOLID),
            ("v0", "v8", "r", SOLID), ("v8", "v9", "t", SOLID),
            ("v1", "v9", "r", SOLID), ("v8", "v10", "s", SOLID),
            ("v10", "v6", "r", SOLID), ("v9", "v11", "s", SOLID),
            ("v10", "v11", "t", SOLID), ("v11", "v7", "r", SOLID),
        ]
        vertices = [f"v{i}" for i in range(12)]
        return SLabeledDigraph(system, vertices, edges)
    if name == "h3_nonselfassoc":
        system = _h3_system()
        edges = [
            ("a1", "a2", "s", DASHED),
            ("a1", "b1", "r", DASHED), ("a1", "b1", "t", DASHED),
            ("a2", "b2", "r", SOLID), ("b1", "b2", "s", SOLID),
            ("a2", "a3", "t", SOLID), ("b2", "b3", "t", SOLID),
            ("a3", "b3", "r", SOLID), ("a3", "b3", "s", SOLID),
        ]
        return SLabeledDigraph(system, ["a1", "a2", "a3", "b1", "b2", "b3"], edges)
    if name == "ex_fig2":
        system = CoxeterSystem.dihedral(3)
        edges = [
            ("g1", "g2", "s", DASHED), ("g2", "g3", "t", SOLID),
            ("g3", "g4", "s", SOLID), ("g1", "g6", "t", SOLID),
            ("g6", "g5", "s", SOLID), ("g5", "g4", "t", DASHED),
        ]
        return SLabeledDigraph(system, [f"g{i}" for i in range(1, 7)], edges)
    if name == "ex_fig3":
        system = _a3_system()
        edges = [
            ("g4", "g1", "t", SOLID), ("g3", "g1", "s", SOLID),
            ("g3", "g4", "r", DASHED), ("g2", "g1", "r", DASHED),
            ("g4", "g2", "s", SOLID), ("g3", "g2", "t", SOLID),
        ]
        return SLabeledDigraph(system, ["g1", "g2", "g3", "g4"], edges)
    raise ValueError(f"unknown example {name!r}")


EXAMPLE_NAMES = ("affine_a2_cycle", "b3_no_bar", "h3_nonselfassoc",
                 "ex_fig2", "ex_fig3")
