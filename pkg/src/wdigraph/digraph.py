"""Labeled directed multigraphs with solid/dashed edges, one edge per label
at each vertex, plus the derived graphs and structural analyses used by the
classification and module machinery: restrictions, reversal, component scans,
sources/sinks/acyclicity, directed path lengths, incoming-label statistics,
label-preserving isomorphism, and JSON/DOT serialization.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .coxeter import CoxeterSystem

SOLID = "solid"
DASHED = "dashed"


class Edge(NamedTuple):
    src: str
    dst: str
    label: str
    style: str


class SLabeledDigraph:
    """Vertices plus generator-labeled solid/dashed directed edges.

    Edges are kept in canonical (label, src, dst, style) order so that
    serialization and equality are deterministic.  Vertex order is meaningful:
    it fixes the basis order of the associated module.
    """

    def __init__(self, system: CoxeterSystem, vertices: Iterable[str],
                 edges: Iterable[tuple]):
        self.system = system
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        parsed = []
        for e in edges:
            edge = Edge(*e)
            if edge.style not in (SOLID, DASHED):
                raise ValueError(f"bad edge style {edge.style!r}")
            if edge.src not in self.vertex_index or edge.dst not in self.vertex_index:
                raise ValueError(f"edge {edge} references unknown vertex")
            if edge.label not in system.index:
                raise ValueError(f"edge {edge} has a label outside the system")
            parsed.append(edge)
        vi = self.vertex_index
        self.edges = tuple(sorted(
            parsed, key=lambda e: (e.label, vi[e.src], vi[e.dst], e.style)))

    # -- invariant checking ------------------------------------------------------

    def validate_structure(self) -> list[str]:
        """All violations of the defining invariants (empty list means ok)."""
        problems = []
        for e in self.edges:
            if e.src == e.dst:
                problems.append(f"loop at {e.src} labeled {e.label}")
        counts = {(v, g): 0 for v in self.vertices for g in self.system.generators}
        for e in self.edges:
            counts[(e.src, e.label)] += 1
            if e.src != e.dst:
                counts[(e.dst, e.label)] += 1
        for (v, g), c in sorted(counts.items()):
            if c != 1:
                problems.append(f"vertex {v} meets {c} edges labeled {g}")
        return problems

    # -- derived digraphs ----------------------------------------------------------

    def restrict(self, J: Iterable) -> "SLabeledDigraph":
        """Same vertices, only edges labeled by elements of J."""
        Jnames = {self.system.generators[self.system._gen_index(s)] for s in J}
        return SLabeledDigraph(self.system, self.vertices,
                               [e for e in self.edges if e.label in Jnames])

    def reverse(self) -> "SLabeledDigraph":
        return SLabeledDigraph(self.system, self.vertices,
                               [Edge(e.dst, e.src, e.label, e.style)
                                for e in self.edges])

    def to_solid(self) -> "SLabeledDigraph":
        return SLabeledDigraph(self.system, self.vertices,
                               [Edge(e.src, e.dst, e.label, SOLID)
                                for e in self.edges])

    def arrows(self) -> list[tuple[str, str]]:
        """The unlabeled directed view: one (src, dst) pair per edge."""
        return [(e.src, e.dst) for e in self.edges]

    def undirected_edges(self) -> list[frozenset]:
        """The underlying undirected multigraph, as endpoint pairs."""
        return [frozenset((e.src, e.dst)) for e in self.edges]

    def out_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.src == v]

    def in_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.dst == v]

    def successors(self, v: str) -> list[str]:
        """Heads of directed edges out of v (styles ignored, as in the arrow view)."""
        return [e.dst for e in self.edges if e.src == v]

    def undirected_neighbors(self, v: str) -> list[str]:
        out = []
        for e in self.edges:
            if e.src == v:
                out.append(e.dst)
            elif e.dst == v:
                out.append(e.src)
        return out

    # -- structural analysis ----------------------------------------------------------

    def components(self) -> list[list[str]]:
        """Connected components of the underlying undirected multigraph."""
        seen = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = []
            stack = [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.undirected_neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp, key=self.vertex_index.get))
        return comps

    def sources(self) -> list[str]:
        with_in = {e.dst for e in self.edges}
        return [v for v in self.vertices if v not in with_in]

    def sinks(self) -> list[str]:
        with_out = {e.src for e in self.edges}
        return [v for v in self.vertices if v not in with_out]

    def is_acyclic(self) -> bool:
        """No nonempty directed circuit in the arrow view."""
        order = {v: 0 for v in self.vertices}  # 0 new, 1 active, 2 done
        adjacency = {v: [] for v in self.vertices}
        for e in self.edges:
            adjacency[e.src].append(e.dst)
        for root in self.vertices:
            if order[root]:
                continue
            stack = [(root, iter(adjacency[root]))]
            order[root] = 1
            while stack:
                v, it = stack[-1]
                advanced = False
                for w in it:
                    if order[w] == 1:
                        return False
                    if order[w] == 0:
                        order[w] = 1
                        stack.append((w, iter(adjacency[w])))
                        advanced = True
                        break
                if not advanced:
                    order[v] = 2
                    stack.pop()
        return True

    def analyze(self) -> "ComponentAnalysis":
        comps = self.components()
        details = []
        for comp in comps:
            sub = self.subgraph(comp)
            details.append(ComponentDetail(
                vertices=tuple(comp),
                sources=tuple(sub.sources()),
                sinks=tuple(sub.sinks()),
                acyclic=sub.is_acyclic(),
            ))
        return ComponentAnalysis(tuple(details))

    def subgraph(self, vertex_subset: Iterable[str]) -> "SLabeledDigraph":
        keep = set(vertex_subset)
        verts = [v for v in self.vertices if v in keep]
        return SLabeledDigraph(self.system, verts,
                               [e for e in self.edges
                                if e.src in keep and e.dst in keep])

    def path_length_mu(self, alpha: str, beta: str):
        """Minimum number of edges in a directed path, or None if unreachable."""
        if alpha == beta:
            return 0
        dist = {alpha: 0}
        queue = deque([alpha])
        while queue:
            v = queue.popleft()
            for w in self.successors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    if w == beta:
                        return dist[w]
                    queue.append(w)
        return dist.get(beta)

    def reachable_from(self, alpha: str) -> set[str]:
        seen = {alpha}
        queue = deque([alpha])
        while queue:
            v = queue.popleft()
            for w in self.successors(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def equal_path_lengths_check(self):
        """None if any two directed paths between equal endpoints agree in length.

        Otherwise a counterexample (alpha, beta, length1, length2).  On cyclic
        input the circuit itself is the counterexample (a vertex reaches itself
        by the empty path and by the circuit).
        """
        cycle_vertex = self._vertex_on_cycle()
        if cycle_vertex is not None:
            length = self._cycle_length_through(cycle_vertex)
            return (cycle_vertex, cycle_vertex, 0, length)
        # acyclic: longest path lengths by DP over a topological order
        topo = self._topological_order()
        adjacency = {v: [] for v in self.vertices}
        for e in self.edges:
            adjacency[e.src].append(e.dst)
        for alpha in self.vertices:
            shortest = {alpha: 0}
            longest = {alpha: 0}
            queue = deque([alpha])
            while queue:
                v = queue.popleft()
                for w in adjacency[v]:
                    if w not in shortest:
                        shortest[w] = shortest[v] + 1
                        queue.append(w)
                    else:
                        shortest[w] = min(shortest[w], shortest[v] + 1)
            for v in topo:
                if v in longest:
                    for w in adjacency[v]:
                        cand = longest[v] + 1
                        if longest.get(w, -1) < cand:
                            longest[w] = cand
            for beta in self.vertices:
                if beta in shortest and shortest[beta] != longest[beta]:
                    return (alpha, beta, shortest[beta], longest[beta])
        return None

    def _vertex_on_cycle(self):
        for v in self.vertices:
            for w in self.successors(v):
                if v in self.reachable_from(w):
                    return v
        return None

    def _cycle_length_through(self, v: str) -> int:
        best = None
        for e in self.out_edges(v):
            back = self.path_length_mu(e.dst, v)
            if back is not None and (best is None or back + 1 < best):
                best = back + 1
        return best

    def _topological_order(self) -> list[str]:
        indeg = {v: 0 for v in self.vertices}
        adjacency = {v: [] for v in self.vertices}
        for e in self.edges:
            adjacency[e.src].append(e.dst)
            indeg[e.dst] += 1
        queue = deque(v for v in self.vertices if indeg[v] == 0)
        out = []
        while queue:
            v = queue.popleft()
            out.append(v)
            for w in adjacency[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        if len(out) != len(self.vertices):
            raise ValueError("topological order requested on a cyclic digraph")
        return out

    # -- incoming-label statistics ---------------------------------------------------------

    def in_label_set(self, beta: str) -> frozenset[str]:
        """Labels of edges (either style) coming into beta."""
        return frozenset(e.label for e in self.edges if e.dst == beta)

    def descent_counts(self) -> dict[frozenset, int]:
        """How many vertices have each incoming-label set."""
        counts: dict[frozenset, int] = {}
        for v in self.vertices:
            key = self.in_label_set(v)
            counts[key] = counts.get(key, 0) + 1
        return counts

    # -- isomorphism --------------------------------------------------------------------------

    def labeled_isomorphic(self, other: "SLabeledDigraph"):
        """A label/style/direction-preserving bijection, or None.

        Backtracking seeded by local vertex signatures; exact and adequate at
        the scales this library works with.
        """
        if set(self.system.generators) != set(other.system.generators):
            return None
        if len(self.vertices) != len(other.vertices) or len(self.edges) != len(other.edges):
            return None

        def signature(g: "SLabeledDigraph", v: str):
            incident = []
            for e in g.edges:
                if e.src == v:
                    incident.append(("out", e.label, e.style))
                if e.dst == v:
                    incident.append(("in", e.label, e.style))
            return tuple(sorted(incident))

        sig1 = {v: signature(self, v) for v in self.vertices}
        sig2 = {v: signature(other, v) for v in other.vertices}
        if sorted(sig1.values()) != sorted(sig2.values()):
            return None

        edge_set2 = set(other.edges)
        # match rarest signatures first to cut branching
        rarity = {}
        for v, s in sig1.items():
            rarity.setdefault(s, []).append(v)
        order = sorted(self.vertices, key=lambda v: (len(rarity[sig1[v]]), v))
        candidates = {v: [w for w in other.vertices if sig2[w] == sig1[v]]
                      for v in self.vertices}
        adjacency: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adjacency[e.src].append(e)
            adjacency[e.dst].append(e)

        mapping: dict[str, str] = {}
        used: set[str] = set()

        def consistent(v: str, w: str) -> bool:
            for e in adjacency[v]:
                a, b = e.src, e.dst
                ia, ib = mapping.get(a), mapping.get(b)
                if a == v:
                    ia = w
                if b == v:
                    ib = w
                if ia is not None and ib is not None:
                    if Edge(ia, ib, e.label, e.style) not in edge_set2:
                        return False
            return True

        def backtrack(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            for w in candidates[v]:
                if w in used or not consistent(v, w):
                    continue
                mapping[v] = w
                used.add(w)
                if backtrack(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
            return False

        if backtrack(0):
            return dict(mapping)
        return None

    # -- unions, equality, serialization ----------------------------------------------------------

    def disjoint_union(self, other: "SLabeledDigraph",
                       suffixes=("", "'")) -> "SLabeledDigraph":
        if self.system is not other.system:
            raise ValueError("disjoint union requires a shared system")
        a, b = suffixes
        verts = [v + a for v in self.vertices] + [v + b for v in other.vertices]
        edges = ([Edge(e.src + a, e.dst + a, e.label, e.style) for e in self.edges]
                 + [Edge(e.src + b, e.dst + b, e.label, e.style) for e in other.edges])
        return SLabeledDigraph(self.system, verts, edges)

    def same_structure(self, other: "SLabeledDigraph") -> bool:
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.system.generators == other.system.generators
                and self.system.matrix == other.system.matrix)

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "vertices": list(self.vertices),
            "edges": [{"from": e.src, "to": e.dst, "label": e.label,
                       "style": e.style} for e in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["digraph G {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            attrs = f'label="{e.label}"'
            if e.style == DASHED:
                attrs += ", style=dashed"
            lines.append(f'  "{e.src}" -> "{e.dst}" [{attrs}];')
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self):
        return (f"SLabeledDigraph({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges)")


@dataclass(frozen=True)
class ComponentDetail:
    vertices: tuple[str, ...]
    sources: tuple[str, ...]
    sinks: tuple[str, ...]
    acyclic: bool


@dataclass(frozen=True)
class ComponentAnalysis:
    components: tuple[ComponentDetail, ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_sources(self) -> int:
        return sum(len(c.sources) for c in self.components)

    @property
    def n_sinks(self) -> int:
        return sum(len(c.sinks) for c in self.components)

    @property
    def n_acyclic(self) -> int:
        return sum(1 for c in self.components if c.acyclic)

    @property
    def all_acyclic(self) -> bool:
        return all(c.acyclic for c in self.components)


def load_digraph(source, base_dir: str | None = None) -> SLabeledDigraph:
    """Load a digraph from a JSON dict or file path.

    The "system" entry may be inline or a path to a system file, resolved
    relative to the digraph file when one was given.
    """
    if isinstance(source, (str, os.PathLike)):
        base_dir = os.path.dirname(os.fspath(source))
        with open(source) as fh:
            data = json.load(fh)
    else:
        data = source
    sysdata = data["system"]
    if isinstance(sysdata, str):
        path = sysdata if os.path.isabs(sysdata) or base_dir is None \
            else os.path.join(base_dir, sysdata)
        system = CoxeterSystem.from_json(path)
    else:
        system = CoxeterSystem.from_json(sysdata)
    edges = [(e["from"], e["to"], e["label"], e["style"]) for e in data["edges"]]
    return SLabeledDigraph(system, data["vertices"], edges)
