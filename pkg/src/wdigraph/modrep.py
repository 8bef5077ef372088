"""The module attached to a labeled digraph and everything computed from it.

Each generator acts through a block-structured operator: along its edge
pairing, the tail/head of a solid edge and of a dashed edge see the four
coefficient patterns

    solid:   tail -> head;            head -> u^2 tail + (u^2-1) head
    dashed:  tail -> u tail + (u+1) head;
             head -> (u^2-u) tail + (u^2-u-1) head

so each operator has at most two nonzero entries per column.  The class below
keeps that pairing explicitly and applies operators sparsely; dense matrices
are materialized only on demand.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import inf
from typing import Iterable, Sequence

from .coxeter import GroupElement
from .digraph import DASHED, SOLID, SLabeledDigraph
from .exactalg import (RF_ONE, RF_U, RF_ZERO, RatFunc, RatMatrix, rf,
                       sigma as sigma_map, solve_simultaneous_eigenspace)
from .hecke import HeckeElt, invert_Tw

U2 = RF_U * RF_U
U2M1 = U2 - RF_ONE                      # u^2 - 1
U_PLUS_1 = rf([1, 1])                   # u + 1
U2MU = rf([0, -1, 1])                   # u^2 - u
U2MUM1 = rf([-1, -1, 1])                # u^2 - u - 1
MINUS_ONE = rf(-1)

# per-column (self, partner) coefficient patterns, keyed by (role, style)
_TAU_CASES = {
    ("tail", SOLID): (RF_ZERO, RF_ONE),
    ("head", SOLID): (U2M1, U2),
    ("tail", DASHED): (RF_U, U_PLUS_1),
    ("head", DASHED): (U2MUM1, U2MU),
}


class ModuleRep:
    """Generator actions on the free module over a digraph's vertex set."""

    def __init__(self, digraph: SLabeledDigraph):
        self.digraph = digraph
        self.system = digraph.system
        self.n = len(digraph.vertices)
        index = digraph.vertex_index
        # pairing[s][i] = (partner index, role, style) for the s-edge at vertex i
        self.pairing: list[list[tuple | None]] = [
            [None] * self.n for _ in range(self.system.rank())]
        for e in digraph.edges:
            s = self.system._gen_index(e.label)
            a, b = index[e.src], index[e.dst]
            if self.pairing[s][a] is not None or self.pairing[s][b] is not None:
                raise ValueError(f"vertex meets two edges labeled {e.label}")
            self.pairing[s][a] = (b, "tail", e.style)
            self.pairing[s][b] = (a, "head", e.style)
        for s in range(self.system.rank()):
            for i in range(self.n):
                if self.pairing[s][i] is None:
                    raise ValueError(
                        f"vertex {digraph.vertices[i]} has no edge labeled "
                        f"{self.system.generators[s]}")
        self._rho_cache: dict[GroupElement, RatMatrix] = {}

    # -- the generator operators -------------------------------------------------------

    def tau_apply(self, s, vec: list[RatFunc]) -> list[RatFunc]:
        """Apply the generator operator to a coefficient vector, sparsely."""
        si = self.system._gen_index(s)
        pairing = self.pairing[si]
        out = [RF_ZERO] * self.n
        for i, c in enumerate(vec):
            if not c.num.coeffs:
                continue
            partner, role, style = pairing[i]
            self_c, partner_c = _TAU_CASES[(role, style)]
            if self_c.num.coeffs:
                out[i] = out[i] + self_c * c
            out[partner] = out[partner] + partner_c * c
        return out

    def tau_apply_cols(self, s, cols: list[list[RatFunc]]) -> list[list[RatFunc]]:
        return [self.tau_apply(s, col) for col in cols]

    def tau_matrix(self, s) -> RatMatrix:
        cols = self.tau_apply_cols(s, _identity_cols(self.n))
        return _cols_to_matrix(cols)

    def word_apply_cols(self, word: Iterable[int],
                        cols: list[list[RatFunc]]) -> list[list[RatFunc]]:
        """Apply tau_{s_1} ... tau_{s_k} (leftmost acting last) to columns."""
        for s in reversed(tuple(word)):
            cols = self.tau_apply_cols(s, cols)
        return cols

    # -- the algebra representation ----------------------------------------------------------

    def rho(self, w: GroupElement) -> RatMatrix:
        """The matrix of the basis element T_w, built up the canonical word."""
        cached = self._rho_cache.get(w)
        if cached is not None:
            return cached
        if not w.word:
            m = RatMatrix.identity(self.n)
        else:
            s = w.word[0]
            rest = GroupElement(self.system, w.word[1:])
            prev = self.rho(rest)
            m = _cols_to_matrix(self.tau_apply_cols(
                s, [list(col) for col in zip(*prev.rows)]))
        self._rho_cache[w] = m
        return m

    def rho_elt(self, h: HeckeElt) -> RatMatrix:
        """Extend rho linearly to a finitely supported combination."""
        if h.system is not self.system:
            raise ValueError("element from a different system")
        out = RatMatrix.zero(self.n)
        for w, c in h.coeffs.items():
            out = out + self.rho(w).scale(c)
        return out

    def character(self, w: GroupElement) -> RatFunc:
        return self.rho(w).trace()

    def character_elt(self, h: HeckeElt) -> RatFunc:
        out = RF_ZERO
        for w, c in h.coeffs.items():
            out = out + c * self.character(w)
        return out


def _identity_cols(n: int) -> list[list[RatFunc]]:
    return [[RF_ONE if i == j else RF_ZERO for i in range(n)] for j in range(n)]


def _cols_to_matrix(cols: list[list[RatFunc]]) -> RatMatrix:
    return RatMatrix(list(zip(*cols)))


def tau_matrix(digraph: SLabeledDigraph, s) -> RatMatrix:
    return ModuleRep(digraph).tau_matrix(s)


def rho(digraph: SLabeledDigraph, w: GroupElement) -> RatMatrix:
    return ModuleRep(digraph).rho(w)


def character(digraph: SLabeledDigraph, w: GroupElement) -> RatFunc:
    return ModuleRep(digraph).character(w)


# -- linear character eigenspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class LinearCharacterDims:
    dim_ind: int
    dim_sgn: int
    predicted_ind: int
    predicted_sgn: int
    sgn_weights: dict | None


def sgn_eigenvector_weights(digraph: SLabeledDigraph):
    """Edge-weight products from each component source: -1/u^2 per solid edge,
    -(u+1)/(u^2-u) per dashed edge.  None if some component lacks a source or
    has inconsistent products (a circuit)."""
    analysis = digraph.analyze()
    weights: dict[str, RatFunc] = {}
    w_solid = rf(-1, [0, 0, 1])
    w_dashed = rf([-1, -1], [0, -1, 1])
    for comp in analysis.components:
        if len(comp.sources) != 1 or not comp.acyclic:
            return None
        src = comp.sources[0]
        weights[src] = RF_ONE
        sub = digraph.subgraph(comp.vertices)
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for e in sub.out_edges(v):
                step = w_solid if e.style == SOLID else w_dashed
                candidate = weights[v] * step
                if e.dst in weights:
                    if weights[e.dst] != candidate:
                        return None
                else:
                    weights[e.dst] = candidate
                    queue.append(e.dst)
    return weights


def linear_char_dims(digraph: SLabeledDigraph) -> LinearCharacterDims:
    """Eigenspace dimensions for the two linear characters, with the
    structural predictions (component count; acyclic component count)."""
    rep = ModuleRep(digraph)
    mats = [rep.tau_matrix(s) for s in range(digraph.system.rank())]
    dim_ind = len(solve_simultaneous_eigenspace(mats, [U2] * len(mats),
                                                dim=rep.n))
    dim_sgn = len(solve_simultaneous_eigenspace(mats, [MINUS_ONE] * len(mats),
                                                dim=rep.n))
    analysis = digraph.analyze()
    return LinearCharacterDims(
        dim_ind=dim_ind,
        dim_sgn=dim_sgn,
        predicted_ind=analysis.n_components,
        predicted_sgn=analysis.n_acyclic,
        sgn_weights=sgn_eigenvector_weights(digraph),
    )


# -- reversal identities ---------------------------------------------------------------------------


@dataclass
class IdentityReport:
    word: str
    twist_matrix: bool | None = None
    twist_trace: bool | None = None
    sign_matrix: bool | None = None
    sign_trace: bool | None = None
    skipped: str | None = None


def _sign_diagonal(digraph: SLabeledDigraph):
    """(-1)^(distance from the component source), as a diagonal sign list."""
    analysis = digraph.analyze()
    signs = [None] * len(digraph.vertices)
    for comp in analysis.components:
        if len(comp.sources) != 1 or not comp.acyclic:
            return None
        src = comp.sources[0]
        sub = digraph.subgraph(comp.vertices)
        for v in comp.vertices:
            mu = sub.path_length_mu(src, v)
            if mu is None:
                return None
            signs[digraph.vertex_index[v]] = -1 if mu % 2 else 1
    return signs


def reversal_identities(digraph: SLabeledDigraph,
                        words: Sequence[GroupElement]) -> list[IdentityReport]:
    """Check the two matrix-level reversal identities and their traces.

    For each test word w:
      twist: rho_rev(T_w) equals the entrywise u -> -1/u image of
             rho(T_{w^{-1}}^{-1});
      sign:  rho_rev(T_w) equals eps_w u_w (D rho(T_w^{-1}) D)^T with D the
             source-distance sign diagonal (requires acyclicity).
    """
    rep = ModuleRep(digraph)
    rev = ModuleRep(digraph.reverse())
    signs = _sign_diagonal(digraph)
    reports = []
    for w in words:
        report = IdentityReport(word=str(w))
        lhs = rev.rho(w)
        rhs1 = rep.rho_elt(invert_Tw(w.inverse())).apply_entrywise(sigma_map)
        report.twist_matrix = lhs == rhs1
        report.twist_trace = lhs.trace() == rhs1.trace()
        if signs is None:
            report.skipped = "sign identity needs acyclic components with sources"
        else:
            eps = -1 if w.length % 2 else 1
            uw = RF_U ** (2 * w.length)
            inner = rep.rho_elt(invert_Tw(w))
            conj = RatMatrix([[inner.rows[i][j] if signs[i] == signs[j]
                               else -inner.rows[i][j]
                               for j in range(rep.n)] for i in range(rep.n)])
            rhs2 = conj.transpose().scale(uw if eps == 1 else -uw)
            report.sign_matrix = lhs == rhs2
            report.sign_trace = lhs.trace() == rhs2.trace()
        reports.append(report)
    return reports


# -- the 0-specialization action -----------------------------------------------------------------


def zero_hecke_action(digraph: SLabeledDigraph, w: GroupElement, alpha: str
                      ) -> tuple[int, str]:
    """Apply the degenerate generators along a reduced word of w.

    Each generator follows its edge out of the current vertex if one leaves
    it, and otherwise negates; the result is always +/- one vertex.
    """
    sign, v = 1, alpha
    gens = digraph.system.generators
    out_by_label = {}
    for e in digraph.edges:
        out_by_label[(e.src, e.label)] = e.dst
    for s in reversed(w.word):
        dst = out_by_label.get((v, gens[s]))
        if dst is None:
            sign = -sign
        else:
            v = dst
    return sign, v


# -- bar operator propagation ------------------------------------------------------------------------


@dataclass
class BarSolution:
    images: dict | None
    consistent: bool
    witness: tuple | None = None


def bar_from_source(digraph: SLabeledDigraph) -> BarSolution:
    """Try to build the additive bijection fixing the source.

    The image of the source is itself; along a solid edge the head's image is
    rho(T_s)^{-1} applied to the tail's image, and along a dashed edge it is
    u/(u+1) (rho(T_s)^{-1} - 1/u) applied to it.  Propagation follows a BFS
    spanning tree of the arrow view, scanning each vertex's out-edges in
    canonical (label-first) order; a non-tree edge is a pure consistency
    check performed at the moment it is encountered, and the first failing
    edge is the witness.
    """
    analysis = digraph.analyze()
    if analysis.n_components != 1:
        raise ValueError("bar propagation needs a connected digraph")
    sources = analysis.components[0].sources
    if len(sources) != 1:
        raise ValueError("bar propagation needs a unique source")
    source = sources[0]
    rep = ModuleRep(digraph)
    n = rep.n

    inv_cache: dict[tuple, RatMatrix] = {}

    def edge_operator(label: str, style: str) -> RatMatrix:
        si = digraph.system._gen_index(label)
        key = (si, style)
        cached = inv_cache.get(key)
        if cached is not None:
            return cached
        tau = rep.tau_matrix(si)
        # rho(T_s)^{-1} = u^{-2} (tau - (u^2-1))
        tinv = (tau - RatMatrix.identity(n).scale(U2M1)).scale(RF_U ** (-2))
        if style == SOLID:
            op = tinv
        else:
            # (1/u + 1)^{-1} (rho(T_s)^{-1} - 1/u)
            factor = rf([0, 1], [1, 1])  # u/(u+1)
            op = (tinv - RatMatrix.identity(n).scale(RF_U ** (-1))).scale(factor)
        inv_cache[key] = op
        return op

    images: dict[str, list[RatFunc]] = {}
    images[source] = [RF_ONE if digraph.vertices[i] == source else RF_ZERO
                      for i in range(n)]
    queue = deque([source])
    tree_reached = {source}
    while queue:
        v = queue.popleft()
        for e in digraph.out_edges(v):
            op = edge_operator(e.label, e.style)
            propagated = op.apply_vector(images[v])
            if e.dst not in tree_reached:
                images[e.dst] = propagated
                tree_reached.add(e.dst)
                queue.append(e.dst)
            elif propagated != images[e.dst]:
                return BarSolution(images=None, consistent=False,
                                   witness=(e, propagated, images[e.dst]))
    if len(tree_reached) != n:
        raise ValueError("not every vertex is reachable from the source")
    return BarSolution(images=images, consistent=True)


# -- theorem-level checkers ------------------------------------------------------------------------


@dataclass
class TheoremReport:
    source_sink: dict = field(default_factory=dict)
    index_bound: dict = field(default_factory=dict)
    vertex_bound: dict = field(default_factory=dict)
    equal_lengths: dict = field(default_factory=dict)
    wgraph_obstruction: dict = field(default_factory=dict)


def theorem_checkers(digraph: SLabeledDigraph) -> TheoremReport:
    """Structured pass/fail/not-applicable report for the structure theorems."""
    report = TheoremReport()
    system = digraph.system
    analysis = digraph.analyze()
    finite_order = all(system.order(i, j) is not inf
                       for i in range(system.rank())
                       for j in range(system.rank()))
    finite_w = system.is_finite()

    if finite_order:
        per_comp_ok = all(len(c.sources) <= 1 and len(c.sinks) <= 1
                          for c in analysis.components)
        has_src_implies_acyclic = all(
            c.acyclic for c in analysis.components
            if c.sources or c.sinks)
        entry = {"status": "pass" if per_comp_ok and has_src_implies_acyclic
                 else "fail",
                 "unique_per_component": per_comp_ok}
        if finite_w:
            both = all(len(c.sources) == 1 and len(c.sinks) == 1
                       for c in analysis.components)
            entry["finite_has_both"] = both
            entry["acyclic"] = analysis.all_acyclic
            entry["counts_match_components"] = (
                analysis.n_sources == analysis.n_components
                == analysis.n_sinks)
            if not (both and analysis.all_acyclic
                    and entry["counts_match_components"]):
                entry["status"] = "fail"
        report.source_sink = entry
    else:
        report.source_sink = {"status": "not-applicable",
                              "reason": "some order is infinite"}

    if finite_w and analysis.n_components == 1:
        full = system.enumerate()
        results = {}
        ok = True
        gens = system.generators
        for mask in range(1 << len(gens)):
            J = [gens[i] for i in range(len(gens)) if mask & (1 << i)]
            wj, xj = system.parabolic_data(J)
            bound = len(full) // len(wj)
            comps = len(digraph.restrict(J).components())
            results["".join(J) or "empty"] = (comps, bound)
            ok = ok and comps <= bound
        report.index_bound = {"status": "pass" if ok else "fail",
                              "per_subset": results}
        report.vertex_bound = {
            "status": "pass" if len(digraph.vertices) <= len(full) else "fail",
            "vertices": len(digraph.vertices),
            "group_order": len(full),
            "attained": len(digraph.vertices) == len(full)}
    else:
        reason = ("infinite group" if not finite_w else "not connected")
        report.index_bound = {"status": "not-applicable", "reason": reason}
        report.vertex_bound = {"status": "not-applicable", "reason": reason}

    counterexample = digraph.equal_path_lengths_check()
    applicable = finite_order and all(c.sources or c.sinks
                                      for c in analysis.components)
    if not applicable:
        report.equal_lengths = {"status": "not-applicable",
                                "counterexample": counterexample}
    elif counterexample is None:
        report.equal_lengths = {"status": "pass"}
    else:
        report.equal_lengths = {"status": "fail",
                                "counterexample": counterexample}

    # obstruction: with finite proper parabolics, a finite connected digraph
    # affording a rational cell-graph module must be acyclic; so a cyclic one
    # cannot afford any
    proper_finite = _proper_parabolics_finite(system)
    connected = analysis.n_components == 1
    if proper_finite and connected and not analysis.all_acyclic:
        dims = linear_char_dims(digraph)
        counts = digraph.descent_counts()
        report.wgraph_obstruction = {
            "status": "fires",
            "message": "no W-graph over the rationals can afford this module",
            "evidence": {
                "sinks": analysis.n_sinks,
                "dim_sgn": dims.dim_sgn,
                "n_in_empty": counts.get(frozenset(), 0),
                "n_in_full": counts.get(frozenset(system.generators), 0),
            },
        }
    else:
        report.wgraph_obstruction = {
            "status": "not-applicable" if analysis.all_acyclic or not connected
            or not proper_finite else "unknown"}
    return report


def _proper_parabolics_finite(system) -> bool:
    from .coxeter import CoxeterSystem
    gens = system.generators
    for drop in range(len(gens)):
        keep = [g for i, g in enumerate(gens) if i != drop]
        orders = {}
        for i, a in enumerate(keep):
            for b in keep[i + 1:]:
                orders[(a, b)] = system.order(a, b)
        if any(v is inf for v in orders.values()):
            return False
        if not CoxeterSystem(keep, orders).is_finite():
            return False
    return True
