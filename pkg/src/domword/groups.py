"""Symbolic mapping classes over a pants decomposition.

Two kinds of generators are declared: twists about decomposition curves
(identity action on the pants graph, supported in the curve's annulus)
and graph automorphisms (with the support they honestly need). The
group they generate is represented exactly as a semidirect product:

    element = (twist vector over the edges, graph automorphism)

Multiplication permutes the right factor's twist coordinates by the
left factor's automorphism. This keeps the support function equivariant
under conjugation, supp(g h g^-1) = g(supp(h)), which the rewriting
layer depends on: a factor buried behind an automorphism letter is
still visible as an absorbable factor after conjugating it out. A free
group on the generator names would assign the conjugate full support
and lose it.

A generator must fix every piece lying in the complement of its
support: that is what makes "support" meaningful, and it is what the
D-relation test below relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pants import Annulus, Block, Domain, EMPTY, PantsBackend, PantsGraph, dumbbell_graph


@dataclass(frozen=True)
class GraphAut:
    """Automorphism of a pants graph: a vertex and an edge permutation."""

    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.vertex_map)) and all(
            i == e for i, e in enumerate(self.edge_map)
        )


def identity_aut(graph: PantsGraph) -> GraphAut:
    return GraphAut(
        tuple(range(graph.n_vertices)), tuple(range(len(graph.edges)))
    )


def compose_auts(a: GraphAut, b: GraphAut) -> GraphAut:
    """The automorphism acting as `a after b`."""
    return GraphAut(
        tuple(a.vertex_map[v] for v in b.vertex_map),
        tuple(a.edge_map[e] for e in b.edge_map),
    )


def invert_aut(aut: GraphAut) -> GraphAut:
    vm = [0] * len(aut.vertex_map)
    em = [0] * len(aut.edge_map)
    for i, v in enumerate(aut.vertex_map):
        vm[v] = i
    for i, e in enumerate(aut.edge_map):
        em[e] = i
    return GraphAut(tuple(vm), tuple(em))


def _validate_aut(graph: PantsGraph, aut: GraphAut):
    if sorted(aut.vertex_map) != list(range(graph.n_vertices)):
        raise ValueError("vertex map is not a permutation")
    if sorted(aut.edge_map) != list(range(len(graph.edges))):
        raise ValueError("edge map is not a permutation")
    for e, (u, v) in enumerate(graph.edges):
        iu, iv = aut.vertex_map[u], aut.vertex_map[v]
        u2, v2 = graph.edges[aut.edge_map[e]]
        if {iu, iv} != {u2, v2}:
            raise ValueError("edge map disagrees with vertex map")
    for v in range(graph.n_vertices):
        if graph.legs[v] != graph.legs[aut.vertex_map[v]]:
            raise ValueError("legs must be preserved")


@dataclass(frozen=True)
class Generator:
    name: str
    support: Domain
    aut: GraphAut


# a group element: (twist exponents indexed by edge, graph automorphism)
Elem = tuple


class SymbolicBackend(PantsBackend):
    """Pants-domain lattice plus an exact twist-and-automorphism group."""

    def __init__(self, graph: PantsGraph, generators: dict[str, Generator]):
        super().__init__(graph)
        self.generators = dict(generators)
        self.n_edges = len(graph.edges)
        for gen in self.generators.values():
            _validate_aut(graph, gen.aut)
            comp = self.complement(gen.support)
            for piece in self.connected_pieces():
                single = frozenset({piece})
                if self.contains(comp, single):
                    if self._apply_aut_domain(gen.aut, single) != single:
                        raise ValueError(
                            f"generator {gen.name} moves a piece outside its support"
                        )
            if gen.aut.is_identity():
                pieces = tuple(gen.support)
                if len(pieces) != 1 or not isinstance(pieces[0], Annulus):
                    raise ValueError(
                        f"generator {gen.name} acts trivially on the graph, so it "
                        "must be a twist supported in a single decomposition annulus"
                    )

    # -- group arithmetic

    @property
    def identity(self) -> Elem:
        return (tuple([0] * self.n_edges), identity_aut(self.graph))

    def gen(self, name: str, power: int = 1) -> Elem:
        if name not in self.generators:
            raise ValueError(f"unknown generator {name!r}")
        g = self.generators[name]
        if g.aut.is_identity():
            edge = next(iter(g.support)).edge
            vec = [0] * self.n_edges
            vec[edge] = power
            return (tuple(vec), g.aut if power else identity_aut(self.graph))
        aut = identity_aut(self.graph)
        step = g.aut if power >= 0 else invert_aut(g.aut)
        for _ in range(abs(power)):
            aut = compose_auts(step, aut)
        return (tuple([0] * self.n_edges), aut)

    def _permute_vec(self, aut: GraphAut, vec) -> tuple:
        out = [0] * len(vec)
        for e, k in enumerate(vec):
            out[aut.edge_map[e]] = k
        return tuple(out)

    def multiply(self, a: Elem, b: Elem) -> Elem:
        va, aa = a
        vb, ab = b
        moved = self._permute_vec(aa, vb)
        return (tuple(x + y for x, y in zip(va, moved)), compose_auts(aa, ab))

    def invert(self, a: Elem) -> Elem:
        v, aut = a
        inv = invert_aut(aut)
        return (tuple(-x for x in self._permute_vec(inv, v)), inv)

    def _apply_aut_domain(self, aut: GraphAut, d: Domain) -> Domain:
        out = set()
        for p in d:
            if isinstance(p, Annulus):
                out.add(Annulus(aut.edge_map[p.edge]))
            else:
                out.add(
                    Block(
                        frozenset(aut.vertex_map[v] for v in p.vertices),
                        frozenset(aut.edge_map[e] for e in p.interior),
                    )
                )
        return frozenset(out)

    def act_on_domain(self, g: Elem, d: Domain) -> Domain:
        _, aut = g
        if aut.is_identity():
            return d
        return self._apply_aut_domain(aut, d)

    def support_of(self, g: Elem) -> Domain:
        """Least domain the element is supported in: the annuli it
        twists about joined with everything its automorphism moves."""
        v, aut = g
        total = EMPTY
        for e, k in enumerate(v):
            if k:
                total = self.join(total, frozenset({Annulus(e)}))
        if not aut.is_identity():
            for piece in self.connected_pieces():
                single = frozenset({piece})
                image = self._apply_aut_domain(aut, single)
                if image != single:
                    total = self.join(total, self.join(single, image))
        return total

    def is_D_related(self, g: Elem, d: Domain) -> bool:
        return self.contains(d, self.support_of(g))

    def is_orthogonal_g(self, g: Elem, d: Domain) -> bool:
        return self.act_on_domain(g, d) == d

    def group_sort_key(self, g: Elem):
        v, aut = g
        return (tuple(v), aut.vertex_map, aut.edge_map)

    def absorbable_suffixes(self, g: Elem, dom_values):
        """(factor, target) pairs: each factor is a single twist that
        splits off the right of g by an inverse Cmp and lands in
        dom_values[target] after jumping right.

        Right-splitting a twist off (v, a) cancels the coordinate of v
        at the automorphism image of the factor's curve, so the factor
        clearing coordinate e twists about the preimage curve. Single
        twists are exhaustive: the twist part is abelian, so any
        absorbable factor clears coordinate by coordinate.
        """
        v, aut = g
        inv = invert_aut(aut)
        out = []
        for e, k in enumerate(v):
            if not k:
                continue
            f = inv.edge_map[e]
            supp = frozenset({Annulus(f)})
            vec = [0] * self.n_edges
            vec[f] = k
            h = (tuple(vec), identity_aut(self.graph))
            for i, d in enumerate(dom_values):
                if self.contains(d, supp):
                    out.append((h, i))
        return out

    def absorbable_prefixes(self, g: Elem, dom_values):
        v, _ = g
        out = []
        for e, k in enumerate(v):
            if not k:
                continue
            supp = frozenset({Annulus(e)})
            vec = [0] * self.n_edges
            vec[e] = k
            h = (tuple(vec), identity_aut(self.graph))
            for i, d in enumerate(dom_values):
                if self.contains(d, supp):
                    out.append((h, i))
        return out

    def group_to_json(self, g: Elem):
        v, aut = g
        return {
            "twists": list(v),
            "vertex_map": list(aut.vertex_map),
            "edge_map": list(aut.edge_map),
        }


def dumbbell_symbolic_backend() -> SymbolicBackend:
    """The genus-two surface with three standard symbolic mapping classes.

    twist_a and twist_c act trivially on the pants graph (a Dehn twist
    fixes every curve of the decomposition) and are supported on the
    annuli of the loop curve a and the separating curve c. sigma swaps
    the two one-holed tori, so its support is the whole surface.
    """
    graph = dumbbell_graph()
    be_probe = PantsBackend(graph)
    ident = identity_aut(graph)
    swap = GraphAut((1, 0), (1, 0, 2))
    gens = {
        "twist_a": Generator("twist_a", frozenset({Annulus(0)}), ident),
        "twist_c": Generator("twist_c", frozenset({Annulus(2)}), ident),
        "sigma": Generator("sigma", be_probe.full_domain(), swap),
    }
    return SymbolicBackend(graph, gens)
