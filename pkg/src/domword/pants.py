"""Combinatorial curve-domain lattice over a pants decomposition.

A pants decomposition of a surface (g, b) is encoded as a trivalent
multigraph: one vertex per pair of pants, one edge per decomposition
curve (loops allowed), and per-vertex leg counts for surface boundary
components. Degree + legs = 3 at every vertex.

Domains are Fill-closed curve collections. Two kinds of connected piece:

* ``Annulus(e)``: the regular neighborhood of decomposition curve e.
* ``Block(V, E)``: the subsurface made of the pants in V glued along the
  interior edges E (a connected subgraph). Its curve set consists of all
  essential curves of that subsurface, boundary included.

A domain is a set of pairwise-orthogonal pieces in canonical form: no
pants blocks (they carry no essential curves beyond their boundary), and
no annulus retained when a block in the set already carries that curve.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .surfaces import Signature, curve_system_size, max_chain_length

ANNULAR = "annular"


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class PantsGraph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]  # sorted pairs; index is the edge id
    legs: tuple[int, ...]

    def __post_init__(self):
        if len(self.legs) != self.n_vertices:
            raise ValueError("legs tuple must match vertex count")
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            if not (0 <= u <= v < self.n_vertices):
                raise ValueError("edge endpoints out of range or unsorted")
            deg[u] += 1
            deg[v] += 1  # loops count twice
        for v in range(self.n_vertices):
            if self.legs[v] < 0 or deg[v] + self.legs[v] != 3:
                raise ValueError("every vertex needs degree + legs == 3")
        if self.n_vertices and not self._connected(range(self.n_vertices), range(len(self.edges))):
            raise ValueError("pants graph must be connected")

    def _connected(self, vertices, edge_ids) -> bool:
        verts = set(vertices)
        if not verts:
            return False
        adj: dict[int, set[int]] = {v: set() for v in verts}
        for e in edge_ids:
            u, v = self.edges[e]
            if u in verts and v in verts:
                adj[u].add(v)
                adj[v].add(u)
        seen = set()
        stack = [next(iter(verts))]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v] - seen)
        return seen == verts

    @property
    def signature(self) -> Signature:
        g = len(self.edges) - self.n_vertices + 1
        return Signature(g, sum(self.legs))

    def incident(self, v: int) -> frozenset[int]:
        return frozenset(e for e, (a, b) in enumerate(self.edges) if v in (a, b))

    def to_json(self) -> dict:
        return {
            "vertices": self.n_vertices,
            "edges": [list(e) for e in self.edges],
            "legs": list(self.legs),
        }


def dumbbell_graph() -> PantsGraph:
    """Genus-2 closed: two one-holed tori joined by a bridge curve."""
    return PantsGraph(2, ((0, 0), (1, 1), (0, 1)), (0, 0))


def theta_graph() -> PantsGraph:
    """Genus-2 closed: two pants glued along all three boundary circles."""
    return PantsGraph(2, ((0, 1), (0, 1), (0, 1)), (0, 0))


def enumerate_pants_graphs(sig: Signature) -> list[PantsGraph]:
    """All pants decompositions of (g, b), one per isomorphism class."""
    n = 2 * sig.g - 2 + sig.b
    m = 3 * sig.g - 3 + sig.b
    if n < 1:
        raise ValueError(f"no pants decomposition exists: {sig}")
    if n > 8:
        raise ValueError("vertex count too large for exhaustive enumeration")
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    found: dict[tuple, PantsGraph] = {}

    def rec(idx: int, remaining: int, deg: tuple[int, ...], chosen: tuple):
        if remaining == 0:
            legs = tuple(3 - d for d in deg)
            try:
                graph = PantsGraph(n, chosen, legs)
            except ValueError:
                return  # disconnected or over-degree
            found.setdefault(_iso_key(graph), graph)
            return
        if idx == len(pairs):
            return
        i, j = pairs[idx]
        inc = 2 if i == j else 1
        for copies in range(remaining + 1):
            di = deg[i] + copies * inc
            dj = deg[j] + copies if i != j else di
            if di > 3 or dj > 3:
                break
            deg2 = list(deg)
            deg2[i] = di
            deg2[j] = dj
            rec(idx + 1, remaining - copies, tuple(deg2), chosen + ((i, j),) * copies)

    rec(0, m, (0,) * n, ())
    return sorted(found.values(), key=_iso_key)


def _iso_key(graph: PantsGraph) -> tuple:
    n = graph.n_vertices
    best = None
    for perm in itertools.permutations(range(n)):
        edges = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in graph.edges))
        legs = tuple(graph.legs[perm.index(v)] for v in range(n))
        key = (edges, legs)
        if best is None or key < best:
            best = key
    return (n, best)


# ---------------------------------------------------------------- pieces


@dataclass(frozen=True, order=True)
class Annulus:
    edge: int


@dataclass(frozen=True)
class Block:
    vertices: frozenset[int]
    interior: frozenset[int]

    def sort_key(self):
        return (tuple(sorted(self.vertices)), tuple(sorted(self.interior)))


Piece = Annulus | Block
Domain = frozenset  # frozenset[Piece]

EMPTY: Domain = frozenset()


def piece_key(p: Piece):
    if isinstance(p, Annulus):
        return (0, p.edge, ())
    return (1, min(p.vertices), p.sort_key())


# ---------------------------------------------------------------- backend


class PantsBackend:
    """Lattice operations for the domains of one pants decomposition."""

    def __init__(self, graph: PantsGraph):
        self.graph = graph
        self._pieces: tuple[Piece, ...] | None = None
        self._domains: tuple[Domain, ...] | None = None
        self._contains_cache: dict = {}
        self._orth_cache: dict = {}

    # -- piece-level helpers

    def _endpoints(self, e: int) -> tuple[int, int]:
        return self.graph.edges[e]

    def _touches(self, e: int, vertices: frozenset[int]) -> bool:
        u, v = self._endpoints(e)
        return u in vertices or v in vertices

    def realize(self, d: Domain):
        """Signature of a connected canonical domain; annuli get ANNULAR."""
        if not self.is_canonical(d) or len(d) != 1:
            raise ValueError("non-canonical domain")
        (p,) = d
        if isinstance(p, Annulus):
            return ANNULAR
        return self._block_signature(p)

    def _block_signature(self, blk: Block) -> Signature:
        g = len(blk.interior) - len(blk.vertices) + 1
        b = sum(self.graph.legs[v] for v in blk.vertices)
        for e, (u, v) in enumerate(self.graph.edges):
            if e in blk.interior:
                continue
            inside = (u in blk.vertices) + (v in blk.vertices)
            if inside == 1:
                b += 1
            elif inside == 2:
                b += 2  # both sides of the curve bound the subsurface
        return Signature(g, b)

    def _block_ok(self, blk: Block) -> bool:
        if not blk.vertices:
            return False
        for e in blk.interior:
            u, v = self._endpoints(e)
            if u not in blk.vertices or v not in blk.vertices:
                return False
        return self.graph._connected(blk.vertices, blk.interior)

    def _is_pants_block(self, blk: Block) -> bool:
        return self._block_signature(blk) == Signature(0, 3)

    def piece_contained(self, p: Piece, q: Piece) -> bool:
        if isinstance(p, Annulus):
            if isinstance(q, Annulus):
                return p.edge == q.edge
            return self._touches(p.edge, q.vertices)
        if isinstance(q, Annulus):
            return False
        return p.vertices <= q.vertices and p.interior <= q.interior

    def piece_orthogonal(self, p: Piece, q: Piece) -> bool:
        if isinstance(p, Annulus) and isinstance(q, Annulus):
            return True
        if isinstance(p, Annulus):
            return p.edge not in q.interior
        if isinstance(q, Annulus):
            return q.edge not in p.interior
        return not (p.vertices & q.vertices)

    # -- canonical form

    def is_canonical(self, d: Domain) -> bool:
        for p in d:
            if isinstance(p, Block):
                if not self._block_ok(p) or self._is_pants_block(p):
                    return False
        for p, q in itertools.combinations(d, 2):
            if not self.piece_orthogonal(p, q):
                return False
        blocks = [p for p in d if isinstance(p, Block)]
        for p in d:
            if isinstance(p, Annulus):
                if any(self._touches(p.edge, b.vertices) for b in blocks):
                    return False
        return True

    def assemble(self, pieces) -> Domain:
        """Normalize a curve-compatible piece collection to canonical form."""
        blocks = [p for p in pieces if isinstance(p, Block)]
        annuli = {p for p in pieces if isinstance(p, Annulus)}
        # merge blocks sharing a pants
        merged = True
        while merged:
            merged = False
            for i, j in itertools.combinations(range(len(blocks)), 2):
                if blocks[i].vertices & blocks[j].vertices:
                    a, b = blocks[i], blocks[j]
                    blocks = [blk for k, blk in enumerate(blocks) if k not in (i, j)]
                    blocks.append(Block(a.vertices | b.vertices, a.interior | b.interior))
                    merged = True
                    break
        # pants blocks carry only their boundary curves
        kept_blocks = []
        for blk in blocks:
            if self._is_pants_block(blk):
                for e in range(len(self.graph.edges)):
                    if self._touches(e, blk.vertices):
                        annuli.add(Annulus(e))
            else:
                kept_blocks.append(blk)
        out: set[Piece] = set(kept_blocks)
        for a in annuli:
            if not any(self._touches(a.edge, blk.vertices) for blk in kept_blocks):
                out.add(a)
        return frozenset(out)

    # -- lattice operations

    def is_connected(self, d: Domain) -> bool:
        return len(d) == 1

    def is_empty(self, d: Domain) -> bool:
        return not d

    def full_domain(self) -> Domain:
        verts = frozenset(range(self.graph.n_vertices))
        return frozenset({Block(verts, frozenset(range(len(self.graph.edges))))})

    def contains(self, outer: Domain, inner: Domain) -> bool:
        key = (outer, inner)
        hit = self._contains_cache.get(key)
        if hit is None:
            hit = all(any(self.piece_contained(p, q) for q in outer) for p in inner)
            self._contains_cache[key] = hit
        return hit

    def orthogonal(self, d1: Domain, d2: Domain) -> bool:
        key = (d1, d2)
        hit = self._orth_cache.get(key)
        if hit is None:
            hit = all(self.piece_orthogonal(p, q) for p in d1 for q in d2)
            self._orth_cache[key] = hit
        return hit

    def join(self, d1: Domain, d2: Domain) -> Domain:
        return self.assemble(set(d1) | set(d2))

    def meet(self, d1: Domain, d2: Domain) -> Domain:
        inside = [
            p
            for p in self.connected_pieces()
            if self.contains(d1, frozenset({p})) and self.contains(d2, frozenset({p}))
        ]
        return self.assemble(inside)

    def complement(self, d: Domain) -> Domain:
        blocks = [p for p in d if isinstance(p, Block)]
        cores = {p.edge for p in d if isinstance(p, Annulus)}
        interior = set().union(*(b.interior for b in blocks)) if blocks else set()
        used = set().union(*(b.vertices for b in blocks)) if blocks else set()
        avail = set(range(self.graph.n_vertices)) - used
        pieces: set[Piece] = set()
        for e in range(len(self.graph.edges)):
            if e not in interior:
                pieces.add(Annulus(e))
        # components of the available pants glued along unused curves
        usable = [
            e
            for e, (u, v) in enumerate(self.graph.edges)
            if u in avail and v in avail and e not in cores
        ]
        for comp_vs, comp_es in self._components(avail, usable):
            pieces.add(Block(frozenset(comp_vs), frozenset(comp_es)))
        return self.assemble(pieces)

    def _components(self, vertices_set, edge_ids):
        verts = set(vertices_set)
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
        for e in edge_ids:
            u, v = self._endpoints(e)
            adj[u].append((v, e))
            if u != v:
                adj[v].append((u, e))
        seen: set[int] = set()
        for start in sorted(verts):
            if start in seen:
                continue
            comp_vs, comp_es = set(), set()
            stack = [start]
            while stack:
                v = stack.pop()
                if v in comp_vs:
                    continue
                comp_vs.add(v)
                seen.add(v)
                for w, e in adj[v]:
                    comp_es.add(e)
                    if w not in comp_vs:
                        stack.append(w)
            yield comp_vs, comp_es

    def boundary(self, d: Domain) -> Domain:
        return self.meet(d, self.complement(d))

    def is_transverse(self, d1: Domain, d2: Domain) -> bool:
        if self.orthogonal(d1, d2):
            return False
        return not self.contains(d1, d2) and not self.contains(d2, d1)

    def strongly_orthogonal(self, d1: Domain, d2: Domain) -> bool:
        """Orthogonal, and d2 does not sit inside the boundary of d1."""
        if not self.orthogonal(d1, d2):
            return False
        if self.is_empty(d2):
            return True
        return not self.contains(self.boundary(d1), d2)

    def decompose_connected(self, d: Domain) -> tuple[Domain, ...]:
        return tuple(frozenset({p}) for p in sorted(d, key=piece_key))

    def complexity_of(self, d: Domain) -> int:
        """Chain complexity 3g' + b' - 2 of a connected domain; annuli 0."""
        if len(d) != 1:
            raise ValueError("complexity is defined for connected domains")
        (p,) = d
        if isinstance(p, Annulus):
            return 0
        s = self._block_signature(p)
        return 3 * s.g + s.b - 2

    def cut_signatures(self, cut_edges) -> tuple[Signature, ...]:
        """Signatures of the pieces left after cutting the given curves.

        Pants pieces are reported as (0, 3), not dissolved into annuli;
        the cut annuli themselves are not listed.
        """
        cut = set(cut_edges)
        usable = [
            e
            for e, (u, v) in enumerate(self.graph.edges)
            if e not in cut
        ]
        sigs = [
            self._block_signature(Block(frozenset(vs), frozenset(es)))
            for vs, es in self._components(range(self.graph.n_vertices), usable)
        ]
        return tuple(sorted(sigs, key=lambda s: (s.g, s.b)))

    # -- enumeration

    def connected_pieces(self) -> tuple[Piece, ...]:
        if self._pieces is not None:
            return self._pieces
        pieces: list[Piece] = [Annulus(e) for e in range(len(self.graph.edges))]
        n = self.graph.n_vertices
        for r in range(1, n + 1):
            for vs in itertools.combinations(range(n), r):
                vset = frozenset(vs)
                internal = [
                    e
                    for e, (u, v) in enumerate(self.graph.edges)
                    if u in vset and v in vset
                ]
                for k in range(len(internal) + 1):
                    for es in itertools.combinations(internal, k):
                        blk = Block(vset, frozenset(es))
                        if self._block_ok(blk) and not self._is_pants_block(blk):
                            pieces.append(blk)
        self._pieces = tuple(pieces)
        return self._pieces

    def connected_domains(self) -> tuple[Domain, ...]:
        return tuple(frozenset({p}) for p in self.connected_pieces())

    def all_domains(self) -> tuple[Domain, ...]:
        """Every canonical domain, the empty one included."""
        if self._domains is not None:
            return self._domains
        pieces = self.connected_pieces()

        def compatible(p: Piece, q: Piece) -> bool:
            if not self.piece_orthogonal(p, q):
                return False
            for a, blk in ((p, q), (q, p)):
                if isinstance(a, Annulus) and isinstance(blk, Block):
                    if self._touches(a.edge, blk.vertices):
                        return False
            return True

        out: list[Domain] = []

        def rec(start: int, chosen: list[Piece]):
            out.append(frozenset(chosen))
            for i in range(start, len(pieces)):
                if all(compatible(pieces[i], c) for c in chosen):
                    chosen.append(pieces[i])
                    rec(i + 1, chosen)
                    chosen.pop()

        rec(0, [])
        self._domains = tuple(sorted(set(out), key=self.domain_sort_key))
        return self._domains

    # -- word-backend protocol: trivial group, absorber pool

    @property
    def identity(self):
        return ()

    def multiply(self, a, b):
        if a != () or b != ():
            raise ValueError("pants backend carries only the trivial group")
        return ()

    def invert(self, a):
        if a != ():
            raise ValueError("pants backend carries only the trivial group")
        return ()

    def act_on_domain(self, g, d: Domain) -> Domain:
        return d

    def is_D_related(self, g, d: Domain) -> bool:
        return True  # the identity stabilizes everything

    def is_orthogonal_g(self, g, d: Domain) -> bool:
        return True

    def group_sort_key(self, g):
        return ()

    def empty_domain(self) -> Domain:
        return EMPTY

    def absorber_candidates(self, dom_values) -> tuple[Domain, ...]:
        return self.connected_domains()

    def absorbable_suffixes(self, g, dom_values):
        return []  # the trivial group has no factors worth splitting off

    def absorbable_prefixes(self, g, dom_values):
        return []

    # -- ordering and serialization

    def domain_sort_key(self, d: Domain):
        return (len(d), tuple(sorted(piece_key(p) for p in d)))

    def domain_to_json(self, d: Domain) -> list:
        out = []
        for p in sorted(d, key=piece_key):
            if isinstance(p, Annulus):
                out.append({"annulus": p.edge})
            else:
                out.append(
                    {
                        "block": {
                            "vertices": sorted(p.vertices),
                            "interior": sorted(p.interior),
                        }
                    }
                )
        return out


# ---------------------------------------------------------------- chains


def enumerate_chains(sig: Signature) -> tuple[int, list]:
    """Longest strict chain of connected domains over all decompositions.

    Returns (length, witness) where the witness is a list of
    (graph, [domains]) pairs, one maximal chain for one graph attaining
    the bound. Chains run from the smallest domain up to the full surface.
    """
    expect = max_chain_length(sig)  # raises on sub-minimal signatures
    best_len = 0
    best_witness = None
    for graph in enumerate_pants_graphs(sig):
        be = PantsBackend(graph)
        pieces = be.connected_pieces()
        doms = [frozenset({p}) for p in pieces]
        order = sorted(range(len(doms)), key=lambda i: be.complexity_of(doms[i]))
        longest: dict[int, tuple[int, list[int]]] = {}
        for i in order:
            cur = (1, [i])
            for j in order:
                if j == i:
                    continue
                if j in longest and be.contains(doms[i], doms[j]) and doms[i] != doms[j]:
                    cand_len, cand_path = longest[j]
                    if cand_len + 1 > cur[0]:
                        cur = (cand_len + 1, cand_path + [i])
            longest[i] = cur
        for i, (length, path) in longest.items():
            if length > best_len:
                best_len = length
                best_witness = (graph, [doms[k] for k in path])
    assert best_witness is not None
    del expect  # formula agreement is asserted by callers, not forced here
    graph, chain = best_witness
    return best_len, [graph, chain]
