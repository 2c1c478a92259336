"""Markov graph model: the complete graph on the postcritical set.

Independent reconstruction of the transition matrix: each edge is subdivided
into one arc per entry of its separation set plus one, each arc mapped onto
the edge (or vertex) spanned by the images of consecutive representatives.
The incidence matrix of this Markov map must coincide entrywise with the
pair-space matrix; the cross-check is the module's purpose, so nothing here
calls into the pair-space construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .angles import Angle, tau
from .portrait import CriticalPortrait, post_set, separation_set
from .spectral import SparseMatrix


@dataclass(frozen=True)
class WedgeGraph:
    """Complete graph on post(Theta); a singleton vertex is its own trivial edge."""

    vertices: tuple
    edges: tuple  # sorted (a, b) vertex pairs with a <= b


@dataclass(frozen=True)
class SubdivisionArc:
    parent_edge: tuple
    position: int
    image: tuple  # (a, b) edge with a <= b, or (v, v) for a vertex


@dataclass(frozen=True)
class MarkovMapL:
    arcs: dict  # edge -> tuple of SubdivisionArc


def _edge(x: Angle, y: Angle):
    return (x, y) if x <= y else (y, x)


def build_graph_model(P: CriticalPortrait):
    """Construct the graph and its Markov map from separation sets.

    Representatives are the largest angle of each crossed element, on purpose
    a different choice than the pair-space construction makes; representative
    independence says the incidence counts cannot notice.
    """
    d = P.degree
    vertices = tuple(post_set(P))
    if len(vertices) == 1:
        v = vertices[0]
        edge = (v, v)
        arc = SubdivisionArc(edge, 0, edge)
        return WedgeGraph(vertices, (edge,)), MarkovMapL({edge: (arc,)})
    edges = tuple(
        (vertices[i], vertices[j])
        for i in range(len(vertices))
        for j in range(i + 1, len(vertices))
    )
    edges = tuple(sorted(edges))
    arcs = {}
    for edge in edges:
        x, y = edge
        sep = separation_set(x, y, P)
        reps = [P.elements[k - 1].angles[-1] for k in sep]
        chain = [x, *reps, y]
        pieces = []
        for pos, (u, v) in enumerate(zip(chain, chain[1:])):
            pieces.append(SubdivisionArc(edge, pos, _edge(tau(u, d), tau(v, d))))
        arcs[edge] = tuple(pieces)
    return WedgeGraph(vertices, edges), MarkovMapL(arcs)


def incidence_matrix(G: WedgeGraph, L: MarkovMapL) -> SparseMatrix:
    """Entry (e, e') counts arcs of e covering e'; vertex images cover nothing."""
    index = {e: i for i, e in enumerate(G.edges)}
    counts = {}
    for edge, pieces in L.arcs.items():
        r = index[edge]
        for arc in pieces:
            a, b = arc.image
            if a == b and len(G.vertices) > 1:
                continue  # collapsed to a vertex
            c = index[arc.image]
            counts[(r, c)] = counts.get((r, c), 0) + 1
    triplets = tuple(sorted((r, c, n) for (r, c), n in counts.items()))
    return SparseMatrix(len(G.edges), triplets)


def dump_model(G: WedgeGraph, L: MarkovMapL):
    """Per edge, the ordered arc list with images (debug aid)."""
    lines = []
    for edge in G.edges:
        imgs = []
        for arc in L.arcs[edge]:
            a, b = arc.image
            imgs.append(f"{a}" if a == b else f"{a}-{b}")
        lines.append(f"{edge[0]}-{edge[1]}: " + " | ".join(imgs))
    return lines
