"""The pair space S and the transition matrix of the entropy algorithm.

The basis consists of all unordered pairs of postcritical angles (or the
single pair {x, x} when the postcritical set is a fixed singleton).  A pair
maps to the pair of its images when non-separated, and otherwise splits along
its separation set into consecutive-representative image pairs.  The core
entropy is log of the spectral radius of the resulting matrix.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .angles import Angle, tau
from .portrait import CriticalPortrait, post_set, separated_by, separation_set
from .spectral import SparseMatrix, SpectralResult, spectral_radius


class ConsistencyError(RuntimeError):
    """An internal invariant failed while building the matrix (a bug)."""


@dataclass(frozen=True, order=True)
class AnglePair:
    """Unordered pair stored with a <= b; a == b only in the singleton case."""

    a: Angle
    b: Angle

    @classmethod
    def of(cls, x: Angle, y: Angle) -> "AnglePair":
        return cls(x, y) if x <= y else cls(y, x)

    def __str__(self):
        return f"{self.a},{self.b}"


@dataclass(frozen=True)
class PairBasis:
    pairs: tuple
    index: dict

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class TransitionMatrix:
    basis: PairBasis
    dim: int
    entries: dict  # (row, col) -> positive count

    def to_sparse(self) -> SparseMatrix:
        triplets = tuple(sorted((r, c, n) for (r, c), n in self.entries.items()))
        return SparseMatrix(self.dim, triplets)

    def dump_lines(self):
        lines = [f"basis {i}: {p}" for i, p in enumerate(self.basis.pairs)]
        for (r, c), n in sorted(self.entries.items()):
            lines.append(f"{self.basis.pairs[r]} -> {self.basis.pairs[c]} : {n}")
        return lines


def build_basis(P: CriticalPortrait) -> PairBasis:
    """All unordered postcritical pairs, sorted lexicographically."""
    post = post_set(P)
    if len(post) == 1:
        x = post[0]
        assert tau(x, P.degree) == x
        pairs = (AnglePair(x, x),)
    else:
        pairs = tuple(
            AnglePair(post[i], post[j])
            for i in range(len(post))
            for j in range(i + 1, len(post))
        )
        pairs = tuple(sorted(pairs))
    return PairBasis(pairs, {p: i for i, p in enumerate(pairs)})


def transition_with_reps(P: CriticalPortrait, pair: AnglePair, reps) -> Counter:
    """Image multiset of a basis pair for an explicit choice of representatives.

    ``reps`` holds one angle per crossed element, in crossing order from
    pair.a.  Degenerate image pairs {z, z} are dropped, except for the sole
    basis pair of a singleton postcritical set, which maps to itself.
    """
    d = P.degree
    x, y = pair.a, pair.b
    if x == y:
        return Counter({pair: 1})
    chain = [x, *reps, y]
    # consecutive chain members must be pairwise non-separated, or the
    # transition count would depend on the representative choice
    for u, v in zip(chain, chain[1:]):
        for e in P.elements:
            if separated_by(u, v, e):
                raise ConsistencyError(
                    f"consecutive representatives {u}, {v} separated by {e}"
                )
    out = Counter()
    for u, v in zip(chain, chain[1:]):
        iu, iv = tau(u, d), tau(v, d)
        if iu != iv:
            out[AnglePair.of(iu, iv)] += 1
    return out


def transition(P: CriticalPortrait, pair: AnglePair) -> Counter:
    """Image multiset of a basis pair, using the smallest angle of each crossed element."""
    sep = separation_set(pair.a, pair.b, P)
    reps = [P.elements[k - 1].angles[0] for k in sep]
    return transition_with_reps(P, pair, reps)


def build_matrix(P: CriticalPortrait) -> TransitionMatrix:
    """Matrix of the transition map in the pair basis (sparse counts)."""
    basis = build_basis(P)
    entries = {}
    for r, pair in enumerate(basis.pairs):
        images = transition(P, pair)
        if sum(images.values()) > P.degree:
            raise ConsistencyError(f"row sum for {pair} exceeds degree {P.degree}")
        for img, n in images.items():
            c = basis.index.get(img)
            if c is None:
                raise ConsistencyError(f"image pair {img} of {pair} is outside the basis")
            entries[(r, c)] = n
    return TransitionMatrix(basis, len(basis), entries)


@dataclass(frozen=True)
class CoreEntropyResult:
    rho: float
    log_rho: float
    lower: float
    upper: float
    dim: int
    spectral: SpectralResult


def clamp_bounds(lower: float, upper: float, d: int):
    """Clamp a spectral enclosure into the a-priori range [1, d]."""
    lo = min(max(lower, 1.0), float(d))
    hi = min(max(upper, 1.0), float(d))
    return lo, max(lo, hi)


def core_entropy(P: CriticalPortrait, tol: float = 1e-12, max_iter: int = 10 ** 6) -> CoreEntropyResult:
    """rho(A) and log rho(A) for the portrait's transition matrix.

    The enclosure is clamped into [1, d] (rho always lies there: the matrix
    is never nilpotent and row sums are at most d); rho is the midpoint.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    tm = build_matrix(P)
    res = spectral_radius(tm.to_sparse(), tol=tol, max_iter=max_iter)
    lo, hi = clamp_bounds(res.lower, res.upper, P.degree)
    rho = 0.5 * (lo + hi)
    return CoreEntropyResult(rho, math.log(rho), lo, hi, tm.dim, res)
