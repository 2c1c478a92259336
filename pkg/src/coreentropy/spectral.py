"""Spectral radius of sparse non-negative integer matrices.

Two independent routes:

* ``spectral_radius`` — per-SCC power iteration (on a diagonally shifted
  copy of M for unconditional convergence) with Collatz-Wielandt enclosures.
  All iterates are exact integers, so the computed bounds are invariant
  under any permutation-conjugation of the input matrix.
* ``char_poly_radius`` — exact oracle for small matrices: division-free
  integer characteristic polynomial (Berkowitz), square-free reduction, and
  Sturm-guided bisection with rational endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from operator import itemgetter


@dataclass(frozen=True)
class SparseMatrix:
    """Non-negative integer matrix as (row, col, count) triplets."""

    dim: int
    triplets: tuple

    def __post_init__(self):
        seen = set()
        for r, c, cnt in self.triplets:
            if not (0 <= r < self.dim and 0 <= c < self.dim):
                raise ValueError(f"triplet ({r}, {c}) out of range for dim {self.dim}")
            if cnt < 1:
                raise ValueError(f"count {cnt} at ({r}, {c}) must be >= 1")
            if (r, c) in seen:
                raise ValueError(f"duplicate triplet at ({r}, {c})")
            seen.add((r, c))

    @classmethod
    def unchecked(cls, dim, triplets):
        """Construct without the duplicate/range scan; the caller guarantees
        the triplet invariants hold."""
        m = object.__new__(cls)
        object.__setattr__(m, "dim", dim)
        object.__setattr__(m, "triplets", triplets)
        return m

    def to_dense(self):
        A = [[0] * self.dim for _ in range(self.dim)]
        for r, c, cnt in self.triplets:
            A[r][c] = cnt
        return A

    def dump_lines(self):
        return [f"{r} {c} {cnt}" for r, c, cnt in self.triplets]


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    lower: float
    upper: float
    iterations: int
    sccs: int
    method: str  # power | exact_charpoly | nilpotent
    converged: bool


def scc_decompose(M: SparseMatrix):
    """Strongly connected components in topological order (sources first)."""
    adj = [[] for _ in range(M.dim)]
    for r, c, _ in M.triplets:
        adj[r].append(c)
    return _tarjan(adj)


def _tarjan(adj):
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    sccs = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if index[w] == -1:
                    work.append((v, i + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    sccs.reverse()  # Tarjan emits sinks first
    return sccs


# Renormalization target for the arbitrary-precision backend.  Flooring the
# vector to b bits injects relative noise of order 2^-(b-1) into the
# Collatz-Wielandt ratios, so b must leave plenty of room below the
# requested tolerance.  The int64 backend cannot afford that many bits and
# instead detects when flooring noise stalls the contraction.
_RENORM_BITS_EXACT = 150


def _shift_amount(blmax: int, blmin: int, target: int) -> int:
    """Canonical right-shift keeping magnitudes near 2^target, entries >= 1."""
    return max(0, min(blmax - target, blmin - 1))


# Conversion of the exact integers w_i, v_i to float and one division are
# each correctly rounded, so a computed ratio is within 3 units in the last
# place of the true w_i/v_i.  Padding by 2^-49 * (|hi| + 1) therefore yields
# rigorous outer bounds while staying far below any sensible tolerance.
_RATIO_PAD = 2.0 ** -49


def _pad_bounds(lo, hi):
    pad = (abs(hi) + 1.0) * _RATIO_PAD
    return lo - pad, hi + pad


# Convergence is tested every _CHECK_EVERY steps; the check costs about as
# much as a matrix application, so testing each step nearly doubles the work
# for at most a handful of saved iterations.
_CHECK_EVERY = 4

# The iteration runs on B = _WEIGHT*M + I rather than M + I.  Any positive
# diagonal shift makes an irreducible B primitive, but a heavier weight on M
# improves the contraction ratio ((w*l2+1)/(w*l1+1) falls towards l2/l1) and
# scales the target gap by w as well, since rho(M) = (rho(B) - 1)/w.  The
# weight is a power of two so that the final division is exact.
_WEIGHT = 4
_INV_WEIGHT = 1.0 / _WEIGHT


def _scc_bounds_python(row_entries, n, tol, max_iter, v=None, it0=0):
    """Exact-integer power iteration on B = _WEIGHT*M + I for one SCC.

    Integer arithmetic makes every intermediate independent of summation
    order, so the resulting enclosure is invariant under any relabelling of
    the SCC states.  The vector is renormalized by canonical floor shifts;
    any positive vector yields valid Collatz-Wielandt bounds, so the flooring
    never invalidates the enclosure.
    """
    # expand multiplicities into repeated columns so each row application is
    # a single C-level gather-and-sum
    gets = []
    for entries in row_entries:
        cols = []
        for c, cnt in entries:
            cols.extend([c] * cnt)
        gets.append(itemgetter(*cols))
    if v is None:
        v = [1] * n
    lo = hi = 0.0
    it = it0
    while it < max_iter:
        steps = min(_CHECK_EVERY, max_iter - it)
        for _ in range(steps):
            u = v
            v = [sum(g(u)) for g in gets]
        it += steps
        ratios = [a / b for a, b in zip(map(float, v), map(float, u))]
        lo, hi = _pad_bounds(min(ratios) - 1.0, max(ratios) - 1.0)
        lo *= _INV_WEIGHT
        hi *= _INV_WEIGHT
        if hi - lo <= tol:
            return lo, hi, it, True
        s = _shift_amount(max(v).bit_length(), min(v).bit_length(), _RENORM_BITS_EXACT)
        if s:
            v = [x >> s for x in v]
    return lo, hi, max_iter, False


def _scc_bounds(row_entries, n, tol, max_iter):
    """Dispatch: vectorized int64 iteration for large SCCs, pure ints otherwise.

    Both paths run the identical exact integer recurrence; the numpy path
    falls back to arbitrary precision when 64-bit magnitudes get unsafe.
    """
    if n < 16:
        return _scc_bounds_python(row_entries, n, tol, max_iter)
    import numpy as np

    cols, seg, cnts, rs = [], [], [], 0
    for entries in row_entries:
        seg.append(len(cols))
        total = 0
        for c, cnt in entries:
            cols.append(c)
            cnts.append(cnt)
            total += cnt
        rs = max(rs, total)
    cols = np.asarray(cols, dtype=np.intp)
    seg = np.asarray(seg, dtype=np.intp)
    cnts = np.asarray(cnts, dtype=np.int64)
    # bits gained per application are bounded by the largest row sum of B,
    # so this target keeps a _CHECK_EVERY-step burst inside int64
    target = 62 - _CHECK_EVERY * rs.bit_length()
    if target < 40:
        return _scc_bounds_python(row_entries, n, tol, max_iter)
    v = np.ones(n, dtype=np.int64)
    lo = hi = 0.0
    checkpoint_gap = math.inf
    it = 0
    while it < max_iter:
        steps = min(_CHECK_EVERY, max_iter - it)
        for _ in range(steps):
            u = v
            v = np.add.reduceat(cnts * v[cols], seg)
        it += steps
        if it % (2 * _CHECK_EVERY) != 0 and it < max_iter:
            # convergence is probed at half the renormalization cadence: the
            # ratio reductions cost as much as two applications
            s = int(v.max()).bit_length() - target
            if s > 0:
                v = np.maximum(v >> s, 1)
            continue
        ratios = v.astype(np.float64) / u.astype(np.float64)
        lo, hi = _pad_bounds(float(ratios.min()) - 1.0, float(ratios.max()) - 1.0)
        lo *= _INV_WEIGHT
        hi *= _INV_WEIGHT
        if hi - lo <= tol:
            return lo, hi, it, True
        if it % 128 == 0:
            # flooring noise can stall the gap above tol; a genuine power
            # iteration halves it well within 128 steps
            if hi - lo > 0.5 * checkpoint_gap:
                return _scc_bounds_python(
                    row_entries, n, tol, max_iter, v=v.tolist(), it0=it
                )
            checkpoint_gap = hi - lo
        s = int(v.max()).bit_length() - target
        if s > 0:
            # clamping at 1 keeps the vector positive even when the spread
            # exceeds the shift; such components stall the gap and are then
            # picked up by the plateau fallback above
            v = np.maximum(v >> s, 1)
    return lo, hi, max_iter, False


def _components(M: SparseMatrix, by_row):
    """Strongly connected components as index lists, in no particular order.

    Dispatches to the compiled graph routines for larger matrices; the
    resulting partition is the same either way, and nothing downstream
    depends on component order.
    """
    if M.dim >= 96:
        import numpy as np
        from scipy.sparse import csr_matrix
        from scipy.sparse.csgraph import connected_components

        nnz = len(M.triplets)
        indptr = np.zeros(M.dim + 1, dtype=np.intp)
        indptr[1:] = np.cumsum([len(row) for row in by_row])
        indices = np.fromiter(
            (c for row in by_row for c, _ in row), np.intp, nnz
        )
        graph = csr_matrix(
            (np.ones(nnz, dtype=np.int8), indices, indptr), shape=(M.dim, M.dim)
        )
        count, labels = connected_components(graph, directed=True, connection="strong")
        comps = [[] for _ in range(count)]
        for i, lab in enumerate(labels.tolist()):
            comps[lab].append(i)
        return comps
    return _tarjan([[c for c, _ in row] for row in by_row])


def spectral_radius(M: SparseMatrix, tol: float = 1e-12, max_iter: int = 10 ** 6) -> SpectralResult:
    """Max over SCCs of the per-SCC Perron root, with a verified enclosure."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    by_row = [[] for _ in range(M.dim)]
    for r, c, cnt in M.triplets:
        by_row[r].append((c, cnt))
    sccs = _components(M, by_row)
    best_lo, best_hi = 0.0, 0.0
    total_iter = 0
    cyclic = False
    converged = True
    for comp in sccs:
        if len(comp) == 1:
            v = comp[0]
            loop = next((cnt for c, cnt in by_row[v] if c == v), None)
            if loop is None:
                continue  # transient state, contributes 0
            cyclic = True
            best_lo = max(best_lo, float(loop))
            best_hi = max(best_hi, float(loop))
            continue
        cyclic = True
        local = {g: i for i, g in enumerate(sorted(comp))}
        row_entries = [[] for _ in comp]
        for g, i in local.items():
            diag = 1
            for c, cnt in by_row[g]:
                if c in local:
                    if c == g:
                        diag += _WEIGHT * cnt
                    else:
                        row_entries[i].append((local[c], _WEIGHT * cnt))
            row_entries[i].append((i, diag))
        lo, hi, iters, ok = _scc_bounds(row_entries, len(comp), tol, max_iter)
        total_iter += iters
        converged = converged and ok
        best_lo = max(best_lo, lo)
        best_hi = max(best_hi, hi)
    if not cyclic:
        return SpectralResult(0.0, 0.0, 0.0, 0, len(sccs), "nilpotent", True)
    rho = 0.5 * (best_lo + best_hi)
    return SpectralResult(rho, best_lo, best_hi, total_iter, len(sccs), "power", converged)


# ---------------------------------------------------------------------------
# exact characteristic-polynomial oracle
# ---------------------------------------------------------------------------

MAX_CHARPOLY_DIM = 16


@dataclass(frozen=True)
class RootEnclosure:
    """Rational enclosure [lower, upper] of the largest non-negative real root."""

    lower: Fraction
    upper: Fraction

    @property
    def midpoint(self) -> float:
        return float((self.lower + self.upper) / 2)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __contains__(self, x) -> bool:
        return self.lower <= x <= self.upper


def berkowitz_charpoly(A):
    """Integer coefficients of det(xI - A), descending, via Berkowitz.

    Division-free: only integer ring operations are used.
    """
    n = len(A)
    if n == 0:
        return [1]
    V = [1, -A[0][0]]
    for k in range(1, n):
        a = A[k][k]
        R = [A[k][j] for j in range(k)]
        C = [A[i][k] for i in range(k)]
        s = [1, -a]
        w = C
        for t in range(k):
            s.append(-sum(R[i] * w[i] for i in range(k)))
            if t < k - 1:
                w = [sum(A[i][j] * w[j] for j in range(k)) for i in range(k)]
        new = [0] * (k + 2)
        for i in range(k + 2):
            acc = 0
            for j in range(min(i, k) + 1):
                if i - j < len(s):
                    acc += s[i - j] * V[j]
            new[i] = acc
        V = new
    return V


def _poly_trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _poly_deriv(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [0]


def _poly_divmod(a, b):
    """Quotient and remainder over Fractions, coefficients descending."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        if a[0] == 0:
            a.pop(0)
            continue
        shift = len(a) - len(b)
        coef = a[0] / b[0]
        q[len(q) - 1 - shift] = coef
        for i in range(len(b)):
            a[i] -= coef * b[i]
        a.pop(0)
    r = _poly_trim(a) if a else [Fraction(0)]
    return q, r


def _poly_gcd(a, b):
    a = _poly_trim([Fraction(c) for c in a])
    b = _poly_trim([Fraction(c) for c in b])
    while any(c != 0 for c in b):
        _, r = _poly_divmod(a, b)
        a, b = b, _poly_trim(r)
    return [c / a[0] for c in a]  # monic


def _poly_eval(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _sturm_chain(p):
    chain = [p, _poly_trim(_poly_deriv(p))]
    while any(c != 0 for c in chain[-1]) and len(chain[-1]) > 1:
        _, r = _poly_divmod(chain[-2], chain[-1])
        if all(c == 0 for c in r):
            break
        chain.append([-c for c in r])
    return chain


def _sign_variations(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def char_poly_radius(M: SparseMatrix, tol: Fraction = Fraction(1, 10 ** 12)) -> RootEnclosure:
    """Exact enclosure of the largest non-negative real root of det(xI - M).

    Limited to dim <= 16; intended as an independent cross-check of
    ``spectral_radius``.
    """
    if M.dim > MAX_CHARPOLY_DIM:
        raise ValueError(f"char_poly_radius limited to dim <= {MAX_CHARPOLY_DIM}, got {M.dim}")
    p = berkowitz_charpoly(M.to_dense())
    # strip zero roots: x^k * r(x)
    k = 0
    while p[-1] == 0 and len(p) > 1:
        p = p[:-1]
        k += 1
    if len(p) == 1:
        return RootEnclosure(Fraction(0), Fraction(0))  # nilpotent: p was x^n
    r = [Fraction(c) for c in p]
    g = _poly_gcd(r, _poly_deriv(r))
    if len(g) > 1:
        r, rem = _poly_divmod(r, g)
        assert all(c == 0 for c in rem)
    r = [c / r[0] for c in r]  # monic square-free
    chain = _sturm_chain(r)
    hi = Fraction(1) + max(abs(c) for c in r)  # Cauchy bound
    lo = Fraction(-1)
    if _sign_variations(chain, lo) - _sign_variations(chain, hi) == 0:
        # no real root above -1; the Perron root must then be the stripped 0
        if k == 0:
            raise AssertionError("non-negative matrix with no real eigenvalue >= 0")
        return RootEnclosure(Fraction(0), Fraction(0))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _sign_variations(chain, mid) - _sign_variations(chain, hi) >= 1:
            lo = mid
        else:
            hi = mid
    if k > 0 or lo < 0:
        lo = max(lo, Fraction(0))
        hi = max(hi, Fraction(0))
    return RootEnclosure(lo, hi)
