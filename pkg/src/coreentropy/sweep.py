"""Quadratic-family entropy sweep: h(theta) over reduced rational angles.

The portrait of an external angle theta is {theta/2, (theta+1)/2}, the unique
degree-2 portrait collapsing onto theta.  For sweeping, the full pair basis
(quadratic in the orbit length) is avoided: splits always land on pairs that
contain theta itself, so every strongly connected component with spectral
radius above 1 lives inside the forward closure of those pairs.  The reduced
matrix gives the same rho once the enclosure is clamped below by the a-priori
bound rho >= 1.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .angles import Angle
from .pairspace import clamp_bounds
from .portrait import CriticalPortrait, validate
from .spectral import SparseMatrix, spectral_radius


def quadratic_portrait(theta: Angle) -> CriticalPortrait:
    """The degree-2 portrait {theta/2, (theta+1)/2}; always valid."""
    half = Angle(theta.num, 2 * theta.den)
    other = Angle(theta.num + theta.den, 2 * theta.den)
    return validate(2, [{half, other}])


@dataclass(frozen=True)
class SweepRow:
    theta_num: int
    theta_den: int
    rho: float
    log_rho: float


def _doubling_orbit(p: int, q: int):
    """Orbit of p/q under doubling as residues mod q, plus the preperiod index."""
    seen = {}
    points = []
    x = p % q
    while x not in seen:
        seen[x] = len(points)
        points.append(x)
        x = (2 * x) % q
    return points, seen[x]


def quadratic_rho(p: int, q: int, tol: float = 1e-12, max_iter: int = 10 ** 6):
    """(rho, log_rho) for theta = p/q, reduced, via the reduced pair dynamics.

    States are index pairs over the postcritical orbit (orbit of theta,
    starting at theta).  A pair is separated exactly when one member lies in
    each open half-circle cut by the critical pair; separated pairs split
    into two pairs through theta.  Only the closure of those split targets is
    built; pure rotation cycles outside it contribute rho = 1, recovered by
    clamping.
    """
    if p % q == 0:
        return 1.0, 0.0
    points, preperiod = _doubling_orbit(p, q)
    n = len(points)
    succ = [i + 1 for i in range(n - 1)] + [preperiod]
    # position of each orbit point relative to the critical pair, with
    # everything over the common denominator 2q: critical angles are p and
    # p + q, orbit points are 2*a.
    side = []
    for a in points:
        t = (2 * a - p) % (2 * q)
        if t == 0 or t == q:
            side.append(-1)  # on a critical angle: never separated
        else:
            side.append(0 if t < q else 1)
    if n == 1:
        return 1.0, 0.0
    # states are interned under the key i*n + j with i < j; the seeds are the
    # pairs through the critical value itself (orbit index 0, key j)
    ids = {k: k - 1 for k in range(1, n)}
    stack = [(0, k, k - 1) for k in range(1, n)]
    next_id = n - 1
    rows, cols, cnts = [], [], []
    while stack:
        i, j, s = stack.pop()
        a = succ[i]
        b = succ[j]
        if side[i] >= 0 and side[j] >= 0 and side[i] != side[j]:
            # split: both halves pair the critical value with one image;
            # an image equal to orbit index 0 collapses and is dropped
            if a and b and a == b:
                ca = ids.get(a)
                if ca is None:
                    ca = ids[a] = next_id
                    next_id += 1
                    stack.append((0, a, ca))
                rows.append(s)
                cols.append(ca)
                cnts.append(2)
            else:
                for c in (a, b):
                    if c:
                        cc = ids.get(c)
                        if cc is None:
                            cc = ids[c] = next_id
                            next_id += 1
                            stack.append((0, c, cc))
                        rows.append(s)
                        cols.append(cc)
                        cnts.append(1)
        elif a != b:
            if a > b:
                a, b = b, a
            key = a * n + b
            cc = ids.get(key)
            if cc is None:
                cc = ids[key] = next_id
                next_id += 1
                stack.append((a, b, cc))
            rows.append(s)
            cols.append(cc)
            cnts.append(1)
    # triplets are unique by construction: each state emits either one or two
    # entries with distinct columns (the equal-image split is a single count-2
    # entry), so the validation scan can be skipped
    M = SparseMatrix.unchecked(next_id, tuple(zip(rows, cols, cnts)))
    res = spectral_radius(M, tol=tol, max_iter=max_iter)
    lo, hi = clamp_bounds(res.lower, res.upper, 2)
    rho = 0.5 * (lo + hi)
    return rho, math.log(rho)


def reduced_angles(max_den: int):
    """All reduced p/q with q <= max_den, ascending (0/1 first)."""
    out = [(0, 1)]
    for q in range(2, max_den + 1):
        for p in range(1, q):
            if gcd(p, q) == 1:
                out.append((p, q))
    out.sort(key=lambda pq: Fraction(pq[0], pq[1]))
    return out


def _rho_chunk(args):
    chunk, tol, max_iter = args
    return [quadratic_rho(p, q, tol, max_iter) for p, q in chunk]


def sweep_rows(max_den: int, tol: float = 1e-12, max_iter: int = 10 ** 6, jobs: int = 1):
    """One SweepRow per reduced angle with denominator <= max_den, sorted."""
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    thetas = reduced_angles(max_den)
    if jobs <= 1 or len(thetas) < 64:
        values = [quadratic_rho(p, q, tol, max_iter) for p, q in thetas]
    else:
        chunks = [thetas[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_rho_chunk, [(c, tol, max_iter) for c in chunks]))
        values = [None] * len(thetas)
        for w, part in enumerate(parts):
            for k, val in enumerate(part):
                values[w + k * jobs] = val
    return [
        SweepRow(p, q, rho, log_rho)
        for (p, q), (rho, log_rho) in zip(thetas, values)
    ]


def format_number(x: float) -> str:
    """Locale-independent, 12 significant digits, shortest form."""
    return format(x, ".12g")


def rows_to_csv(rows) -> str:
    lines = ["theta_num,theta_den,rho,log_rho"]
    for r in rows:
        lines.append(
            f"{r.theta_num},{r.theta_den},{format_number(r.rho)},{format_number(r.log_rho)}"
        )
    return "\n".join(lines) + "\n"
