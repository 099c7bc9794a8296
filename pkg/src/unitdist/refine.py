"""Numeric support for exact realization.

Two services, both strictly advisory: the exact-certification gate in
:mod:`unitdist.catalog` re-derives everything over the field tower, so a
wrong answer here can only lead to an honest failure, never a wrong
certificate.

* Gauss-Newton refinement of transcribed coordinates under the unit-length
  constraints, pinned to the seed-edge frame, pushed to high precision with
  a frozen float64 pseudo-inverse.
* Integer-relation recognition (PSLQ) of a refined squared distance as an
  element of, or a quadratic over, the current field tower.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import mpmath as mp
import numpy as np

from .fields import ConstructibleNumber, FieldTower, NegativeRadicandError, sqrt_extend

DEFAULT_DPS = 60


def _eval_rep_mpf(rep, depth: int, tower: FieldTower, cache: dict):
    if depth == 0:
        return mp.mpf(rep.numerator) / rep.denominator
    a, b = rep
    root = cache.get(depth - 1)
    if root is None:
        root = mp.sqrt(_eval_rep_mpf(tower._rads[depth - 1], depth - 1, tower, cache))
        cache[depth - 1] = root
    return _eval_rep_mpf(a, depth - 1, tower, cache) + _eval_rep_mpf(b, depth - 1, tower, cache) * root


def eval_mpf(x: ConstructibleNumber, dps: int = DEFAULT_DPS):
    """High-precision numeric value of a tower element."""
    with mp.workdps(dps):
        return _eval_rep_mpf(x._rep, x.tower.depth, x.tower, {})


def _match_reflection(pts, origin, direction, tol: float) -> Optional[list[int]]:
    ox, oy = origin
    ux, uy = direction
    norm = (ux * ux + uy * uy) ** 0.5
    if norm < 1e-12:
        return None
    ux, uy = ux / norm, uy / norm
    pi = []
    for x, y in pts:
        px, py = x - ox, y - oy
        along = px * ux + py * uy
        rx = ox + 2 * along * ux - px
        ry = oy + 2 * along * uy - py
        best, best_d = None, tol * tol
        for j, (qx, qy) in enumerate(pts):
            d = (rx - qx) ** 2 + (ry - qy) ** 2
            if d < best_d:
                best, best_d = j, d
        if best is None:
            return None
        pi.append(best)
    n = len(pts)
    if len(set(pi)) != n or any(pi[pi[i]] != i for i in range(n)) or all(pi[i] == i for i in range(n)):
        return None
    return pi


def detect_mirror_involution(coords, tol: float = 0.04) -> Optional[list[int]]:
    """Vertex permutation realising an approximate mirror symmetry, if any.

    Candidate axes are the perpendicular bisectors of all point pairs and the
    lines through all point pairs.  Returns a non-identity involution pi
    (pi[i] = partner of i, fixed points allowed) or None.
    """
    pts = [(float(x), float(y)) for x, y in coords]
    n = len(pts)
    if n < 3:
        return None
    for i in range(n):
        for j in range(i + 1, n):
            (x1, y1), (x2, y2) = pts[i], pts[j]
            mid = ((x1 + x2) / 2, (y1 + y2) / 2)
            pi = _match_reflection(pts, mid, (y1 - y2, x2 - x1), tol)
            if pi is not None:
                return pi
            pi = _match_reflection(pts, (x1, y1), (x2 - x1, y2 - y1), tol)
            if pi is not None:
                return pi
    return None


def _symmetry_rows(pi: list[int]) -> list[tuple]:
    """Distance-equality constraints |p_i p_j| = |p_pi(i) p_pi(j)|, deduplicated."""
    n = len(pi)
    rows = []
    seen = set()
    for i in range(n):
        for j in range(i + 1, n):
            a, b = sorted((pi[i], pi[j]))
            if (a, b) == (i, j):
                continue
            key = frozenset(((i, j), (a, b)))
            if key in seen:
                continue
            seen.add(key)
            rows.append(((i, j), (a, b)))
    return rows


class RefinedFrame:
    """Coordinates satisfying the claimed unit constraints to high precision,
    expressed in the frame that pins the seed edge to (0,0)-(1,0).

    When the unit constraints alone leave the framework flexible and the
    transcription shows a mirror symmetry, distance-equality rows for that
    symmetry are added to pin the flex at the symmetric configuration."""

    def __init__(self, coords, edges, seed: tuple[int, int], dps: int = DEFAULT_DPS,
                 symmetry: Optional[list[int]] = None):
        self.n = len(coords)
        self.edges = list(edges)
        self.seed = seed
        self.dps = dps
        self.sym_rows: list[tuple] = []
        self.pin_rows: list[tuple] = []
        self._float = self._initial_transform(coords)
        self._polish_float64()
        if symmetry is not None and self._free_dof() > 0:
            self.sym_rows = _symmetry_rows(symmetry)
            self._polish_float64()
        self._pin_residual_flexes()
        self._mp = None

    def _initial_transform(self, coords):
        a, b = self.seed
        ax, ay = float(coords[a][0]), float(coords[a][1])
        bx, by = float(coords[b][0]), float(coords[b][1])
        dx, dy = bx - ax, by - ay
        norm = dx * dx + dy * dy
        out = np.empty((self.n, 2))
        for i, (x, y) in enumerate(coords):
            px, py = float(x) - ax, float(y) - ay
            out[i, 0] = (px * dx + py * dy) / norm
            out[i, 1] = (-px * dy + py * dx) / norm
        return out

    def _free_indices(self):
        a, b = self.seed
        return [i for i in range(self.n) if i not in (a, b)]

    def _null_vectors(self):
        free = self._free_indices()
        if not free or not self.edges:
            return np.zeros((0, 0))
        jac, _ = self._jacobian(self._float)
        _, sv, vt = np.linalg.svd(jac)
        ncols = jac.shape[1]
        small = [k for k in range(ncols) if k >= len(sv) or sv[k] < 1e-8]
        return vt[small, :]

    def _free_dof(self) -> int:
        return self._null_vectors().shape[0]

    def _pin_residual_flexes(self):
        """Pin leftover mechanism freedoms at nearby simple rational distances.

        Any point of the flex family realises the claimed edges exactly, so an
        arbitrary exact pin still yields a valid certificate; the choice only
        has to keep Gauss-Newton in the same basin.
        """
        from fractions import Fraction

        edge_set = {tuple(sorted(e)) for e in self.edges}
        for _ in range(6):
            null = self._null_vectors()
            if null.shape[0] == 0:
                return
            free = self._free_indices()
            col = {v: 2 * k for k, v in enumerate(free)}
            pos = self._float
            best = None
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    if (i, j) in edge_set or any(p[0] == (i, j) for p in self.pin_rows):
                        continue
                    d2 = (pos[i][0] - pos[j][0]) ** 2 + (pos[i][1] - pos[j][1]) ** 2
                    if d2 < 0.1 or abs(d2 - 1.0) < 0.05:
                        continue
                    grad = np.zeros(2 * len(free))
                    dx = pos[i][0] - pos[j][0]
                    dy = pos[i][1] - pos[j][1]
                    if i in col:
                        grad[col[i]] += 2 * dx
                        grad[col[i] + 1] += 2 * dy
                    if j in col:
                        grad[col[j]] -= 2 * dx
                        grad[col[j] + 1] -= 2 * dy
                    score = float(np.linalg.norm(null @ grad))
                    if best is None or score > best[0]:
                        best = (score, (i, j), d2)
            if best is None or best[0] < 1e-6:
                return
            _, pair, d2 = best
            target = Fraction(d2).limit_denominator(1000)
            if abs(float(target) - d2) > 0.02 or target <= 0 or target == 1:
                target = Fraction(d2).limit_denominator(10**6)
            self.pin_rows.append((pair, target))
            self._polish_float64()

    def _residuals(self, pos, one, conv=float):
        res = [
            (pos[i][0] - pos[j][0]) ** 2 + (pos[i][1] - pos[j][1]) ** 2 - one
            for i, j in self.edges
        ]
        for (i, j), (k, l) in self.sym_rows:
            res.append(
                (pos[i][0] - pos[j][0]) ** 2 + (pos[i][1] - pos[j][1]) ** 2
                - (pos[k][0] - pos[l][0]) ** 2 - (pos[k][1] - pos[l][1]) ** 2
            )
        for (i, j), q in self.pin_rows:
            res.append(
                (pos[i][0] - pos[j][0]) ** 2 + (pos[i][1] - pos[j][1]) ** 2
                - one * conv(q)
            )
        return res

    def _jacobian(self, pos):
        free = self._free_indices()
        col = {v: 2 * k for k, v in enumerate(free)}
        nrows = len(self.edges) + len(self.sym_rows) + len(self.pin_rows)
        jac = np.zeros((nrows, 2 * len(free)))

        def bump(r, v, gx, gy):
            if v in col:
                jac[r, col[v]] += gx
                jac[r, col[v] + 1] += gy

        for r, (i, j) in enumerate(self.edges):
            dx = pos[i][0] - pos[j][0]
            dy = pos[i][1] - pos[j][1]
            bump(r, i, 2 * dx, 2 * dy)
            bump(r, j, -2 * dx, -2 * dy)
        base = len(self.edges)
        for r, ((i, j), (k, l)) in enumerate(self.sym_rows):
            dx1 = pos[i][0] - pos[j][0]
            dy1 = pos[i][1] - pos[j][1]
            dx2 = pos[k][0] - pos[l][0]
            dy2 = pos[k][1] - pos[l][1]
            bump(base + r, i, 2 * dx1, 2 * dy1)
            bump(base + r, j, -2 * dx1, -2 * dy1)
            bump(base + r, k, -2 * dx2, -2 * dy2)
            bump(base + r, l, 2 * dx2, 2 * dy2)
        base += len(self.sym_rows)
        for r, ((i, j), _q) in enumerate(self.pin_rows):
            dx = pos[i][0] - pos[j][0]
            dy = pos[i][1] - pos[j][1]
            bump(base + r, i, 2 * dx, 2 * dy)
            bump(base + r, j, -2 * dx, -2 * dy)
        return jac, col

    def _polish_float64(self):
        pos = self._float
        free = self._free_indices()
        if not free or not self.edges:
            return
        for _ in range(60):
            res = np.array(self._residuals(pos, 1.0))
            if np.max(np.abs(res)) < 1e-14:
                break
            jac, col = self._jacobian(pos)
            step, *_ = np.linalg.lstsq(jac, res, rcond=None)
            for v, c in col.items():
                pos[v, 0] -= step[c]
                pos[v, 1] -= step[c + 1]

    def _polish_mp(self):
        free = self._free_indices()
        pos = [[mp.mpf(self._float[i, 0]), mp.mpf(self._float[i, 1])] for i in range(self.n)]
        a, b = self.seed
        pos[a] = [mp.mpf(0), mp.mpf(0)]
        pos[b] = [mp.mpf(1), mp.mpf(0)]
        if not free or not self.edges:
            return pos
        jac, col = self._jacobian(self._float)
        pinv = np.linalg.pinv(jac)
        target = mp.mpf(10) ** (-(self.dps - 6))
        exact_q = lambda q: mp.mpf(q.numerator) / q.denominator
        for _ in range(24):
            res = self._residuals(pos, mp.mpf(1), exact_q)
            if max(abs(r) for r in res) < target:
                break
            for v, c in col.items():
                sx = mp.fsum(mp.mpf(pinv[c, r]) * res[r] for r in range(len(res)))
                sy = mp.fsum(mp.mpf(pinv[c + 1, r]) * res[r] for r in range(len(res)))
                pos[v][0] -= sx
                pos[v][1] -= sy
        return pos

    def position(self, v: int):
        """High-precision (x, y) for vertex v in the seed frame."""
        if self._mp is None:
            with mp.workdps(self.dps):
                self._mp = self._polish_mp()
        return self._mp[v]

    def position_float(self, v: int) -> tuple[float, float]:
        return float(self._float[v, 0]), float(self._float[v, 1])

    def residual_bound(self) -> float:
        return float(max(abs(r) for r in self._residuals(self._float, 1.0))) if self.edges else 0.0


# ---------------------------------------------------------------------------
# PSLQ recognition over a tower
# ---------------------------------------------------------------------------

def _leaf_coeff_element(tower: FieldTower, coeffs: dict[int, Fraction]) -> ConstructibleNumber:
    """Element with given coefficients on the monomial basis prod_j sqrt(d_j).

    Masks index basis monomials: bit j set means the factor sqrt(d_j) of
    level j is present.  The representation tree is exactly this indexing.
    """
    depth = tower.depth

    def build(d: int, mask: int):
        if d == 0:
            return coeffs.get(mask, Fraction(0))
        bit = 1 << (d - 1)
        return (build(d - 1, mask), build(d - 1, mask | bit))

    return ConstructibleNumber(tower, build(depth, 0))


def _basis_values(tower: FieldTower, dps: int):
    cache: dict = {}
    with mp.workdps(dps):
        roots = [
            mp.sqrt(_eval_rep_mpf(tower._rads[j], j, tower, cache))
            for j in range(tower.depth)
        ]
        values = []
        for mask in range(1 << tower.depth):
            v = mp.mpf(1)
            for j in range(tower.depth):
                if mask >> j & 1:
                    v *= roots[j]
            values.append(v)
    return values


def _relation_to_element(rel, offset, count, denom, tower) -> Optional[ConstructibleNumber]:
    coeffs = {}
    for mask in range(count):
        c = rel[offset + mask]
        if c:
            coeffs[mask] = Fraction(c, denom)
    return _leaf_coeff_element(tower, coeffs)


def recognize_square_distance(
    value,
    tower: FieldTower,
    dps: int = DEFAULT_DPS,
    max_coeff: int = 10**10,
    max_depth: int = 5,
) -> Optional[ConstructibleNumber]:
    """Express ``value`` exactly over ``tower``, possibly via one new square root.

    Tries a linear relation over the tower's monomial basis first, then a
    monic quadratic whose discriminant root is adjoined by
    :func:`~unitdist.fields.sqrt_extend`.  Returns None when no convincing
    relation is found; callers treat that as "cannot rigidify".
    """
    if tower.depth > max_depth:
        return None
    nb = 1 << tower.depth
    with mp.workdps(dps):
        value = mp.mpf(value)
        basis = _basis_values(tower, dps)
        tolerance = mp.mpf(10) ** (-(dps - 10))

        rel = mp.pslq([value] + basis, maxcoeff=max_coeff, maxsteps=50000)
        if rel and rel[0]:
            elem = _relation_to_element(rel, 1, nb, -rel[0], tower)
            if abs(eval_mpf(elem, dps) - value) < tolerance:
                return elem

        vec = [value * value] + [value * b for b in basis] + list(basis)
        rel = mp.pslq(vec, maxcoeff=max_coeff, maxsteps=80000)
        if not rel:
            return None
        c0 = rel[0]
        beta = _relation_to_element(rel, 1, nb, 1, tower)
        gamma = _relation_to_element(rel, 1 + nb, nb, 1, tower)
        if c0 == 0:
            if beta.is_zero():
                return None
            elem = -gamma / beta
            if abs(eval_mpf(elem, dps) - value) < tolerance:
                return elem
            return None
        beta = beta / c0
        gamma = gamma / c0
        disc = beta * beta - 4 * gamma
        if disc.sign() < 0:
            return None
        try:
            _, root = sqrt_extend(disc)
        except NegativeRadicandError:
            return None
        for cand in ((-beta + root) / 2, (-beta - root) / 2):
            if abs(eval_mpf(cand, dps) - value) < tolerance:
                return cand
    return None
