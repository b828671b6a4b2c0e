"""Closed-form Stokes data of the two-function cases.

For each case the Stokes structure of the associated linear ODE at its
irregular point reduces to two real numbers (s1R, s2R), given explicitly in
terms of the asymptotic data (gamma, delta) by cosine formulas, one formula
per case group:

    group 4    : +-s1R = 2 cos(pi(gamma+1)/4) + 2 cos(pi(delta+3)/4)
                  -s2R = 2 + 4 cos(pi(gamma+1)/4) cos(pi(delta+3)/4)
    group 5ab  :   s1R = 1 + 2 cos(pi(gamma+6)/5) + 2 cos(pi(delta+8)/5)
                  -s2R = 2 + 2 cos(..) + 2 cos(..) + 4 cos(..) cos(..)
    group 5cde : same as 5ab with offsets (gamma+2), (delta+4)
    group 6    : +-s1R = 2 cos(pi(gamma+2)/6) + 2 cos(pi(delta+4)/6)
                  -s2R = 1 + 4 cos(pi(gamma+2)/6) cos(pi(delta+4)/6)

In the even-size groups (4 and 6) the calculation leaves the sign of s1R
undetermined; this module always returns the "+" reading and flags the
ambiguity.  Flipping the sign corresponds to the involution
(gamma, delta) -> (-delta, -gamma) of the region.

The complex lifts s1, s2 (fixed unit phases per case), the two sparse
unipotent connection factors Q_1 and Q_{1+1/(n+1)}, the characteristic
polynomial of Q_1 Q_{1+1/(n+1)} Pi, and the eigenvalues predicted by the
x -> 0 limit of the ODE are all exposed for cross-validation.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from ttstar.cases import CaseSpec, require_region, structure_matrices

# group -> offsets (o1, o2) in the cosine arguments
_OFFSETS = {"4": (1.0, 3.0), "5ab": (6.0, 8.0), "5cde": (2.0, 4.0), "6": (2.0, 4.0)}

# label -> (p1, p2) with s1 = omega^p1 * s1R, s2 = omega^p2 * s2R
_PHASE_POWER = {
    "4a": (1.5, 3.0), "4b": (0.5, 1.0),
    "5a": (2.0, 4.0), "5b": (1.0, 2.0),
    "5c": (4.0, 3.0), "5d": (0.0, 0.0), "5e": (3.0, 1.0),
    "6a": (2.0, 4.0), "6b": (0.0, 0.0), "6c": (1.0, 2.0),
}

# label -> kappa with root symmetry lambda -> 1 / (omega^kappa lambda)
_ROOT_SYMMETRY_POWER = {
    "4a": 1, "4b": 3,
    "5a": 1, "5b": 3, "5c": 2, "5d": 0, "5e": 4,
    "6a": 2, "6b": 0, "6c": 4,
}

# label -> integer exponents (a_0, ..., a_n): the eigenvalues of
# Q_1 Q_{1+1/(n+1)} Pi are omega^{a_i} exp(i pi gamma_i / (n+1)), with the
# branch consistent with the "+" reading of s1R.
_EIGEN_OFFSETS = {
    "4a": (2, 3, 0, 1),
    "4b": (2, 3, 0, 1),
    "5a": (0, 1, 2, 3, 4),
    "5b": (0, 1, 2, 3, 4),
    "5c": (0, 1, 2, 3, 4),
    "5d": (0, 1, 2, 3, 4),
    "5e": (0, 1, 2, 3, 4),
    "6a": (3, 4, 2, 0, 1, 5),
    "6b": (0, 1, 2, 3, 4, 5),
    "6c": (3, 1, 5, 0, 4, 2),
}


@dataclass(frozen=True)
class StokesData:
    """Stokes data of one solution: real pair, complex lifts, sign flag."""

    label: str
    s1R: float
    s2R: float
    s1: complex
    s2: complex
    sign_ambiguous: bool

    def to_json(self) -> str:
        return json.dumps({
            "case": self.label,
            "s1R": self.s1R, "s2R": self.s2R,
            "s1": [self.s1.real, self.s1.imag],
            "s2": [self.s2.real, self.s2.imag],
            "sign_ambiguous": self.sign_ambiguous,
        })


@dataclass(frozen=True)
class QPair:
    """The two elementary unipotent factors Q_1, Q_{1+1/(n+1)}."""

    Q_first: np.ndarray
    Q_second: np.ndarray


@dataclass(frozen=True)
class CharPoly:
    """Characteristic polynomial of Q_1 Q_{1+1/(n+1)} Pi, leading coeff first."""

    degree: int
    coeffs: np.ndarray


def group_s1s2(group: str, gamma: float, delta: float) -> tuple[float, float]:
    """Raw formula evaluation for a case group ("+"-branch s1R)."""
    o1, o2 = _OFFSETS[group]
    N = 4 if group == "4" else (5 if group.startswith("5") else 6)
    c1 = math.cos(math.pi * (gamma + o1) / N)
    c2 = math.cos(math.pi * (delta + o2) / N)
    if group == "4":
        return 2.0 * (c1 + c2), -2.0 - 4.0 * c1 * c2
    if group in ("5ab", "5cde"):
        return 1.0 + 2.0 * (c1 + c2), -(2.0 + 2.0 * (c1 + c2) + 4.0 * c1 * c2)
    return 2.0 * (c1 + c2), -(1.0 + 4.0 * c1 * c2)


def stokes_from_asymptotics(spec: CaseSpec, gamma: float, delta: float) -> StokesData:
    """Map asymptotic data to Stokes data (closed form, "+"-branch for s1R)."""
    require_region(spec, gamma, delta)
    s1R, s2R = group_s1s2(spec.group, gamma, delta)
    s1, s2 = complex_lift(spec, s1R, s2R)
    return StokesData(spec.label, s1R, s2R, s1, s2, spec.sign_ambiguous)


def complex_lift(spec: CaseSpec, s1R: float, s2R: float) -> tuple[complex, complex]:
    """Apply the fixed unit phases of the case to the real Stokes pair."""
    p1, p2 = _PHASE_POWER[spec.label]
    w = spec.omega
    return (w ** p1) * s1R, (w ** p2) * s2R


def q_matrices(spec: CaseSpec, s1: complex, s2: complex) -> QPair:
    """Assemble the sparse unipotent factors from the complex Stokes values.

    The nonzero off-diagonal pattern depends only on the matrix size; the
    reality constraints pair each entry with minus the conjugate of another.
    """
    N = spec.size
    q1 = np.eye(N, dtype=complex)
    q2 = np.eye(N, dtype=complex)
    if N == 4:
        q1[1, 0] = s1
        q1[2, 3] = -np.conj(s1)
        q2[1, 3] = s2
    elif N == 5:
        q1[2, 0] = s2
        q1[3, 4] = -np.conj(s1)
        q2[1, 0] = s1
        q2[2, 4] = -np.conj(s2)
    else:
        q1[2, 0] = s2
        q1[3, 5] = -np.conj(s2)
        q2[1, 0] = s1
        q2[3, 4] = -np.conj(s1)
        # the remaining admissible entry (2,5) vanishes identically
    return QPair(q1, q2)


def char_poly(spec: CaseSpec, s1: complex, s2: complex) -> CharPoly:
    """Characteristic polynomial of Q_1 Q_{1+1/(n+1)} Pi in closed form."""
    N = spec.size
    if N == 4:
        coeffs = [1.0, -s1, -s2, np.conj(s1), -1.0]
    elif N == 5:
        coeffs = [1.0, -s1, -s2, np.conj(s2), np.conj(s1), -1.0]
    else:
        coeffs = [1.0, -s1, -s2, 0.0, np.conj(s2), np.conj(s1), -1.0]
    return CharPoly(N, np.array(coeffs, dtype=complex))


def char_poly_numeric(spec: CaseSpec, s1: complex, s2: complex) -> np.ndarray:
    """Same polynomial computed from the explicit matrix product (cross-check)."""
    sm = structure_matrices(spec)
    qp = q_matrices(spec, s1, s2)
    return np.poly(qp.Q_first @ qp.Q_second @ sm.Pi)


def char_roots(poly: CharPoly) -> np.ndarray:
    """Roots of the characteristic polynomial, refined beyond np.roots.

    Near region corners the roots collide (up to full multiplicity), and the
    companion-matrix eigenvalues lose several digits.  A few Aberth-Ehrlich
    sweeps in extended precision recover them whenever the roots are simple.
    """
    roots = np.roots(poly.coeffs).astype(np.clongdouble)
    c = poly.coeffs.astype(np.clongdouble)
    dc = c[:-1] * np.arange(len(c) - 1, 0, -1, dtype=np.clongdouble)
    for _ in range(6):
        p = np.polyval(c, roots)
        dp = np.polyval(dc, roots)
        newton = np.where(np.abs(dp) > 1e-30, p / np.where(dp == 0, 1, dp), 0)
        diff = roots[:, None] - roots[None, :]
        np.fill_diagonal(diff, np.inf)
        repulse = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - newton * repulse
        step = np.where(np.abs(denom) > 1e-12, newton / np.where(denom == 0, 1, denom), newton)
        # Refine only clearly simple roots: inside a multiple-root cluster the
        # steps are comparable to the cluster spread and would spoil the
        # (exactly preserved) cluster centroid.
        nearest = np.min(np.abs(diff), axis=1)
        accept = (np.abs(step) < 0.1 * nearest) & (np.abs(step) < 1e-7)
        roots = np.where(accept, roots - step, roots)
    return roots.astype(complex)


def root_symmetry_check(spec: CaseSpec, poly: CharPoly, tol: float = 1e-8) -> bool:
    """Is the root multiset closed under lambda -> 1/(omega^kappa lambda)?"""
    roots = char_roots(poly)
    kappa = _ROOT_SYMMETRY_POWER[spec.label]
    mapped = 1.0 / (spec.omega ** kappa * roots)
    return multisets_match(roots, mapped, tol)


def monodromy_eigenvalues(spec: CaseSpec, gamma: float, delta: float) -> np.ndarray:
    """Eigenvalues of Q_1 Q_{1+1/(n+1)} Pi predicted by the x -> 0 limit.

    Raised to the (n+1)-th power the multiset is {exp(i pi gamma_i)};
    the integer offsets select the branch matching the "+" sign reading.
    """
    require_region(spec, gamma, delta)
    N = spec.size
    g = spec.gamma_vec(gamma, delta)
    offsets = np.array(_EIGEN_OFFSETS[spec.label], dtype=float)
    return np.exp(1j * math.pi * (2.0 * offsets + g) / N)


def _clusters(zs: np.ndarray, gap: float) -> list[tuple[complex, int]]:
    """Group a complex multiset into (centroid, multiplicity) clusters.

    Connected components of the "within gap" graph, so chains of nearby
    points always land in one cluster regardless of ordering.
    """
    zs = np.asarray(zs)
    m = len(zs)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(zs[i] - zs[j]) <= gap:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(zs[i])
    return [(sum(g) / len(g), len(g)) for g in groups.values()]


def multisets_match(xs: np.ndarray, ys: np.ndarray, tol: float = 1e-8,
                    cluster_gap: float = 5e-3) -> bool:
    """Greedy nearest-pair matching of two complex multisets.

    Roots within cluster_gap of each other are treated as one multiple root
    and compared through their centroid, which stays well conditioned at
    region corners where the individual roots do not.
    """
    if len(xs) != len(ys):
        return False
    cx = _clusters(np.asarray(xs), cluster_gap)
    cy = _clusters(np.asarray(ys), cluster_gap)
    if len(cx) != len(cy):
        return False
    remaining = list(cy)
    for centre, count in cx:
        j = min(range(len(remaining)), key=lambda k: abs(centre - remaining[k][0]))
        near, ncount = remaining[j]
        if abs(centre - near) > tol or count != ncount:
            return False
        remaining.pop(j)
    return True


def stokes_report(spec: CaseSpec, gamma: float, delta: float) -> dict:
    """JSON-friendly record combining data, polynomial and eigenvalues."""
    data = stokes_from_asymptotics(spec, gamma, delta)
    poly = char_poly(spec, data.s1, data.s2)
    eig = monodromy_eigenvalues(spec, gamma, delta)
    return {
        "case": spec.label,
        "gamma": gamma,
        "delta": delta,
        "s1R": data.s1R,
        "s2R": data.s2R,
        "sign_ambiguous": data.sign_ambiguous,
        "char_poly": [[c.real, c.imag] for c in poly.coeffs],
        "eigenvalues": [[z.real, z.imag] for z in eig],
    }
