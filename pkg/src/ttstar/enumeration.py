"""Enumeration of asymptotic data with integral Stokes data.

The forward cosine formulas have the shape

    s1R = lead + 2*c1 + 2*c2,      -s2R = base + extra*(c1 + c2) + 4*c1*c2

with c1 = cos(pi(gamma+o1)/N), c2 = cos(pi(delta+o2)/N).  Reading them
backwards, (c1, c2) are the roots of t^2 - S t + P = 0 where S = c1 + c2
and P = c1*c2 are rational in (s1R, s2R); each real root pair in [-1, 1]
maps back to a unique (gamma, delta) because the region constraints keep
both cosine arguments inside one interval of monotonicity:

    group 4    : gamma+1 in [0, 4],  delta+3 in [0, 4]
    group 5ab  : gamma-4 in [-5, 0], delta-2 in [-5, 0]   (offsets mod 10)
    group 5cde : gamma+2 in [0, 5],  delta+4 in [0, 5]
    group 6    : gamma+2 in [0, 6],  delta+4 in [0, 6]

Integer sweep bounds per group follow from |c| <= 1 envelopes:
group 4: s2R in [-6, 2]; groups 5: s2R in [-10, 2]; group 6: s2R in [-5, 3];
s1R in [-(n+1), n+1] always suffices.  For the even groups only s1R >= 0 is
swept and the result is closed under the sign involution
(gamma, delta) -> (-delta, -gamma).
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from ttstar.cases import region_contains
from ttstar.stokes import group_s1s2

CASE_GROUPS = ("4", "5ab", "5cde", "6")

# group -> (N, a, b, inversion of c -> gamma resp. delta)
_GROUP_DATA = {
    "4":    (4, 2.0, 2.0, lambda t: 4.0 / math.pi * math.acos(t) - 1.0,
                          lambda t: 4.0 / math.pi * math.acos(t) - 3.0),
    "5ab":  (5, 2.0, 1.0, lambda t: 4.0 - 5.0 / math.pi * math.acos(t),
                          lambda t: 2.0 - 5.0 / math.pi * math.acos(t)),
    "5cde": (5, 1.0, 2.0, lambda t: 5.0 / math.pi * math.acos(t) - 2.0,
                          lambda t: 5.0 / math.pi * math.acos(t) - 4.0),
    "6":    (6, 1.0, 1.0, lambda t: 6.0 / math.pi * math.acos(t) - 2.0,
                          lambda t: 6.0 / math.pi * math.acos(t) - 4.0),
}

_S2_RANGE = {"4": (-6, 2), "5ab": (-10, 2), "5cde": (-10, 2), "6": (-5, 3)}


@dataclass(frozen=True)
class IntegralSolution:
    """One admissible (gamma, delta) whose Stokes data is integral."""

    case_group: str
    gamma: Fraction
    delta: Fraction
    s1R: int          # "+"-branch value; sign flips under the involution
    s2R: int
    label: str | None = None

    def key(self) -> tuple[Fraction, Fraction]:
        return (self.gamma, self.delta)

    def as_dict(self) -> dict:
        return {
            "case_group": self.case_group,
            "gamma": str(self.gamma),
            "delta": str(self.delta),
            "s1R": self.s1R,
            "s2R": self.s2R,
            "label": self.label,
        }


def _sum_and_product(group: str, s1R: float, s2R: float) -> tuple[float, float]:
    """(c1+c2, c1*c2) implied by the Stokes pair for this group."""
    if group == "4":
        return s1R / 2.0, (-s2R - 2.0) / 4.0
    if group in ("5ab", "5cde"):
        return (s1R - 1.0) / 2.0, (-s2R - 1.0 - s1R) / 4.0
    return s1R / 2.0, (-s2R - 1.0) / 4.0


def invert_stokes(case_group: str, s1R: float, s2R: float) -> list[tuple[float, float]]:
    """All (gamma, delta) in the region with the given (s1R, s2R).

    For the even groups both signs of s1R are considered, matching the sign
    ambiguity of the forward formula.  The list may be empty.
    """
    N, a, b, to_gamma, to_delta = _GROUP_DATA[case_group]
    signs = (1.0, -1.0) if (case_group in ("4", "6") and s1R != 0) else (1.0,)
    found: list[tuple[float, float]] = []
    for sigma in signs:
        S, P = _sum_and_product(case_group, sigma * s1R, s2R)
        disc = S * S - 4.0 * P
        if disc < -1e-12:
            continue
        root = math.sqrt(max(disc, 0.0))
        pairs = {((S + root) / 2.0, (S - root) / 2.0), ((S - root) / 2.0, (S + root) / 2.0)}
        for c1, c2 in pairs:
            if abs(c1) > 1.0 + 1e-12 or abs(c2) > 1.0 + 1e-12:
                continue
            g = to_gamma(min(1.0, max(-1.0, c1)))
            d = to_delta(min(1.0, max(-1.0, c2)))
            if region_contains((a, b), g, d, tol=1e-9):
                found.append((g, d))
    return _dedupe(found)


def _dedupe(points: list[tuple[float, float]], tol: float = 1e-9) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    for g, d in points:
        if not any(abs(g - g0) <= tol and abs(d - d0) <= tol for g0, d0 in out):
            out.append((g, d))
    return out


def _snap(group: str, g: float, d: float) -> tuple[Fraction, Fraction] | None:
    """Snap to small-denominator rationals, accepting only lossless snaps."""
    gq = Fraction(g).limit_denominator(30)
    dq = Fraction(d).limit_denominator(30)
    s1, s2 = group_s1s2(group, float(gq), float(dq))
    if abs(s1 - round(s1)) <= 1e-9 and abs(s2 - round(s2)) <= 1e-9 \
            and abs(float(gq) - g) <= 1e-7 and abs(float(dq) - d) <= 1e-7:
        return gq, dq
    return None


def enumerate_integral(case_group: str, workers: int | None = None) -> list[IntegralSolution]:
    """All region points with integral Stokes data, sorted lexicographically."""
    if case_group not in CASE_GROUPS:
        raise KeyError(f"unknown case group {case_group!r}; expected one of {CASE_GROUPS}")
    N = _GROUP_DATA[case_group][0]
    a, b = _GROUP_DATA[case_group][1], _GROUP_DATA[case_group][2]
    even = case_group in ("4", "6")
    s1_values = range(0 if even else -N, N + 1)
    lo2, hi2 = _S2_RANGE[case_group]

    def sweep(s1R: int) -> list[tuple[float, float]]:
        pts = []
        for s2R in range(lo2, hi2 + 1):
            pts.extend(invert_stokes(case_group, s1R, s2R))
        return pts

    if workers is None:
        workers = max(1, int(os.environ.get("TTSTAR_THREADS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(sweep, s1_values))
    else:
        chunks = [sweep(v) for v in s1_values]
    points = [p for chunk in chunks for p in chunk]
    if even:
        points = points + [(-d, -g) for g, d in points]
    points = _dedupe(points)

    out = []
    for g, d in points:
        snapped = _snap(case_group, g, d)
        if snapped is None:
            # Table entries are all small rationals; a non-snapping point
            # would indicate an inversion bug, so surface it loudly.
            raise ArithmeticError(
                f"non-rational integral point ({g}, {d}) in group {case_group}")
        gq, dq = snapped
        s1, s2 = group_s1s2(case_group, float(gq), float(dq))
        out.append(IntegralSolution(case_group, gq, dq, round(s1), round(s2)))
    return sorted(out, key=IntegralSolution.key)


# Static geometric labels for the points on the top/left region edges
# (complete intersections in weighted projective spaces) and the interior
# singularity points.
_LABELS = {
    "4": {
        (Fraction(3), Fraction(1)): "P^3",
        (Fraction(5, 3), Fraction(1)): "X^{1,1,1,6}_{2,3}",
        (Fraction(1), Fraction(1)): "X^{1,1,4}_2",
        (Fraction(1, 3), Fraction(1)): "P^{1,3}",
        (Fraction(-1), Fraction(1)): "P^{2,2}",
        (Fraction(-1), Fraction(-1, 3)): "P^{1,3}",
        (Fraction(-1), Fraction(-1)): "X^{1,1,4}_2",
        (Fraction(-1), Fraction(-5, 3)): "X^{1,1,1,6}_{2,3}",
        (Fraction(-1), Fraction(-3)): "P^3",
        (Fraction(3, 5), Fraction(1, 5)): "A_4 singularity",
        (Fraction(-1, 5), Fraction(-3, 5)): "A_4 singularity",
    },
    "5ab": {
        (Fraction(4), Fraction(2)): "P^4",
        (Fraction(7, 3), Fraction(2)): "X^{1,1,1,1,6}_{2,3}",
        (Fraction(3, 2), Fraction(2)): "X^{1,1,1,4}_2",
        (Fraction(2, 3), Fraction(2)): "P^{1,1,3}",
        (Fraction(-1), Fraction(2)): "P^{1,2,2}",
        (Fraction(-1), Fraction(1, 3)): "P^{2,3}",
        (Fraction(-1), Fraction(-1, 2)): "P^{1,4}",
        (Fraction(-1), Fraction(-4, 3)): "X^{1,1,6}_3",
        (Fraction(-1), Fraction(-3)): "P^{1,1,1,2}",
        (Fraction(2, 3), Fraction(1, 3)): "A_5 singularity",
    },
    "5cde": {
        (Fraction(3), Fraction(1)): "P^{1,1,1,2}",
        (Fraction(4, 3), Fraction(1)): "X^{1,1,6}_3",
        (Fraction(1, 2), Fraction(1)): "P^{1,4}",
        (Fraction(-1, 3), Fraction(1)): "P^{2,3}",
        (Fraction(-2), Fraction(1)): "P^{1,2,2}",
        (Fraction(-2), Fraction(-2, 3)): "P^{1,1,3}",
        (Fraction(-2), Fraction(-3, 2)): "X^{1,1,1,4}_2",
        (Fraction(-2), Fraction(-7, 3)): "X^{1,1,1,1,6}_{2,3}",
        (Fraction(-2), Fraction(-4)): "P^4",
        (Fraction(-1, 3), Fraction(-2, 3)): "A_5 singularity",
    },
    "6": {
        (Fraction(4), Fraction(2)): "P^{1,1,1,1,2}",
        (Fraction(2), Fraction(2)): "X^{1,1,1,6}_3",
        (Fraction(1), Fraction(2)): "P^{1,1,4}",
        (Fraction(0), Fraction(2)): "P^{1,2,3}",
        (Fraction(-2), Fraction(2)): "P^{2,2,2}",
        (Fraction(-2), Fraction(0)): "P^{1,2,3}",
        (Fraction(-2), Fraction(-1)): "P^{1,1,4}",
        (Fraction(-2), Fraction(-2)): "X^{1,1,1,6}_3",
        (Fraction(-2), Fraction(-4)): "P^{1,1,1,1,2}",
    },
}


def attach_labels(solutions: list[IntegralSolution]) -> list[IntegralSolution]:
    """Attach geometric labels where known (edge points and singularities)."""
    out = []
    for sol in solutions:
        label = _LABELS.get(sol.case_group, {}).get((sol.gamma, sol.delta))
        out.append(replace(sol, label=label) if label else sol)
    return out


def table_text(solutions: list[IntegralSolution], fmt: str = "markdown") -> str:
    """Render solutions as a Markdown or CSV table."""
    header = ["gamma", "delta", "s1R", "s2R", "label"]
    rows = [[str(s.gamma), str(s.delta), str(s.s1R), str(s.s2R), s.label or ""]
            for s in solutions]
    if fmt == "csv":
        return "\n".join(",".join(r) for r in [header] + rows)
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths)),
             "-|-".join("-" * w for w in widths)]
    lines += [" | ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def solutions_json(solutions: list[IntegralSolution]) -> str:
    return json.dumps([s.as_dict() for s in solutions], indent=2)
