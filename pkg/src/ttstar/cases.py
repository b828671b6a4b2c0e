"""The ten two-function symmetry cases and their structure matrices.

Each case reduces the periodic Toda system with opposite sign, under the
anti-symmetry pairing ``w_i + w_{l-1-i} = 0``, ``w_{l+i} + w_{n-i} = 0``,
to two unknown functions ``u, v`` solving::

    u_zz = exp(a*u) - exp(v - u)
    v_zz = exp(v - u) - exp(-b*v)

with a, b in {1, 2}.  The case data (n, l, a, b, and which w_i carry u and
v) is hard-coded rather than derived, so the tables below are the single
source of truth; construction-time checks verify the pairing.

Asymptotic data (gamma, delta) is admissible iff

    gamma >= -2/a,   delta <= 2/b,   gamma - delta <= 2,

a closed triangle; on its boundary solutions exist but with weaker
(o(1) instead of O(1)) logarithmic asymptotics.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass

import numpy as np

from ttstar.errors import RegionError

CASE_LABELS = ("4a", "4b", "5a", "5b", "5c", "5d", "5e", "6a", "6b", "6c")

# label -> (n, l, a, b)
_CASE_TABLE = {
    "4a": (3, 4, 2.0, 2.0),
    "4b": (3, 2, 2.0, 2.0),
    "5a": (4, 5, 2.0, 1.0),
    "5b": (4, 3, 2.0, 1.0),
    "5c": (4, 4, 1.0, 2.0),
    "5d": (4, 1, 1.0, 2.0),
    "5e": (4, 2, 1.0, 2.0),
    "6a": (5, 5, 1.0, 1.0),
    "6b": (5, 1, 1.0, 1.0),
    "6c": (5, 3, 1.0, 1.0),
}

# label -> indices (iu, iv) with u = 2*w_iu, v = 2*w_iv
_UV_INDEX = {
    "4a": (0, 1), "4b": (3, 0),
    "5a": (0, 1), "5b": (4, 0), "5c": (0, 1), "5d": (1, 2), "5e": (4, 0),
    "6a": (0, 1), "6b": (1, 2), "6c": (5, 0),
}

# label -> coefficient vectors (c_gamma, c_delta) of the linear map
# (gamma, delta) -> (gamma_0, ..., gamma_n) with 2 w_i ~ gamma_i log|z|.
_GAMMA_COEFFS = {
    "4a": ((1, 0, 0, -1), (0, 1, -1, 0)),
    "4b": ((0, 0, -1, 1), (1, -1, 0, 0)),
    "5a": ((1, 0, 0, 0, -1), (0, 1, 0, -1, 0)),
    "5b": ((0, 0, 0, -1, 1), (1, 0, -1, 0, 0)),
    "5c": ((1, 0, 0, -1, 0), (0, 1, -1, 0, 0)),
    "5d": ((0, 1, 0, 0, -1), (0, 0, 1, -1, 0)),
    "5e": ((0, 0, -1, 0, 1), (1, -1, 0, 0, 0)),
    "6a": ((1, 0, 0, 0, -1, 0), (0, 1, 0, -1, 0, 0)),
    "6b": ((0, 1, 0, 0, 0, -1), (0, 0, 1, 0, -1, 0)),
    "6c": ((0, 0, 0, -1, 0, 1), (1, 0, -1, 0, 0, 0)),
}

# label -> p with Omega Delta Omega = (n+1) * d^p (d = diag(1, w, ..., w^n))
_ODO_POWER = {
    "4a": 3, "4b": 1,
    "5a": 4, "5b": 2, "5c": 3, "5d": 0, "5e": 1,
    "6a": 4, "6b": 0, "6c": 2,
}

_GROUP = {
    "4a": "4", "4b": "4",
    "5a": "5ab", "5b": "5ab",
    "5c": "5cde", "5d": "5cde", "5e": "5cde",
    "6a": "6", "6b": "6", "6c": "6",
}


@dataclass(frozen=True)
class CaseSpec:
    """One row of the case table, plus the induced linear asymptotics map."""

    label: str
    n: int
    l: int
    a: float
    b: float

    @property
    def size(self) -> int:
        """Matrix size n+1."""
        return self.n + 1

    @property
    def omega(self) -> complex:
        """Primitive (n+1)-th root of unity."""
        return cmath.exp(2j * cmath.pi / (self.n + 1))

    @property
    def group(self) -> str:
        """Formula group: one of '4', '5ab', '5cde', '6'."""
        return _GROUP[self.label]

    @property
    def sign_ambiguous(self) -> bool:
        """True for the even-size cases, where the sign of s1R is undetermined."""
        return self.group in ("4", "6")

    @property
    def uv_index(self) -> tuple[int, int]:
        return _UV_INDEX[self.label]

    def gamma_vec(self, gamma: float, delta: float) -> np.ndarray:
        """Vector (gamma_0, ..., gamma_n) with 2 w_i ~ gamma_i log|z| at 0."""
        cg, cd = _GAMMA_COEFFS[self.label]
        return gamma * np.array(cg, dtype=float) + delta * np.array(cd, dtype=float)

    def w_vec(self, u: float, v: float) -> np.ndarray:
        """All n+1 Toda functions w_i reconstructed from u, v (same linear map)."""
        return 0.5 * self.gamma_vec(u, v)

    def to_json(self) -> str:
        return json.dumps({"label": self.label, "n": self.n, "l": self.l,
                           "a": self.a, "b": self.b})

    @staticmethod
    def from_json(text: str) -> "CaseSpec":
        obj = json.loads(text)
        spec = make_case(obj["label"])
        if (spec.n, spec.l, spec.a, spec.b) != (obj["n"], obj["l"], obj["a"], obj["b"]):
            raise ValueError(f"inconsistent case record: {text!r}")
        return spec


def make_case(label: str) -> CaseSpec:
    """Return the case spec for one of the ten labels."""
    if label not in _CASE_TABLE:
        raise KeyError(f"unknown case label {label!r}; expected one of {CASE_LABELS}")
    n, l, a, b = _CASE_TABLE[label]
    spec = CaseSpec(label, n, l, a, b)
    _check_antisymmetry(spec)
    return spec


def _check_antisymmetry(spec: CaseSpec) -> None:
    """Verify the hard-coded gamma map against the anti-symmetry pairing."""
    g = spec.gamma_vec(0.7, -0.3)  # generic probe point
    N = spec.size
    for i in range(N):
        j = (spec.l - 1 - i) % N
        assert abs(g[i] + g[j]) < 1e-12, (spec.label, i, j)
    iu, iv = spec.uv_index
    assert g[iu] == 0.7 and g[iv] == -0.3, spec.label


def region_contains(spec_or_ab, gamma: float, delta: float, tol: float = 1e-12) -> bool:
    """Membership in the closed admissible triangle (small tolerance on edges)."""
    a, b = _ab_of(spec_or_ab)
    return (gamma >= -2.0 / a - tol
            and delta <= 2.0 / b + tol
            and gamma - delta <= 2.0 + tol)


def on_region_boundary(spec_or_ab, gamma: float, delta: float, tol: float = 1e-9) -> bool:
    """True on the edges of the region, where only weak log-asymptotics hold."""
    a, b = _ab_of(spec_or_ab)
    return (abs(gamma + 2.0 / a) <= tol
            or abs(delta - 2.0 / b) <= tol
            or abs(gamma - delta - 2.0) <= tol)


def require_region(spec_or_ab, gamma: float, delta: float) -> None:
    if not region_contains(spec_or_ab, gamma, delta):
        a, b = _ab_of(spec_or_ab)
        raise RegionError(
            f"(gamma, delta) = ({gamma}, {delta}) outside the region "
            f"gamma >= {-2.0 / a}, delta <= {2.0 / b}, gamma - delta <= 2")


def region_vertices(spec_or_ab) -> np.ndarray:
    """Vertices of the admissible triangle, rows (gamma, delta)."""
    a, b = _ab_of(spec_or_ab)
    return np.array([
        [-2.0 / a, 2.0 / b],
        [-2.0 / a, -2.0 / a - 2.0],
        [2.0 + 2.0 / b, 2.0 / b],
    ])


def sample_region(spec_or_ab, rng: np.random.Generator, count: int,
                  margin: float = 0.0) -> np.ndarray:
    """Uniform samples from the region, optionally shrunk toward the centroid.

    margin is the fraction by which the triangle is scaled down, keeping
    samples away from the boundary where asymptotics weaken.
    """
    verts = region_vertices(spec_or_ab)
    centroid = verts.mean(axis=0)
    verts = centroid + (1.0 - margin) * (verts - centroid)
    u = rng.random(count)
    v = rng.random(count)
    flip = u + v > 1.0
    u[flip] = 1.0 - u[flip]
    v[flip] = 1.0 - v[flip]
    return (verts[0]
            + np.outer(u, verts[1] - verts[0])
            + np.outer(v, verts[2] - verts[0]))


def _ab_of(spec_or_ab) -> tuple[float, float]:
    if isinstance(spec_or_ab, CaseSpec):
        return spec_or_ab.a, spec_or_ab.b
    a, b = spec_or_ab
    if a <= 0 or b <= 0:
        raise ValueError("exponent parameters must be positive")
    return float(a), float(b)


@dataclass(frozen=True)
class StructureMatrices:
    """Fixed matrices entering the symmetries of the linear problem.

    Omega is the DFT-type eigenvector matrix of the cyclic shift, d the
    diagonal of (n+1)-th roots, Pi = Omega d Omega^-1 the shift itself,
    Delta the block anti-diagonal involution of the case, and
    OmegaDeltaOmega / OmegaBarInv the two derived matrices appearing in the
    anti-symmetry and reality relations.
    """

    Omega: np.ndarray
    d: np.ndarray
    Pi: np.ndarray
    Delta: np.ndarray
    OmegaDeltaOmega: np.ndarray
    OmegaBarInv: np.ndarray


def structure_matrices(spec: CaseSpec) -> StructureMatrices:
    """Build the structure matrices of a case, asserting their identities."""
    N = spec.size
    w = spec.omega
    j = np.arange(N)
    Omega = w ** np.outer(j, j)
    d = np.diag(w ** j)
    Omega_inv = Omega.conj() / N  # Omega Omega-bar = N * I
    Pi = Omega @ d @ Omega_inv
    Delta = _block_antidiag(spec.l, N - spec.l)
    odo = Omega @ Delta @ Omega
    obi = Omega @ np.linalg.inv(Omega.conj())

    # Pi must be the (n+1)-cycle sending e_j to e_{j-1} (ones on the first
    # superdiagonal and in the corner), with det = (-1)^n.
    expected_pi = np.zeros((N, N))
    expected_pi[j[:-1], j[:-1] + 1] = 1.0
    expected_pi[N - 1, 0] = 1.0
    assert np.max(np.abs(Pi - expected_pi)) < 1e-12
    assert abs(np.linalg.det(Pi).real - (-1.0) ** spec.n) < 1e-10

    assert np.max(np.abs(Delta @ Delta - np.eye(N))) < 1e-14

    expected_odo = N * np.diag(w ** (_ODO_POWER[spec.label] * j))
    assert np.max(np.abs(odo - expected_odo)) < 1e-10, spec.label

    expected_obi = _block_diag_j(1, spec.n)
    assert np.max(np.abs(obi - expected_obi)) < 1e-10

    return StructureMatrices(Omega, d, np.real(Pi).round(12), Delta, odo, obi)


def omega_delta_power(spec: CaseSpec) -> int:
    """Exponent p in Omega Delta Omega = (n+1) d^p for this case."""
    return _ODO_POWER[spec.label]


def _anti_identity(k: int) -> np.ndarray:
    return np.fliplr(np.eye(k)) if k else np.zeros((0, 0))


def _block_antidiag(l: int, m: int) -> np.ndarray:
    """Block-diagonal of the two anti-identities J_l, J_m (empty blocks allowed)."""
    out = np.zeros((l + m, l + m))
    out[:l, :l] = _anti_identity(l)
    out[l:, l:] = _anti_identity(m)
    return out


def _block_diag_j(l: int, m: int) -> np.ndarray:
    return _block_antidiag(l, m)
