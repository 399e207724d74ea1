"""Floating-point Atiyah determinant and distance-geometry helpers.

For n distinct points the construction lifts every direction P_j - P_i
(i < j) through the Hopf map to a spinor (z, w), hands the reversed pair
the partner lift (-conj(w), conj(z)), and forms, for each observer j, the
binary form prod_{k != j} (z_k xi + w_k eta).  The coefficient vectors of
those forms are the columns of an n x n complex matrix; its determinant
is the quantity all the conjectures are about.

For four points the real part of the determinant matches d4 on the
distance vector and the squared imaginary part matches w4^2 * z4, which
is what the sampling campaigns in this module cross-check against the
exact catalog.  Everything here is double precision; the exact modules
never import this one.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from . import catalog
from .polyring import normalize_coeff

Point3 = tuple[float, float, float]
Spinor = tuple[complex, complex]

#: Generic sampling rejects configurations with a closer pair than this.
SEPARATION_FLOOR = 1e-2

#: Degenerate sampling modes place points within this distance of the
#: named degeneracy, and never exactly on it.
DEGENERACY_OFFSET = 1e-3

MODES = ("generic", "near-planar", "near-collinear", "near-coincident")

_TINY = 1e-300


def hopf_map(spinor: Spinor) -> Point3:
    """Map a spinor (z, w) to ((|z|^2 - |w|^2)/2, Re(z conj w), Im(z conj w))."""
    z, w = spinor
    zeta = z * w.conjugate()
    return (0.5 * (abs(z) ** 2 - abs(w) ** 2), zeta.real, zeta.imag)


def hopf_lift(vector: Sequence[float]) -> Spinor:
    """Lift a nonzero 3-vector to a spinor, choosing a stable branch.

    Writing the vector as (t, zeta) with t real and zeta complex, the
    branch picked by the sign of t avoids cancellation near the poles:
    for t >= 0 take z = sqrt(r + t) and w = conj(zeta)/z, otherwise take
    w = sqrt(r - t) and z = zeta/w.  Raises ValueError on the zero
    vector, which signals coincident points upstream.
    """
    t, p, q = (float(component) for component in vector)
    r = math.hypot(t, p, q)
    if r == 0.0:
        raise ValueError("cannot lift the zero vector (coincident points)")
    zeta = complex(p, q)
    if t >= 0.0:
        z = complex(math.sqrt(r + t))
        w = zeta.conjugate() / z
    else:
        w = complex(math.sqrt(r - t))
        z = zeta / w
    return (z, w)


def paired_lift(i: int, j: int, lift_ij: Spinor) -> Spinor:
    """Partner lift for the reversed pair: (z, w) becomes (-conj(w), conj(z)).

    The convention applies to pairs taken with i < j; the returned spinor
    lifts the opposite direction, h(paired) = -h(lift).
    """
    if not i < j:
        raise ValueError("pairing convention expects i < j")
    z, w = lift_ij
    return (-w.conjugate(), z.conjugate())


def _lift_table(
    points: Sequence[Point3], pair_phases: Sequence[complex] | None
) -> dict[tuple[int, int], Spinor]:
    pairs = list(combinations(range(len(points)), 2))
    if pair_phases is not None and len(pair_phases) != len(pairs):
        raise ValueError(f"expected {len(pairs)} pair phases, got {len(pair_phases)}")
    table = {}
    for index, (i, j) in enumerate(pairs):
        direction = tuple(points[j][k] - points[i][k] for k in range(3))
        try:
            z, w = hopf_lift(direction)
        except ValueError:
            raise ValueError(f"points {i} and {j} coincide") from None
        if pair_phases is not None:
            lam = complex(pair_phases[index])
            z, w = lam * z, lam * w
        table[i, j] = (z, w)
    return table


def atiyah_matrix(
    points: Sequence[Point3], pair_phases: Sequence[complex] | None = None
) -> list[list[complex]]:
    """Matrix whose column j holds the coefficients of observer j's form.

    Column j is the plain (unweighted) coefficient vector of
    prod_{k != j} (z_k xi + w_k eta) in the basis xi^(n-1), xi^(n-2) eta,
    ..., eta^(n-1).  Lifts are built once per unordered pair; the reversed
    direction always uses the partner lift.

    ``pair_phases`` optionally multiplies the lift of each pair (in
    combinations order) by a unit-modulus factor; the determinant must not
    care, which is exactly what the phase-invariance tests exercise.
    """
    n = len(points)
    if not 2 <= n <= 6:
        raise ValueError("supported point counts are 2..6")
    for point in points:
        if not all(math.isfinite(float(c)) for c in point):
            raise ValueError("point coordinates must be finite")
    lifts = _lift_table(points, pair_phases)
    columns = []
    for j in range(n):
        coeffs = [complex(1.0)]
        for k in range(n):
            if k == j:
                continue
            if j < k:
                z, w = lifts[j, k]
            else:
                z, w = paired_lift(k, j, lifts[k, j])
            grown = [complex(0.0)] * (len(coeffs) + 1)
            for row, value in enumerate(coeffs):
                grown[row] += z * value
                grown[row + 1] += w * value
            coeffs = grown
        columns.append(coeffs)
    return [[columns[j][row] for j in range(n)] for row in range(n)]


def _det_complex(matrix: list[list[complex]]) -> complex:
    """Determinant by Gaussian elimination with partial pivoting."""
    work = [list(row) for row in matrix]
    n = len(work)
    det = complex(1.0)
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(work[r][col]))
        if work[pivot_row][col] == 0:
            return complex(0.0)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        pivot = work[col][col]
        det *= pivot
        for r in range(col + 1, n):
            factor = work[r][col] / pivot
            if factor == 0:
                continue
            row = work[r]
            upper = work[col]
            for c in range(col + 1, n):
                row[c] -= factor * upper[c]
    return det


@dataclass(frozen=True)
class AtiyahResult:
    """Determinant value plus a cheap degeneracy signal.

    ``condition_hint`` is the smallest lift norm, sqrt(2 * min pairwise
    distance); values near zero mean the configuration is close to a
    coincidence and the determinant should not be trusted far.
    """

    value: complex
    n: int
    condition_hint: float


def atiyah_det(
    points: Sequence[Point3], pair_phases: Sequence[complex] | None = None
) -> AtiyahResult:
    matrix = atiyah_matrix(points, pair_phases)
    hint = math.sqrt(2.0 * _min_separation(points))
    return AtiyahResult(value=_det_complex(matrix), n=len(points), condition_hint=hint)


def _min_separation(points: Sequence[Point3]) -> float:
    return min(math.dist(p, q) for p, q in combinations(points, 2))


def distance_vector(a_pt, b_pt, c_pt, d_pt):
    """Six pairwise distances (a, b, c, x, y, z) of four labeled points.

    The labeling: a = |AD|, b = |BD|, c = |CD|, x = |AB|, y = |BC|,
    z = |AC|.  Degenerate inputs are allowed; zeros simply show up in the
    vector.
    """
    return (
        math.dist(a_pt, d_pt),
        math.dist(b_pt, d_pt),
        math.dist(c_pt, d_pt),
        math.dist(a_pt, b_pt),
        math.dist(b_pt, c_pt),
        math.dist(a_pt, c_pt),
    )


def triangle_slacks(u):
    """The twelve triangular variables evaluated at u, in catalog order."""
    return tuple(form.evaluate(u) for form in catalog.triangular_basis())


def cayley_menger_det(u):
    """Cayley-Menger determinant of the squared distances; equals 288 V^2.

    Exact (int or Fraction) entries get an exact determinant; anything
    else falls back to double precision with partial pivoting.
    """
    if len(u) != 6:
        raise ValueError("expected six distances")
    a, b, c, x, y, z = u
    a2, b2, c2, x2, y2, z2 = (v * v for v in (a, b, c, x, y, z))
    matrix = [
        [0, 1, 1, 1, 1],
        [1, 0, x2, z2, a2],
        [1, x2, 0, y2, b2],
        [1, z2, y2, 0, c2],
        [1, a2, b2, c2, 0],
    ]
    if all(isinstance(v, (int, Fraction)) for v in u):
        return _det_exact(matrix)
    return _det_complex([[complex(float(e)) for e in row] for row in matrix]).real


def _det_exact(matrix):
    work = [[Fraction(entry) for entry in row] for row in matrix]
    n = len(work)
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col]), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        pivot = work[col][col]
        det *= pivot
        for r in range(col + 1, n):
            factor = work[r][col] / pivot
            if factor:
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return normalize_coeff(det)


def is_geometric_candidate(u, tol: float = 1e-9) -> bool:
    """True when u passes every triangle inequality and the volume test.

    All twelve triangular variables must be nonnegative (up to tol
    relative slack for rounded input) and the Cayley-Menger determinant
    must be >= -tol relative to the natural sixth-power scale.
    """
    if len(u) != 6 or any(v < 0 for v in u):
        return False
    scale = float(max(u))
    if scale == 0.0:
        return True
    slack = -tol * scale
    if any(t < slack for t in triangle_slacks(u)):
        return False
    return cayley_menger_det(u) >= -tol * scale**6


def volume_squared_scaled(u):
    """144 V^2 for the tetrahedron with distance vector u.

    Exact input produces an exact rational; float input a float.  Raises
    ValueError when u is not realizable by four points.
    """
    if not is_geometric_candidate(u):
        raise ValueError("distance vector is not realizable by four points in 3-space")
    det = cayley_menger_det(u)
    if isinstance(det, float):
        return 0.5 * det
    return normalize_coeff(Fraction(det) / 2)


#: Distance vectors on which d4 = 64 p4 exactly; the first fifteen
#: (row-major) have d4 = p4 = 0, the remaining six do not.
_SPECIAL = (
    (0, 1, 4, 1, 4, 4),
    (0, 4, 8, 4, 7, 8),
    (0, 6, 0, 6, 6, 0),
    (0, 1, 1, 1, 2, 1),
    (0, 5, 5, 5, 5, 5),
    (0, 8, 8, 8, 1, 8),
    (0, 1, 3, 1, 4, 3),
    (0, 6, 3, 6, 8, 3),
    (0, 6, 7, 6, 3, 7),
    (0, 6, 6, 6, 9, 6),
    (0, 1, 1, 1, 0, 1),
    (0, 5, 3, 5, 3, 3),
    (3, 3, 1, 0, 2, 2),
    (9, 9, 7, 0, 2, 2),
    (13, 13, 7, 0, 6, 6),
    (19, 11, 7, 8, 4, 12),
    (17, 13, 4, 4, 9, 13),
    (15, 8, 7, 7, 1, 8),
    (9, 8, 1, 1, 7, 8),
    (11, 9, 8, 2, 1, 3),
    (17, 9, 2, 8, 7, 15),
)

SPECIAL_FLAT_COUNT = 15


def special_vectors():
    """The twenty-one exact distance vectors where the bound 64 is tight."""
    return _SPECIAL


def sample_config(n: int, seed, mode: str = "generic") -> list[Point3]:
    """Reproducible pseudo-random configuration of n points.

    generic keeps every pair at least SEPARATION_FLOOR apart inside
    [-1, 1]^3.  The degenerate modes park the configuration within
    DEGENERACY_OFFSET of a plane, a line, or a coincidence, always
    strictly off the exact degeneracy.
    """
    if not 2 <= n <= 6:
        raise ValueError("n must be in 2..6")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; pick one of {', '.join(MODES)}")
    rng = random.Random(seed)
    if mode == "generic":
        return _sample_generic(rng, n)
    if mode == "near-planar":
        return _sample_near_planar(rng, n)
    if mode == "near-collinear":
        return _sample_near_collinear(rng, n)
    return _sample_near_coincident(rng, n)


def _sample_generic(rng: random.Random, n: int) -> list[Point3]:
    while True:
        points = [
            (rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1))
            for _ in range(n)
        ]
        if _min_separation(points) >= SEPARATION_FLOOR:
            return points


def _tiny_offset(rng: random.Random) -> float:
    return rng.choice((-1.0, 1.0)) * rng.uniform(1e-6, DEGENERACY_OFFSET)


def _sample_near_planar(rng: random.Random, n: int) -> list[Point3]:
    while True:
        flat = [(rng.uniform(-1, 1), rng.uniform(-1, 1), 0.0) for _ in range(n)]
        if _min_separation(flat) >= SEPARATION_FLOOR:
            break
    return [(px, py, _tiny_offset(rng)) for px, py, _ in flat]


def _sample_near_collinear(rng: random.Random, n: int) -> list[Point3]:
    while True:
        stations = sorted(rng.uniform(-1, 1) for _ in range(n))
        gaps = [b - a for a, b in zip(stations, stations[1:])]
        if min(gaps) >= SEPARATION_FLOOR:
            break
    return [(s, _tiny_offset(rng), _tiny_offset(rng)) for s in stations]


def _sample_near_coincident(rng: random.Random, n: int) -> list[Point3]:
    points = _sample_generic(rng, n)
    radius = rng.uniform(1e-6, DEGENERACY_OFFSET)
    direction = _unit_direction(rng)
    anchor = points[0]
    points[1] = (
        anchor[0] + radius * direction[0],
        anchor[1] + radius * direction[1],
        anchor[2] + radius * direction[2],
    )
    return points


def _unit_direction(rng: random.Random) -> Point3:
    while True:
        v = (rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        norm = math.hypot(*v)
        if norm > 1e-12:
            return (v[0] / norm, v[1] / norm, v[2] / norm)


def geometric_distance_samples(
    count: int, seed: int = 0, volume_floor: float = 1e-3
) -> list[tuple[float, ...]]:
    """Distance vectors of random tetrahedra with a conditioning floor.

    Generic configurations are rejected when 144 V^2 falls below
    ``volume_floor`` times the sixth power of the mean distance; below
    that, the volume is dominated by rounding noise and relative
    comparisons between the exact catalog and the Cayley-Menger route
    stop being meaningful.  The floor rejects a few percent of samples.
    """
    vectors: list[tuple[float, ...]] = []
    index = 0
    while len(vectors) < count:
        points = sample_config(4, _config_seed(seed, index), "generic")
        index += 1
        u = distance_vector(*points)
        mean = sum(u) / 6
        if volume_squared_scaled(u) < volume_floor * mean**6:
            continue
        vectors.append(u)
    return vectors


@lru_cache(maxsize=None)
def _float_fn(name: str):
    """Compile a catalog polynomial into a fast float evaluator."""
    poly = catalog.named_polynomials()[name]
    terms = tuple((float(coeff), mono) for mono, coeff in poly.sorted_terms())

    def evaluate(u):
        av, bv, cv, xv, yv, zv = (float(v) for v in u)
        total = 0.0
        for coeff, (ea, eb, ec, ex, ey, ez) in terms:
            total += coeff * av**ea * bv**eb * cv**ec * xv**ex * yv**ey * zv**ez
        return total

    return evaluate


def _d3_float(p: float, q: float, r: float) -> float:
    return (-p + q + r) * (p - q + r) * (p + q - r)


def _face_product(u) -> float:
    """Product of the four 3-point determinants, from the factored form."""
    a, b, c, x, y, z = (float(v) for v in u)
    total = 1.0
    for p, q, r in ((x, y, z), (x, b, a), (y, c, b), (z, c, a)):
        total *= 8.0 * p * q * r + _d3_float(p, q, r)
    return total


def _pairwise_product(points: Sequence[Point3]) -> float:
    total = 1.0
    for p, q in combinations(points, 2):
        total *= 2.0 * math.dist(p, q)
    return total


@dataclass(frozen=True)
class SampleStats:
    """Aggregated campaign report.

    Deviations are relative to the determinant scale; margins are ratios
    (lhs / rhs) of the inequality under test, so anything >= 1 - slack
    passes.  Fields that do not apply to the sampled n stay None.
    """

    n: int
    mode: str
    count: int
    tol: float
    margin_slack: float
    checked: int
    degenerate: int
    line_deviation: float | None
    triangle_deviation: float | None
    re_deviation: float | None
    im_sq_deviation: float | None
    min_pair_margin: float
    min_face_margin: float | None
    worst_index: int | None
    worst_seed: int | None
    identity_violations: int
    margin_violations: int

    def passed(self) -> bool:
        return self.identity_violations == 0 and self.margin_violations == 0


def _config_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def iter_samples(
    n: int, count: int, seed: int = 0, mode: str = "generic"
) -> Iterator[tuple[int, list[Point3]]]:
    """Yield (config_seed, points) pairs; each sample is independently seeded."""
    for index in range(count):
        config_seed = _config_seed(seed, index)
        yield config_seed, sample_config(n, config_seed, mode)


def run_samples(
    n: int,
    count: int,
    seed: int = 0,
    mode: str = "generic",
    tol: float = 1e-8,
    margin_slack: float = 1e-9,
) -> SampleStats:
    """Sampling campaign comparing determinants against the exact catalog.

    For every configuration the pairwise-product inequality
    |At| >= prod 2 r_ij is scored; at n = 4 the real/imaginary identities
    and the face-product inequality are scored as well, at n = 3 the
    8xyz + d3 formula, at n = 2 the exact 2x value.
    """
    d4f = _float_fn("d4") if n == 4 else None
    w4f = _float_fn("w4") if n == 4 else None
    z4f = _float_fn("z4") if n == 4 else None

    checked = 0
    degenerate = 0
    identity_violations = 0
    margin_violations = 0
    line_dev = 0.0
    tri_dev = 0.0
    re_dev = 0.0
    im_dev = 0.0
    min_pair = math.inf
    min_face = math.inf
    worst_index = None
    worst_seed = None

    for index in range(count):
        config_seed = _config_seed(seed, index)
        points = sample_config(n, config_seed, mode)
        if _min_separation(points) == 0.0:
            degenerate += 1
            continue
        checked += 1
        at = atiyah_det(points).value
        magnitude = abs(at)

        pair_margin = magnitude / max(_pairwise_product(points), _TINY)
        if pair_margin < min_pair:
            min_pair = pair_margin
            worst_index = index
            worst_seed = config_seed
        if pair_margin < 1.0 - margin_slack:
            margin_violations += 1

        if n == 2:
            reference = 2.0 * math.dist(points[0], points[1])
            deviation = abs(at - reference) / reference
            line_dev = max(line_dev, deviation)
            if deviation > tol:
                identity_violations += 1
        elif n == 3:
            sx = math.dist(points[0], points[1])
            sy = math.dist(points[1], points[2])
            sz = math.dist(points[0], points[2])
            reference = 8.0 * sx * sy * sz + _d3_float(sx, sy, sz)
            deviation = abs(at - reference) / max(abs(reference), _TINY)
            tri_dev = max(tri_dev, deviation)
            if deviation > tol:
                identity_violations += 1
        elif n == 4:
            u = distance_vector(*points)
            scale = max(magnitude, _TINY)
            sample_re = abs(at.real - d4f(u)) / scale
            sample_im = abs(at.imag**2 - w4f(u) ** 2 * z4f(u)) / scale**2
            re_dev = max(re_dev, sample_re)
            im_dev = max(im_dev, sample_im)
            if sample_re > tol or sample_im > tol:
                identity_violations += 1
            face = _face_product(u)
            face_margin = magnitude**2 / face if face > 0 else math.inf
            if face_margin < min_face:
                min_face = face_margin
            if face_margin < 1.0 - margin_slack:
                margin_violations += 1

    return SampleStats(
        n=n,
        mode=mode,
        count=count,
        tol=tol,
        margin_slack=margin_slack,
        checked=checked,
        degenerate=degenerate,
        line_deviation=line_dev if n == 2 else None,
        triangle_deviation=tri_dev if n == 3 else None,
        re_deviation=re_dev if n == 4 else None,
        im_sq_deviation=im_dev if n == 4 else None,
        min_pair_margin=min_pair,
        min_face_margin=(min_face if n == 4 else None),
        worst_index=worst_index,
        worst_seed=worst_seed,
        identity_violations=identity_violations,
        margin_violations=margin_violations,
    )
