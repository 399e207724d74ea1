"""The permutation action of relabelling the four points.

Relabelling the four points permutes the six pairwise distances
(a, b, c, x, y, z).  The 24 resulting distance permutations are tabulated
below, together with a sign for each row; a polynomial is *symmetric* when
every row fixes it and *skew-symmetric* when row i multiplies it by the
row's sign.

The signs are table data, not the parity of the 6-letter permutation: a
transposition of two points is odd even though the induced permutation of
the six distances can be even.  ``self_test`` re-derives the group
structure (closure, inverses, sign homomorphism) from the table itself, so
a transcription slip in either the rows or the signs cannot survive the
test suite.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, TypeVar

from .polyring import Coeff, Mono, N_VARS, Poly, mono_key

_T = TypeVar("_T")

# Row i lists which distance lands in each slot after the i-th relabelling
# of the points; slot order is (a, b, c, x, y, z).
_ROW_SPEC = (
    "a b c x y z",
    "a x z b y c",
    "b c a y z x",
    "x b y a c z",
    "c a b z x y",
    "z y c x b a",
    "y z c x a b",
    "c b a y x z",
    "x y b z c a",
    "a c b z y x",
    "z x a y b c",
    "b a c x z y",
    "z c y a b x",
    "x z a y c b",
    "x a z b c y",
    "y x b z a c",
    "y b x c a z",
    "y c z b a x",
    "c y z b x a",
    "z a x c b y",
    "b x y a z c",
    "c z y a x b",
    "a z x c y b",
    "b y x c z a",
)

_NAME_TO_INDEX = {"a": 0, "b": 1, "c": 2, "x": 3, "y": 4, "z": 5}

#: ROWS[i][k] = index of the variable occupying slot k in row i.
ROWS: tuple[tuple[int, ...], ...] = tuple(
    tuple(_NAME_TO_INDEX[name] for name in spec.split()) for spec in _ROW_SPEC
)

#: Sign attached to row i: +1 for even i, -1 for odd i.
SIGNS: tuple[int, ...] = tuple(1 if i % 2 == 0 else -1 for i in range(24))

GROUP_ORDER = 24


def _check_row_index(index: int) -> None:
    if not 0 <= index < GROUP_ORDER:
        raise IndexError(f"permutation index {index} out of range 0..23")


def permute_mono(mono: Mono, row: tuple[int, ...]) -> Mono:
    """Push an exponent vector through one table row."""
    out = [0] * N_VARS
    for k in range(N_VARS):
        out[row[k]] = mono[k]
    return tuple(out)


def permute_tuple(values: Sequence[_T], index: int) -> tuple[_T, ...]:
    """Numeric counterpart of :func:`apply_perm`.

    Returns the tuple whose k-th entry is the value of the variable named
    in slot k of the row, so that
    ``apply_perm(p, i).evaluate(u) == p.evaluate(permute_tuple(u, i))``.
    """
    _check_row_index(index)
    row = ROWS[index]
    return tuple(values[row[k]] for k in range(N_VARS))


def apply_perm(poly: Poly, index: int) -> Poly:
    """Substitute variables according to row ``index`` of the table."""
    _check_row_index(index)
    row = ROWS[index]
    result: dict[Mono, Coeff] = {}
    for mono, coeff in poly.terms.items():
        out = [0] * N_VARS
        out[row[0]] = mono[0]
        out[row[1]] = mono[1]
        out[row[2]] = mono[2]
        out[row[3]] = mono[3]
        out[row[4]] = mono[4]
        out[row[5]] = mono[5]
        result[tuple(out)] = coeff
    return Poly._raw(result)


def orbit_sum(poly: Poly) -> Poly:
    """Sum of the 24 permuted images of ``poly`` (24 times the average).

    Kept separate from :func:`sym_average` because the certificate checks
    accumulate these sums with integer coefficients and divide once at the
    very end.
    """
    result: dict[Mono, Coeff] = {}
    get = result.get
    for row in ROWS:
        r0, r1, r2, r3, r4, r5 = row
        for mono, coeff in poly.terms.items():
            out = [0] * N_VARS
            out[r0] = mono[0]
            out[r1] = mono[1]
            out[r2] = mono[2]
            out[r3] = mono[3]
            out[r4] = mono[4]
            out[r5] = mono[5]
            key = tuple(out)
            total = get(key, 0) + coeff
            if total:
                result[key] = total
            elif key in result:
                del result[key]
    return Poly._raw(result)


def sym_average(poly: Poly) -> Poly:
    """The symmetric average: mean of the 24 permuted images."""
    return orbit_sum(poly).scale(Fraction(1, 24))


def is_symmetric(poly: Poly) -> bool:
    """True iff every table row fixes the polynomial."""
    return all(apply_perm(poly, i) == poly for i in range(GROUP_ORDER))


def is_skew_symmetric(poly: Poly) -> bool:
    """True iff row i carries the polynomial to sign(i) times itself."""
    neg = -poly
    for i in range(GROUP_ORDER):
        expected = poly if SIGNS[i] == 1 else neg
        if apply_perm(poly, i) != expected:
            return False
    return True


def orbit_canonical(mono: Mono) -> Mono:
    """Graded-lex-maximal exponent vector in the orbit of ``mono``."""
    best = permute_mono(mono, ROWS[0])
    for row in ROWS[1:]:
        candidate = permute_mono(mono, row)
        if candidate > best:
            best = candidate
    return best


def compose(first: int, second: int) -> int:
    """Row index applying row ``first`` and then row ``second``.

    ``apply_perm(apply_perm(p, first), second) == apply_perm(p, compose(first, second))``.
    """
    _check_row_index(first)
    _check_row_index(second)
    row_f, row_s = ROWS[first], ROWS[second]
    combined = tuple(row_s[row_f[k]] for k in range(N_VARS))
    return _ROW_LOOKUP[combined]


_ROW_LOOKUP = {row: i for i, row in enumerate(ROWS)}


def self_test() -> dict[str, int]:
    """Re-derive the group structure from the table; raise on any defect.

    Checks: the 24 rows are distinct bijections of the six slots, the set
    is closed under composition, every row has an inverse in the set, the
    signs form a homomorphism to {+1, -1}, and exactly half the rows carry
    each sign.  Returns a small summary for reporting.
    """
    if len(_ROW_LOOKUP) != GROUP_ORDER:
        raise ValueError("permutation table contains duplicate rows")
    for i, row in enumerate(ROWS):
        if sorted(row) != list(range(N_VARS)):
            raise ValueError(f"row {i} is not a permutation of the six slots")
    if SIGNS.count(1) != 12 or SIGNS.count(-1) != 12:
        raise ValueError("signs must split 12 even / 12 odd")
    identity_hits = 0
    for i in range(GROUP_ORDER):
        inverse_found = False
        for j in range(GROUP_ORDER):
            combined = tuple(ROWS[j][ROWS[i][k]] for k in range(N_VARS))
            if combined not in _ROW_LOOKUP:
                raise ValueError(f"composition of rows {i} and {j} leaves the table")
            k = _ROW_LOOKUP[combined]
            if SIGNS[k] != SIGNS[i] * SIGNS[j]:
                raise ValueError(f"sign homomorphism fails on rows {i} and {j}")
            if k == 0:
                inverse_found = True
                identity_hits += 1
        if not inverse_found:
            raise ValueError(f"row {i} has no inverse in the table")
    return {
        "order": GROUP_ORDER,
        "even_rows": SIGNS.count(1),
        "identity_compositions": identity_hits,
    }


def sorted_mono_descending(monos: Sequence[Mono]) -> list[Mono]:
    """Descending graded-lex sort, shared by callers that build tables."""
    return sorted(monos, key=mono_key, reverse=True)
