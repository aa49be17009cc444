# inertia.py
"""Exact inertia, shifted inertia, characteristic polynomials and float cross-checks.

The exact path is a fraction-free (Bareiss) symmetric elimination. After
``k`` pivots every active entry is a bordered minor of the original matrix,
so each update is an exact integer division by the previous pivot minor.
A 1x1 pivot contributes the sign of ``D(k+1) / D(k)``; when the whole
active diagonal vanishes, a 2x2 block ``[[0, q], [q, 0]]`` contributes one
positive and one negative eigenvalue. Sylvester's law makes the result
independent of pivot order.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from config import (
    APPROXIMATE_ZERO, ENERGY_TOLERANCE, EXACT_LIMIT, FLOAT_RESIDUAL_FLOOR,
    LARGE_LAMBDA_SLACK, LARGE_LAMBDA_THRESHOLD
)
from graph import Graph, adjacency_matrix
from utils import parse_rational, setup_logging, sign

logger = setup_logging(__name__)


class AsymmetricMatrixError(ValueError):
    """Input matrix is not symmetric."""


class ExactLimitError(ValueError):
    """Matrix dimension above the exact-arithmetic limit without approximate opt-in."""


class SpectrumError(RuntimeError):
    """Float eigensolver failed."""


class IntervalError(ValueError):
    """Interval with a > b."""


class ZeroPolynomialError(ValueError):
    """The zero polynomial has no inertia."""


@dataclass(frozen=True)
class Inertia:
    """(n+, n0, n-) of a symmetric matrix."""

    n_plus: int
    n_zero: int
    n_minus: int
    approximate: bool = field(default=False, compare=False)

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def rank(self) -> int:
        return self.n_plus + self.n_minus

    @property
    def order(self) -> int:
        return self.n_plus + self.n_zero + self.n_minus

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)

    def __add__(self, other: "Inertia") -> "Inertia":
        return Inertia(self.n_plus + other.n_plus, self.n_zero + other.n_zero,
                       self.n_minus + other.n_minus, self.approximate or other.approximate)

    def to_dict(self) -> Dict:
        data = {
            'n_plus': self.n_plus,
            'n_zero': self.n_zero,
            'n_minus': self.n_minus,
            'signature': self.signature,
            'rank': self.rank,
        }
        if self.approximate:
            data['approximate'] = True
        return data


@dataclass(frozen=True)
class RationalSymMatrix:
    """Symmetric matrix with Fraction entries, typically ``A - cI``."""

    entries: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def shifted(cls, m, c: Union[Fraction, int, str]) -> "RationalSymMatrix":
        c = parse_rational(c)
        rows = _as_rows(m)
        return cls(tuple(
            tuple(Fraction(x) - (c if i == j else 0) for j, x in enumerate(row))
            for i, row in enumerate(rows)
        ))

    @property
    def dimension(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, coefficients in descending degree."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError(f"Polynomial must be monic: {self.coefficients}")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        terms = []
        for power, c in zip(range(self.degree, -1, -1), self.coefficients):
            if c == 0:
                continue
            mono = "" if power == 0 else ("λ" if power == 1 else f"λ^{power}")
            mag = abs(c)
            body = f"{mag}{mono}" if mag != 1 or not mono else mono
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, body in terms[1:]:
            text += f" {s} {body}"
        return text


@dataclass(frozen=True)
class FloatSpectrum:
    eigenvalues: Tuple[float, ...]
    residual_bound: float

    @property
    def largest(self) -> float:
        return self.eigenvalues[0]

    @property
    def smallest(self) -> float:
        return self.eigenvalues[-1]

    @property
    def energy(self) -> float:
        return float(sum(abs(x) for x in self.eigenvalues))


# ---------------------------------------------------------------------------
# exact path

def _as_rows(m) -> List[List]:
    if isinstance(m, RationalSymMatrix):
        return [list(row) for row in m.entries]
    if isinstance(m, np.ndarray):
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise AsymmetricMatrixError(f"Matrix must be square, got shape {m.shape}")
        return m.tolist()
    rows = [list(row) for row in m]
    for row in rows:
        if len(row) != len(rows):
            raise AsymmetricMatrixError("Matrix must be square")
    return rows


def _integer_rows(m) -> List[List[int]]:
    """Symmetric integer rows, scaled by a positive common denominator."""
    rows = _as_rows(m)
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise AsymmetricMatrixError(f"Entries ({i},{j}) and ({j},{i}) differ")
    if all(isinstance(x, (int, np.integer)) for row in rows for x in row):
        return [[int(x) for x in row] for row in rows]
    fractions = [[Fraction(x) for x in row] for row in rows]
    scale = 1
    for row in fractions:
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    return [[int(x * scale) for x in row] for row in fractions]


def _bareiss_inertia(a: List[List[int]]) -> Tuple[int, int, int]:
    """Inertia of the symmetric integer matrix ``a`` (modified in place)."""
    n = len(a)
    active = list(range(n))
    prev = 1
    plus = minus = 0
    while active:
        best = max(active, key=lambda i: abs(a[i][i]))
        p = a[best][best]
        if p != 0:
            active.remove(best)
            if sign(p) * sign(prev) > 0:
                plus += 1
            else:
                minus += 1
            pivot_row = a[best]
            for k, r in enumerate(active):
                row_r = a[r]
                ar = row_r[best]
                for s in active[k:]:
                    value = (p * row_r[s] - ar * pivot_row[s]) // prev
                    row_r[s] = value
                    a[s][r] = value
            prev = p
            continue

        pair = None
        largest = 0
        for k, i in enumerate(active):
            row_i = a[i]
            for j in active[k + 1:]:
                if abs(row_i[j]) > largest:
                    largest = abs(row_i[j])
                    pair = (i, j)
        if pair is None:
            break
        i, j = pair
        q = a[i][j]
        active.remove(i)
        active.remove(j)
        plus += 1
        minus += 1
        row_i, row_j = a[i], a[j]
        prev_sq = prev * prev
        q_sq = q * q
        for k, r in enumerate(active):
            row_r = a[r]
            ri, rj = row_r[i], row_r[j]
            for s in active[k:]:
                value = (q * (ri * row_j[s] + rj * row_i[s]) - q_sq * row_r[s]) // prev_sq
                row_r[s] = value
                a[s][r] = value
        prev = -q_sq // prev
    return plus, n - plus - minus, minus


def _float_inertia(rows: List[List[int]]) -> Inertia:
    spectrum = float_spectrum(rows)
    tolerance = max(APPROXIMATE_ZERO, 10 * spectrum.residual_bound)
    plus = sum(1 for x in spectrum.eigenvalues if x > tolerance)
    minus = sum(1 for x in spectrum.eigenvalues if x < -tolerance)
    return Inertia(plus, len(rows) - plus - minus, minus, approximate=True)


def inertia(m, exact_limit: int = EXACT_LIMIT, allow_approximate: bool = False) -> Inertia:
    """Exact inertia of a symmetric integer or rational matrix.

    Args:
        m: numpy array, nested sequence or RationalSymMatrix
        exact_limit: largest dimension handled by exact elimination
        allow_approximate: above the limit, fall back to the float path
            and flag the result ``approximate``

    Returns:
        Inertia triple
    """
    rows = _integer_rows(m)
    if len(rows) > exact_limit:
        if not allow_approximate:
            raise ExactLimitError(f"Dimension {len(rows)} exceeds exact limit {exact_limit}")
        logger.info(f"Using float inertia for dimension {len(rows)}")
        return _float_inertia(rows)
    return Inertia(*_bareiss_inertia(rows))


def shifted_inertia(m, c: Union[Fraction, int, str], exact_limit: int = EXACT_LIMIT,
                    allow_approximate: bool = False) -> Inertia:
    """Inertia of ``m - cI``: eigenvalues above, equal to and below ``c``."""
    c = parse_rational(c)
    rows = _as_rows(m)
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise AsymmetricMatrixError(f"Entries ({i},{j}) and ({j},{i}) differ")
    if all(isinstance(x, (int, np.integer)) for row in rows for x in row):
        # q*m - p*I keeps everything integral
        p, q = c.numerator, c.denominator
        scaled = [[q * int(x) - (p if i == j else 0) for j, x in enumerate(row)]
                  for i, row in enumerate(rows)]
        return inertia(scaled, exact_limit, allow_approximate)
    return inertia(RationalSymMatrix.shifted(rows, c), exact_limit, allow_approximate)


def count_eigenvalues_in_interval(m, a: Union[Fraction, int, str], b: Union[Fraction, int, str],
                                  include_a: bool = False, include_b: bool = False,
                                  exact_limit: int = EXACT_LIMIT) -> int:
    """Exact number of eigenvalues in the interval between ``a`` and ``b``.

    Two shifted inertias are enough: eigenvalues below b (or at most b)
    minus eigenvalues below a (or at most a).
    """
    a, b = parse_rational(a), parse_rational(b)
    if a > b:
        raise IntervalError(f"Empty interval: {a} > {b}")
    at_a = shifted_inertia(m, a, exact_limit)
    at_b = at_a if a == b else shifted_inertia(m, b, exact_limit)
    upper = at_b.n_minus + (at_b.n_zero if include_b else 0)
    lower = at_a.n_minus + (0 if include_a else at_a.n_zero)
    return max(0, upper - lower)


def graph_inertia(g: Graph, allow_approximate: bool = False, exact_limit: int = EXACT_LIMIT) -> Inertia:
    """Inertia of A(G); exact up to ``exact_limit`` vertices."""
    rows = adjacency_matrix(g).tolist()
    if g.order > exact_limit:
        if not allow_approximate:
            raise ExactLimitError(f"Order {g.order} exceeds exact limit {exact_limit}")
        return _float_inertia(rows)
    return Inertia(*_bareiss_inertia(rows))


# ---------------------------------------------------------------------------
# characteristic polynomial

def char_poly(m) -> IntPolynomial:
    """det(λI - m) by the division-free Berkowitz algorithm."""
    rows = _integer_rows(m)
    if not rows:
        return IntPolynomial((1,))
    lam = sympy.Symbol("lambda")
    poly = sympy.Matrix(rows).charpoly(lam)
    return IntPolynomial(tuple(int(c) for c in poly.all_coeffs()))


def inertia_from_charpoly(p: Union[IntPolynomial, Sequence[int]]) -> Inertia:
    """Inertia from a real-rooted characteristic polynomial via Descartes' rule."""
    coefficients = list(p.coefficients if isinstance(p, IntPolynomial) else p)
    if not any(coefficients):
        raise ZeroPolynomialError("The zero polynomial has no roots to count")
    degree = len(coefficients) - 1
    n_zero = 0
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
        n_zero += 1
    nonzero = [c for c in coefficients if c != 0]
    n_plus = sum(1 for x, y in zip(nonzero, nonzero[1:]) if (x > 0) != (y > 0))
    return Inertia(n_plus, n_zero, degree - n_plus - n_zero)


# ---------------------------------------------------------------------------
# float path

def float_spectrum(m) -> FloatSpectrum:
    """Numerical eigenvalues in descending order with a residual error bound.

    Never used to classify eigenvalues against zero in the exact regime.
    """
    if isinstance(m, np.ndarray):
        a = m.astype(float)
    else:
        rows = _as_rows(m)
        a = np.array([[float(x) for x in row] for row in rows], dtype=float).reshape(len(rows), len(rows))
    n = a.shape[0]
    if n == 0:
        return FloatSpectrum((), 0.0)
    if not np.allclose(a, a.T):
        raise AsymmetricMatrixError("Float spectrum requires a symmetric matrix")
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as e:
        raise SpectrumError(f"Eigensolver failed: {e}") from e
    if not np.all(np.isfinite(values)):
        raise SpectrumError("Eigensolver returned non-finite values")
    residuals = np.linalg.norm(a @ vectors - vectors * values, axis=0)
    scale = float(np.linalg.norm(a, ord=2)) if n else 0.0
    bound = float(residuals.max()) + n * np.finfo(float).eps * max(scale, 1.0)
    return FloatSpectrum(tuple(float(x) for x in values[::-1]), max(bound, FLOAT_RESIDUAL_FLOOR))


def float_sign_agreement(spectrum: FloatSpectrum, exact: Inertia) -> bool:
    """True when every clearly nonzero float eigenvalue has the sign the exact inertia predicts.

    Disagreements are logged; the exact inertia is always the one reported.
    """
    cutoff = 10 * spectrum.residual_bound
    agree = True
    for i, value in enumerate(spectrum.eigenvalues):
        if abs(value) <= cutoff:
            continue
        if i < exact.n_plus:
            expected = 1
        elif i < exact.n_plus + exact.n_zero:
            expected = 0
        else:
            expected = -1
        if sign(value) != expected:
            agree = False
            logger.warning(f"Float eigenvalue {value!r} at position {i} disagrees with exact inertia "
                           f"{exact.as_tuple()}; keeping the exact result")
    return agree


@dataclass(frozen=True)
class EnergyReport:
    energy: float
    n_plus: int
    n_minus: int
    lambda_max: float
    lambda_min: float
    lemma_rhs: float
    holds_lower: bool
    holds_upper: bool
    holds_lemma: bool
    holds_strong: Optional[bool]

    def to_dict(self) -> Dict:
        return {
            'energy': self.energy,
            'lambda_max': self.lambda_max,
            'lambda_min': self.lambda_min,
            'lemma_rhs': self.lemma_rhs,
            'holds_lower': self.holds_lower,
            'holds_upper': self.holds_upper,
            'holds_lemma': self.holds_lemma,
            'holds_strong': self.holds_strong,
        }


def check_energy_bounds(g: Graph, tolerance: float = ENERGY_TOLERANCE,
                        allow_approximate: bool = False) -> EnergyReport:
    """Energy bounds around the least eigenvalue.

    E(G) >= n+ + n-, E(G) <= 2|λ_n| n-, and n+ <= n-(2|λ_n| - 1); when
    λ_1 >= 3.3 also n+ <= n-(2|λ_n| - 1) - 1.1. Inertia comes from the
    exact path, eigenvalues from the float path, with slack ``tolerance``.
    """
    if g.order == 0:
        raise ValueError("Energy bounds need a nonempty graph")
    exact = graph_inertia(g, allow_approximate)
    spectrum = float_spectrum([[row >> j & 1 for j in range(g.order)] for row in g.rows])
    float_sign_agreement(spectrum, exact)
    energy = spectrum.energy
    lam_min = spectrum.smallest
    lam_max = spectrum.largest
    lemma_rhs = exact.n_minus * (2 * abs(lam_min) - 1)
    strong = None
    if lam_max >= LARGE_LAMBDA_THRESHOLD:
        strong = exact.n_plus <= lemma_rhs - LARGE_LAMBDA_SLACK + tolerance
    return EnergyReport(
        energy=energy,
        n_plus=exact.n_plus,
        n_minus=exact.n_minus,
        lambda_max=lam_max,
        lambda_min=lam_min,
        lemma_rhs=lemma_rhs,
        holds_lower=energy >= exact.n_plus + exact.n_minus - tolerance,
        holds_upper=energy <= 2 * abs(lam_min) * exact.n_minus + tolerance,
        holds_lemma=exact.n_plus <= lemma_rhs + tolerance,
        holds_strong=strong,
    )
