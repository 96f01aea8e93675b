"""Matrices of linear forms on projective 3-space.

A pencil is Sum_i lambda_i * M_i for four rational coefficient matrices.
This module answers rank questions about the evaluated matrices: generic
rank, injectivity or surjectivity at every nonzero parameter, and whether
the locus of parameters where full rank fails has codimension at least 2.

Verdicts are exact for column- or row-count one (the charge-1 shapes).
Elsewhere a negative answer always carries a certificate, while a positive
answer is reported as "probably yes" with the number of completed probe
rounds.  Round internals are exact: restriction to a random line turns the
maximal minors into univariate polynomials whose gcd is computed over the
rationals, and restriction to a random plane is settled by bivariate
elimination with resultants.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Literal, Sequence

import sympy

from .linalg import (
    RationalMatrix,
    hstack,
    kernel_basis,
    random_rational,
    rank,
)

YES = "yes"
NO = "no"
PROBABLY_YES = "probably-yes"


class ShapeError(ValueError):
    """The pencil shape cannot support the requested question."""


@dataclass(frozen=True)
class LinearPencil:
    """rows x cols matrix of linear forms, one coefficient matrix per variable."""

    rows: int
    cols: int
    coeff: tuple[RationalMatrix, RationalMatrix, RationalMatrix, RationalMatrix]

    def __post_init__(self) -> None:
        if len(self.coeff) != 4:
            raise ValueError("a pencil needs exactly 4 coefficient matrices")
        for m in self.coeff:
            if m.shape != (self.rows, self.cols):
                raise ValueError("coefficient matrices must share the pencil shape")

    def evaluate(self, lam: Sequence[Fraction | int]) -> RationalMatrix:
        """Sum of lambda_i times the i-th coefficient matrix."""
        if len(lam) != 4:
            raise ValueError("parameter must have 4 coordinates")
        out = RationalMatrix.zeros(self.rows, self.cols)
        for li, mi in zip(lam, self.coeff):
            if li != 0:
                out = out + mi * li
        return out

    def transpose(self) -> "LinearPencil":
        return LinearPencil(
            self.cols, self.rows, tuple(m.transpose() for m in self.coeff)
        )

    def stacked_coefficients(self) -> RationalMatrix:
        """The rows x 4*cols matrix [M_0 | M_1 | M_2 | M_3]."""
        return hstack(list(self.coeff))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.coeff)


@dataclass(frozen=True)
class PencilVerdict:
    """Answer to a pencil question, with evidence.

    answer:       "yes", "no" or "probably-yes".
    rounds:       completed probe rounds, for probabilistic answers.
    witness:      a rational parameter where full rank fails; always present
                  and re-verified when a "no" has a rational witness.
    witness_poly: univariate polynomial (low-degree-first coefficients) whose
                  roots give rank-drop points on the witness line or plane,
                  used when no rational witness exists.
    witness_frame: the rational points spanning the probed line or plane the
                  polynomial certificate refers to.
    """

    answer: str
    rounds: int | None = None
    witness: tuple[Fraction, ...] | None = None
    witness_poly: tuple[Fraction, ...] | None = None
    witness_frame: tuple[tuple[Fraction, ...], ...] | None = None

    @property
    def affirmative(self) -> bool:
        return self.answer in (YES, PROBABLY_YES)


def _full_rank(p: LinearPencil) -> int:
    return min(p.rows, p.cols)


def _random_lambda(rng: random.Random) -> tuple[Fraction, ...]:
    while True:
        lam = tuple(random_rational(rng) for _ in range(4))
        if any(x != 0 for x in lam):
            return lam


def generic_rank(p: LinearPencil, seed: int = 0, samples: int = 16) -> int:
    """Maximum evaluated rank over seeded random parameters.

    The result is a certified lower bound for the true generic rank and, for
    random sampling off the rank-drop locus, equals it.
    """
    rng = random.Random(seed)
    best = 0
    cap = _full_rank(p)
    for _ in range(samples):
        best = max(best, rank(p.evaluate(_random_lambda(rng))))
        if best == cap:
            break
    return best


# ---------------------------------------------------------------------------
# univariate polynomial helpers (coefficients low-degree-first)


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_eval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def _poly_monic(c: list[Fraction]) -> list[Fraction]:
    if not c:
        return c
    lead = c[-1]
    return [x / lead for x in c]


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lb
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] -= factor * bc
        _poly_trim(a)
    return a


def _poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    fa, fb = _poly_trim(list(a)), _poly_trim(list(b))
    while fb:
        fa, fb = fb, _poly_mod(fa, fb)
    return _poly_monic(fa)


def _poly_gcd_many(polys: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    g: list[Fraction] = []
    for p in polys:
        g = _poly_gcd(g, p)
        if len(g) == 1:
            break
    return g


def _rational_roots(c: Sequence[Fraction]) -> list[Fraction]:
    coeffs = _poly_trim(list(c))
    if not coeffs or len(coeffs) == 1:
        return []
    x = sympy.Symbol("x")
    poly = sympy.Poly(
        sum(sympy.Rational(q.numerator, q.denominator) * x**i for i, q in enumerate(coeffs)),
        x,
    )
    roots = []
    for r in poly.ground_roots():
        if r.is_Rational:
            roots.append(Fraction(int(r.p), int(r.q)))
    return sorted(roots)


def _minor_polys_on_line(
    e0: RationalMatrix, e1: RationalMatrix, size: int
) -> list[list[Fraction]]:
    """Maximal-minor polynomials of e0 + t*e1 via evaluation and interpolation.

    Each size x size minor has degree at most `size`, so values at size+1
    sample points determine it exactly.
    """
    npts = size + 1
    points = [Fraction(k) for k in range(npts)]
    evaluated = [e0 + e1 * t for t in points]
    row_sets = list(combinations(range(e0.rows), size))
    col_sets = list(combinations(range(e0.cols), size))
    polys: list[list[Fraction]] = []
    for rs in row_sets:
        for cs in col_sets:
            values = [_submatrix_det(ev, rs, cs) for ev in evaluated]
            polys.append(_interpolate(points, values))
    return polys


def _submatrix_det(m: RationalMatrix, rs: Sequence[int], cs: Sequence[int]) -> Fraction:
    k = len(rs)
    if k == 1:
        return m.at(rs[0], cs[0])
    if k == 2:
        return m.at(rs[0], cs[0]) * m.at(rs[1], cs[1]) - m.at(rs[0], cs[1]) * m.at(
            rs[1], cs[0]
        )
    # Laplace expansion along the first row; minors stay tiny here.
    total = Fraction(0)
    sign = 1
    for idx in range(k):
        sub_cs = cs[:idx] + cs[idx + 1 :]
        total += sign * m.at(rs[0], cs[idx]) * _submatrix_det(m, rs[1:], sub_cs)
        sign = -sign
    return total


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    # Lagrange interpolation, exact over the rationals.
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = _poly_mul(basis, [-xs[j], Fraction(1)])
            denom *= xs[i] - xs[j]
        scale = ys[i] / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    return _poly_trim(coeffs)


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


# ---------------------------------------------------------------------------
# exact answers for width-one shapes


def _exact_stack_verdict(p: LinearPencil) -> tuple[int, RationalMatrix]:
    stack = p.stacked_coefficients()
    return rank(stack), stack


def injective_everywhere(
    p: LinearPencil, seed: int = 0, plane_rounds: int = 4
) -> PencilVerdict:
    """Does the evaluated matrix have full column rank at every nonzero parameter?

    Exact for single-column pencils (full rank of the stacked coefficient
    matrix decides).  For wider shapes a random search looks for a rank-drop
    witness; failing that, each round restricts the pencil to a random plane
    and eliminates the maximal minors exactly, and the verdict is
    "probably-yes" with the round count.
    """
    if p.rows < p.cols:
        raise ShapeError("injectivity needs at least as many rows as columns")
    if p.cols == 0:
        return PencilVerdict(YES)
    if p.is_zero():
        w = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
        return PencilVerdict(NO, witness=w)
    if p.cols == 1:
        r, stack = _exact_stack_verdict(p)
        if r == 4:
            return PencilVerdict(YES)
        witness = kernel_basis(stack)[0]
        return PencilVerdict(NO, witness=witness)

    rng = random.Random(seed)
    full = p.cols
    for _ in range(16):
        lam = _random_lambda(rng)
        if rank(p.evaluate(lam)) < full:
            return PencilVerdict(NO, witness=lam)

    completed = 0
    attempts = 0
    while completed < plane_rounds and attempts < 4 * plane_rounds:
        attempts += 1
        outcome = _plane_round(p, rng)
        if outcome is None:
            continue
        hit, witness, poly, frame = outcome
        if hit:
            if witness is not None:
                return PencilVerdict(NO, witness=witness)
            return PencilVerdict(NO, witness_poly=poly, witness_frame=frame)
        completed += 1
    return PencilVerdict(PROBABLY_YES, rounds=completed)


def surjective_everywhere(
    p: LinearPencil, seed: int = 0, plane_rounds: int = 4
) -> PencilVerdict:
    """Full row rank at every nonzero parameter; dual to injectivity."""
    return injective_everywhere(p.transpose(), seed=seed, plane_rounds=plane_rounds)


def fail_codim_at_least_2(
    p: LinearPencil,
    mode: Literal["injective", "surjective"],
    seed: int = 0,
    lines: int = 8,
) -> PencilVerdict:
    """Does the locus of parameters failing full rank have codimension >= 2?

    Exact for width-one shapes, where the codimension equals the rank of the
    stacked coefficient matrix.  Otherwise the pencil is restricted to seeded
    random lines; a codimension-1 locus meets every line, so a hit refutes
    the question and a clean sweep yields "probably-yes".
    """
    if mode == "surjective":
        return fail_codim_at_least_2(p.transpose(), "injective", seed=seed, lines=lines)
    if mode != "injective":
        raise ValueError("mode must be 'injective' or 'surjective'")

    if p.cols == 0:
        return PencilVerdict(YES)
    if p.rows < p.cols:
        w = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
        return PencilVerdict(NO, witness=w)
    if p.cols == 1:
        r, stack = _exact_stack_verdict(p)
        if r >= 2:
            return PencilVerdict(YES)
        if r == 0:
            w = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
            return PencilVerdict(NO, witness=w)
        witness = kernel_basis(stack)[0]
        return PencilVerdict(NO, witness=witness)

    rng = random.Random(seed)
    full = p.cols
    for _ in range(lines):
        lam0, lam1 = _random_line(rng)
        if rank(p.evaluate(lam1)) < full:
            return PencilVerdict(NO, witness=lam1)
        e0 = p.evaluate(lam0)
        e1 = p.evaluate(lam1)
        minors = _minor_polys_on_line(e0, e1, full)
        if all(not poly for poly in minors):
            return PencilVerdict(NO, witness=lam0)
        g = _poly_gcd_many(minors)
        if len(g) > 1:
            for root in _rational_roots(g):
                lam = tuple(a + root * b for a, b in zip(lam0, lam1))
                if any(x != 0 for x in lam) and rank(p.evaluate(lam)) < full:
                    return PencilVerdict(NO, witness=lam)
            return PencilVerdict(
                NO, witness_poly=tuple(g), witness_frame=(lam0, lam1)
            )
    return PencilVerdict(PROBABLY_YES, rounds=lines)


def _random_line(rng: random.Random) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    while True:
        lam0 = _random_lambda(rng)
        lam1 = _random_lambda(rng)
        m = RationalMatrix.from_rows([list(lam0), list(lam1)])
        if rank(m) == 2:
            return lam0, lam1


def _random_plane(rng: random.Random) -> RationalMatrix:
    while True:
        m = RationalMatrix(
            4, 3, tuple(random_rational(rng) for _ in range(12))
        )
        if rank(m) == 3:
            return m


def _plane_round(
    p: LinearPencil, rng: random.Random
) -> tuple[bool, tuple[Fraction, ...] | None, tuple[Fraction, ...] | None, tuple] | None:
    """One exact elimination round on a random plane.

    Returns None when the elimination degenerated (round is redrawn),
    otherwise (hit, rational_witness, certificate_poly, frame).  Only
    verified facts produce a hit: either a rational rank-drop point or a
    nonconstant polynomial dividing every maximal minor on a rational line
    of the plane, which forces common zeros over the complex numbers.
    """
    plane = _random_plane(rng)
    s, t, u = sympy.symbols("s t u")
    restricted = []
    for j in range(3):
        col = [plane.at(i, j) for i in range(4)]
        acc = RationalMatrix.zeros(p.rows, p.cols)
        for ci, mi in zip(col, p.coeff):
            if ci != 0:
                acc = acc + mi * ci
        restricted.append(acc)
    b0, b1, b2 = restricted

    def entry(i: int, j: int):
        return (
            _sym(b0.at(i, j)) * s + _sym(b1.at(i, j)) * t + _sym(b2.at(i, j)) * u
        )

    mat = sympy.Matrix(p.rows, p.cols, lambda i, j: entry(i, j))
    size = p.cols
    minors = []
    for rows_sel in combinations(range(p.rows), size):
        sub = mat[list(rows_sel), :]
        minors.append(sympy.expand(sub.det(method="berkowitz")))
    nonzero = [m for m in minors if m != 0]
    if not nonzero:
        witness = tuple(plane.at(i, 0) for i in range(4))
        return True, witness, None, _frame(plane)

    g = nonzero[0]
    for mnr in nonzero[1:]:
        g = sympy.gcd(g, mnr)
        if g.is_constant():
            break
    if not g.is_constant():
        # A common curve of rank drop on the plane.
        hit = _rational_point_on_form(g, plane, p)
        if hit is not None:
            return True, hit, None, _frame(plane)
        poly = sympy.Poly(g.subs({t: 1, u: 1}), s)
        return True, None, _poly_coeffs(poly), _frame(plane)

    if all(m.subs({s: 0, t: 0, u: 1}) == 0 for m in minors):
        witness = tuple(plane.at(i, 2) for i in range(4))
        if rank(p.evaluate(witness)) < size:
            return True, witness, None, _frame(plane)

    for _ in range(3):
        f_comb = sum(sympy.Integer(rng.randint(-9, 9)) * m for m in nonzero)
        g_comb = sum(sympy.Integer(rng.randint(-9, 9)) * m for m in nonzero)
        res = sympy.resultant(f_comb, g_comb, u)
        if res != 0:
            break
    else:
        return None

    res = sympy.expand(res)
    candidates = _rational_projective_roots(res, s, t)
    for s0, t0 in candidates:
        specialized = [
            sympy.Poly(m.subs({s: _sym(s0), t: _sym(t0)}), u) for m in minors
        ]
        coeff_lists = [_poly_coeffs(sp) for sp in specialized]
        if all(len(cl) == 0 for cl in coeff_lists):
            gcd_u: list[Fraction] = []
        else:
            gcd_u = _poly_gcd_many([cl if cl else [] for cl in coeff_lists])
        if not gcd_u:
            # all minors vanish identically on this line through the plane
            lam = _plane_point(plane, s0, t0, Fraction(0))
            if any(x != 0 for x in lam) and rank(p.evaluate(lam)) < size:
                return True, lam, None, _frame(plane)
            lam = _plane_point(plane, s0, t0, Fraction(1))
            if any(x != 0 for x in lam) and rank(p.evaluate(lam)) < size:
                return True, lam, None, _frame(plane)
            continue
        if len(gcd_u) > 1:
            for root in _rational_roots(gcd_u):
                lam = _plane_point(plane, s0, t0, root)
                if any(x != 0 for x in lam) and rank(p.evaluate(lam)) < size:
                    return True, lam, None, _frame(plane)
            return True, None, tuple(gcd_u), _frame(plane)
    return False, None, None, _frame(plane)


def _sym(q: Fraction) -> sympy.Rational:
    return sympy.Rational(q.numerator, q.denominator)


def _frame(plane: RationalMatrix) -> tuple:
    return tuple(tuple(plane.at(i, j) for i in range(4)) for j in range(3))


def _plane_point(
    plane: RationalMatrix, s0: Fraction, t0: Fraction, u0: Fraction
) -> tuple[Fraction, ...]:
    return plane.apply((s0, t0, u0))


def _poly_coeffs(poly: "sympy.Poly") -> list[Fraction]:
    coeffs = poly.all_coeffs()[::-1]
    out = [Fraction(int(c.p), int(c.q)) for c in (sympy.Rational(c) for c in coeffs)]
    return _poly_trim(out)


def _rational_projective_roots(form, s, t) -> list[tuple[Fraction, Fraction]]:
    """Rational projective roots (s0 : t0) of a binary form."""
    out: list[tuple[Fraction, Fraction]] = []
    poly_s = sympy.Poly(form.subs({t: 1}), s)
    if poly_s.is_zero:
        return [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))]
    for r in poly_s.ground_roots():
        if r.is_Rational:
            out.append((Fraction(int(r.p), int(r.q)), Fraction(1)))
    # (1 : 0) is a root exactly when substituting t = 0 kills the form.
    if sympy.expand(form.subs({t: 0, s: 1})) == 0:
        out.append((Fraction(1), Fraction(0)))
    return out


def _rational_point_on_form(form, plane: RationalMatrix, p: LinearPencil):
    """Search a few rational lines of the plane for a rational zero of the form."""
    s, t, u = sympy.symbols("s t u")
    size = p.cols
    for t0 in (0, 1, 2, -1, 3):
        slice_poly = sympy.Poly(form.subs({t: sympy.Integer(t0), u: 1}), s)
        if slice_poly.is_zero:
            lam = _plane_point(plane, Fraction(0), Fraction(t0), Fraction(1))
            if any(x != 0 for x in lam) and rank(p.evaluate(lam)) < size:
                return lam
            continue
        for r in slice_poly.ground_roots():
            if not r.is_Rational:
                continue
            s0 = Fraction(int(r.p), int(r.q))
            lam = _plane_point(plane, s0, Fraction(t0), Fraction(1))
            if any(x != 0 for x in lam) and rank(p.evaluate(lam)) < size:
                return lam
    return None
