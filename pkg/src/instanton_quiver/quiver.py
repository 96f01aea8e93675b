"""The three-vertex quiver with four arrows between each adjacent pair.

A representation assigns vector spaces of dimensions (a, b, c) to the
vertices, four b x a maps f_i to the first arrow family and four c x b maps
g_i to the second, subject to the anticommutation relations
g_i f_j + g_j f_i = 0 for 0 <= i <= j <= 3.

Besides relation checking and the base-change action, this module computes
Hom spaces exactly and decides subrepresentation existence through a
reduction to subspace pairs: a subrepresentation with dimensions
(s, m, w) exists iff there are subspaces U (dim s) and W (dim w) with
span{f_i(U)} contained in the joint preimage of W and the middle dimension
m squeezed between the two.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Literal, NamedTuple

from .linalg import (
    RationalMatrix,
    SingularMatrix,
    column_space,
    columns_in_span,
    hstack,
    inverse,
    kernel_basis,
    random_rational,
    rank,
    vstack,
)


class WrongDimension(ValueError):
    """A representation of a different dimension vector was required."""


class DimVector(NamedTuple):
    """Dimension vector indexed by the vertices -1, 0, 1."""

    s_minus1: int
    s0: int
    s1: int


@dataclass(frozen=True)
class QuiverRep:
    """A representation: dimension vector plus the two families of four maps."""

    dim: tuple[int, int, int]
    f: tuple[RationalMatrix, RationalMatrix, RationalMatrix, RationalMatrix]
    g: tuple[RationalMatrix, RationalMatrix, RationalMatrix, RationalMatrix]

    def __post_init__(self) -> None:
        a, b, c = self.dim
        if len(self.f) != 4 or len(self.g) != 4:
            raise ValueError("a representation carries 4 + 4 maps")
        for m in self.f:
            if m.shape != (b, a):
                raise ValueError(f"f maps must be {b}x{a}, got {m.shape}")
        for m in self.g:
            if m.shape != (c, b):
                raise ValueError(f"g maps must be {c}x{b}, got {m.shape}")


def stacked_f(rep: QuiverRep) -> RationalMatrix:
    """[f_0 | f_1 | f_2 | f_3], a b x 4a matrix."""
    return hstack(list(rep.f))


def stacked_g(rep: QuiverRep) -> RationalMatrix:
    """g_0 through g_3 stacked vertically, a 4c x b matrix."""
    return vstack(list(rep.g))


def dual_rep(rep: QuiverRep) -> QuiverRep:
    """Transpose all maps and swap the two arrow families.

    Sends a representation of dimension (a, b, c) to one of (c, b, a) and
    preserves the relations.
    """
    a, b, c = rep.dim
    return QuiverRep(
        (c, b, a),
        tuple(m.transpose() for m in rep.g),
        tuple(m.transpose() for m in rep.f),
    )


@dataclass(frozen=True)
class RelationViolation:
    """First failing anticommutation relation, with its residual matrix."""

    i: int
    j: int
    residual: RationalMatrix

    def __str__(self) -> str:
        return f"Violation({self.i},{self.j})"


def check_relations(rep: QuiverRep) -> RelationViolation | None:
    """None when g_i f_j + g_j f_i vanishes for all 0 <= i <= j <= 3."""
    for i in range(4):
        for j in range(i, 4):
            residual = rep.g[i] * rep.f[j] + rep.g[j] * rep.f[i]
            if not residual.is_zero():
                return RelationViolation(i, j, residual)
    return None


def gauge_act(
    rep: QuiverRep,
    g_minus1: RationalMatrix,
    g0: RationalMatrix,
    g1: RationalMatrix,
) -> QuiverRep:
    """Base change at the three vertices: f -> g0 f g_minus1^-1, g -> g1 g g0^-1.

    Raises SingularMatrix when any of the three matrices is not invertible.
    """
    a, b, c = rep.dim
    for m, n in ((g_minus1, a), (g0, b), (g1, c)):
        if m.shape != (n, n):
            raise ValueError("gauge matrices must match the dimension vector")
    inv_m1 = inverse(g_minus1)
    inv_0 = inverse(g0)
    if rank(g1) < c:
        raise SingularMatrix("gauge matrix at the last vertex is singular")
    return QuiverRep(
        rep.dim,
        tuple(g0 * m * inv_m1 for m in rep.f),
        tuple(g1 * m * inv_0 for m in rep.g),
    )


def hom_space_dim(r1: QuiverRep, r2: QuiverRep) -> int:
    """Dimension of the space of morphisms r1 -> r2.

    A morphism is a triple of linear maps intertwining all eight arrows;
    the dimension is the nullity of the assembled exact linear system.
    """
    a1, b1, c1 = r1.dim
    a2, b2, c2 = r2.dim
    n_phi_m1 = a2 * a1
    n_phi_0 = b2 * b1
    n_phi_1 = c2 * c1
    n_unknowns = n_phi_m1 + n_phi_0 + n_phi_1

    rows: list[list[Fraction]] = []

    def blank() -> list[Fraction]:
        return [Fraction(0)] * n_unknowns

    # f2_k . phi_m1 - phi_0 . f1_k = 0   (b2 x a1 equations per arrow)
    for k in range(4):
        f1, f2 = r1.f[k], r2.f[k]
        for i in range(b2):
            for j in range(a1):
                row = blank()
                for l in range(a2):
                    row[l * a1 + j] += f2.at(i, l)
                for l in range(b1):
                    row[n_phi_m1 + i * b1 + l] -= f1.at(l, j)
                rows.append(row)
    # g2_k . phi_0 - phi_1 . g1_k = 0   (c2 x b1 equations per arrow)
    for k in range(4):
        g1m, g2m = r1.g[k], r2.g[k]
        for i in range(c2):
            for j in range(b1):
                row = blank()
                for l in range(b2):
                    row[n_phi_m1 + l * b1 + j] += g2m.at(i, l)
                for l in range(c1):
                    row[n_phi_m1 + n_phi_0 + i * c1 + l] -= g1m.at(l, j)
                rows.append(row)

    if not rows:
        return n_unknowns
    system = RationalMatrix.from_rows(rows)
    return n_unknowns - rank(system)


@dataclass(frozen=True)
class SubrepWitness:
    """Explicit bases of an invariant triple of subspaces."""

    dim: DimVector
    basis_u: RationalMatrix
    basis_v: RationalMatrix
    basis_w: RationalMatrix


def verify_subrep_witness(rep: QuiverRep, w: SubrepWitness) -> bool:
    """Exact check that the witness spans an actual subrepresentation."""
    if (w.basis_u.cols, w.basis_v.cols, w.basis_w.cols) != tuple(w.dim):
        return False
    a, b, c = rep.dim
    if w.basis_u.rows != a or w.basis_v.rows != b or w.basis_w.rows != c:
        return False
    if rank(w.basis_u) != w.dim.s_minus1 or rank(w.basis_v) != w.dim.s0:
        return False
    if rank(w.basis_w) != w.dim.s1:
        return False
    for fi in rep.f:
        if w.basis_u.cols and not columns_in_span(w.basis_v, fi * w.basis_u):
            return False
    for gi in rep.g:
        if w.basis_v.cols and not columns_in_span(w.basis_w, gi * w.basis_v):
            return False
    return True


def _image_span(rep: QuiverRep, basis_u: RationalMatrix) -> RationalMatrix:
    """span{ f_i(U) } as canonical basis columns."""
    b = rep.dim[1]
    if basis_u.cols == 0:
        return RationalMatrix(b, 0, ())
    return column_space(hstack([fi * basis_u for fi in rep.f]))


def _joint_preimage(rep: QuiverRep, basis_w: RationalMatrix) -> RationalMatrix:
    """Largest middle subspace mapped into W by every g_i.

    Membership of g_i(v) in W is encoded by the annihilator rows of W, so
    the preimage is one exact kernel computation.
    """
    b, c = rep.dim[1], rep.dim[2]
    ann = kernel_basis(basis_w.transpose()) if c else []
    if not ann:
        return column_space(RationalMatrix.identity(b))
    ann_m = RationalMatrix.from_rows([list(v) for v in ann])
    stacked = vstack([ann_m * gi for gi in rep.g])
    ker = kernel_basis(stacked)
    if not ker:
        return RationalMatrix(b, 0, ())
    return column_space(RationalMatrix.from_rows([list(v) for v in ker]).transpose())


def _extend_basis(
    inner: RationalMatrix, pool: RationalMatrix, target_dim: int
) -> RationalMatrix | None:
    """Grow `inner` to target_dim using columns of `pool`, exactly."""
    current = inner
    r = rank(current)
    for j in range(pool.cols):
        if r == target_dim:
            break
        cand = hstack([current, RationalMatrix.column_vector(pool.col(j))])
        if rank(cand) > r:
            current = cand
            r += 1
    return current if r == target_dim else None


@dataclass(frozen=True)
class SubrepSearchResult:
    status: Literal["yes", "no", "unknown"]
    witness: SubrepWitness | None = None


def _coordinate_subspaces(ambient: int, dim: int) -> list[RationalMatrix]:
    out = []
    for axes in combinations(range(ambient), dim):
        entries = tuple(
            Fraction(1 if j == axis else 0) for j in range(ambient) for axis in axes
        )
        out.append(RationalMatrix(ambient, dim, entries))
    return out


def _subspace_candidates(
    ambient: int, dim: int, rng: random.Random, samples: int
) -> list[RationalMatrix]:
    """Candidate subspaces of the given dimension: forced, coordinate, random."""
    if dim == 0:
        return [RationalMatrix(ambient, 0, ())]
    if dim == ambient:
        return [RationalMatrix.identity(ambient)]
    cands = _coordinate_subspaces(ambient, dim)
    want = len(cands) + samples
    tries = 0
    while len(cands) < want and tries < 8 * samples:
        tries += 1
        m = RationalMatrix(
            ambient, dim, tuple(random_rational(rng) for _ in range(ambient * dim))
        )
        if rank(m) == dim:
            cands.append(m)
    return cands


def subrep_exists(
    rep: QuiverRep,
    target: DimVector,
    samples: int = 64,
    seed: int = 0,
) -> SubrepSearchResult:
    """Search for a subrepresentation with the given dimension vector.

    The outer spaces U and W are forced whenever the target dimension at a
    vertex is 0 or full, in which case the answer is exact; this covers
    every charge-1 case.  Otherwise coordinate subspaces plus seeded random
    samples are tried and a miss is reported as "unknown".
    """
    a, b, c = rep.dim
    s, m, w = target
    if not (0 <= s <= a and 0 <= m <= b and 0 <= w <= c):
        raise ValueError("target must be componentwise at most the dimension vector")
    if target == DimVector(0, 0, 0) or tuple(target) == rep.dim:
        raise ValueError("target must be a proper nonzero dimension vector")

    rng = random.Random(seed)
    u_forced = s in (0, a)
    w_forced = w in (0, c)
    u_cands = _subspace_candidates(a, s, rng, samples if not u_forced else 0)
    w_cands = _subspace_candidates(c, w, rng, samples if not w_forced else 0)

    for basis_u in u_cands:
        image = _image_span(rep, basis_u)
        if image.cols > m:
            continue
        for basis_w in w_cands:
            preimage = _joint_preimage(rep, basis_w)
            if preimage.cols < m:
                continue
            if image.cols and not columns_in_span(preimage, image):
                continue
            basis_v = _extend_basis(image, preimage, m)
            if basis_v is None:
                continue
            witness = SubrepWitness(DimVector(*target), basis_u, basis_v, basis_w)
            if not verify_subrep_witness(rep, witness):
                raise AssertionError("constructed witness failed exact verification")
            return SubrepSearchResult("yes", witness)
    if u_forced and w_forced:
        return SubrepSearchResult("no")
    return SubrepSearchResult("unknown")


def charge1_subrep_dimvectors(rep: QuiverRep) -> frozenset[DimVector]:
    """Exact set of dimension vectors of proper nonzero subrepresentations
    of a representation with dimension vector (1, 4, 1).

    With both outer spaces either zero or the full line, the subspace-pair
    reduction leaves four cases, each settled by a rank computation.
    """
    if rep.dim != (1, 4, 1):
        raise WrongDimension(f"expected dimension (1, 4, 1), got {rep.dim}")
    m_stack = stacked_f(rep)
    n_stack = stacked_g(rep)
    rank_m = rank(m_stack)
    ker_dim = 4 - rank(n_stack)
    span_in_kernel = (n_stack * m_stack).is_zero()

    out: set[DimVector] = set()
    for b in range(1, ker_dim + 1):
        out.add(DimVector(0, b, 0))
    for b in range(5):
        out.add(DimVector(0, b, 1))
    for b in range(rank_m, 5):
        out.add(DimVector(1, b, 1))
    if span_in_kernel:
        for b in range(rank_m, ker_dim + 1):
            out.add(DimVector(1, b, 0))
    out.discard(DimVector(0, 0, 0))
    out.discard(DimVector(1, 4, 1))
    return frozenset(out)
