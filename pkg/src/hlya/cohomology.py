"""Cocycle, coboundary and cohomology spaces, plus membership tests.

All spaces are coordinate subspaces w.r.t. the computed cochain-space
bases, so kernels, images and quotients are plain exact linear algebra.
Level pairing follows the operators:

    H1           = ker delta1                     (inside C1)
    Z2 x Z3      = ker [delta2; d2]               (inside C2 x C3)
    B2 x B3      = im  delta1
    Z4 x Z5      = ker delta3                     (inside C4 x C5)
    B4 x B5      = im  delta2

B inside Z is forced by the composition theorem; a NotContainedError from
the quotient is therefore a loud internal failure, not a user error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra
from .coboundary import d2, delta1, delta2, delta3
from .cochain import Cochain, build_cochain_space
from .exactlin import Matrix, Subspace, image_basis, kernel_basis, quotient_dim, solve, vstack


@dataclass(frozen=True)
class LevelReport:
    cocycles: Subspace
    coboundaries: Subspace
    h_dim: int


@dataclass(frozen=True)
class CohomologyReport:
    """Dimension table and representative bases for all three levels."""

    algebra: Algebra
    h1: Subspace
    level2: LevelReport  # Z2xZ3 / B2xB3
    level3: LevelReport  # Z4xZ5 / B4xB5

    def dims(self) -> dict:
        return {
            "h1": self.h1.dim,
            "z2z3": self.level2.cocycles.dim,
            "b2b3": self.level2.coboundaries.dim,
            "h2h3": self.level2.h_dim,
            "z4z5": self.level3.cocycles.dim,
            "b4b5": self.level3.coboundaries.dim,
            "h4h5": self.level3.h_dim,
        }


@lru_cache(maxsize=None)
def h1(a: Algebra) -> Subspace:
    """First cohomology = first cocycles: kernel of delta1 in C1 coordinates.

    The level-1 pairs (f, f) carry a single copy of f, so one coordinate
    block suffices and both delta1 components must vanish.
    """
    return kernel_basis(delta1(a).matrix)


@lru_cache(maxsize=None)
def h2h3(a: Algebra) -> LevelReport:
    stacked = vstack(delta2(a).matrix, d2(a).matrix)
    z = kernel_basis(stacked)
    b = image_basis(delta1(a).matrix)
    return LevelReport(z, b, quotient_dim(z, b))


@lru_cache(maxsize=None)
def h4h5(a: Algebra) -> LevelReport:
    z = kernel_basis(delta3(a).matrix)
    b = image_basis(delta2(a).matrix)
    return LevelReport(z, b, quotient_dim(z, b))


def cohomology_report(a: Algebra) -> CohomologyReport:
    return CohomologyReport(a, h1(a), h2h3(a), h4h5(a))


# --- coordinates and membership -------------------------------------------


def pair_coords(a: Algebra, f: Cochain, g: Cochain) -> list:
    """Concatenated basis coordinates of a pair in C2 x C3.

    Raises NotACochainError when either component is not a cochain.
    """
    c2 = build_cochain_space(a, 2)
    c3 = build_cochain_space(a, 3)
    return c2.coords(f) + c3.coords(g)


def pair_from_coords(a: Algebra, coords) -> tuple[Cochain, Cochain]:
    c2 = build_cochain_space(a, 2)
    c3 = build_cochain_space(a, 3)
    return c2.from_coords(coords[: c2.dim]), c3.from_coords(coords[c2.dim :])


def is_cocycle_2(a: Algebra, f: Cochain, g: Cochain) -> bool:
    """Does (f, g) lie in Z2 x Z3, i.e. is it killed by both delta2 and d2?"""
    coords = pair_coords(a, f, g)
    return not any(delta2(a).matrix.apply(coords)) and not any(d2(a).matrix.apply(coords))


def is_coboundary_2(a: Algebra, pair: tuple[Cochain, Cochain]) -> Cochain | None:
    """A 1-cochain witness h with delta1(h) = pair, or None.

    None is a normal return: it means the pair's class in H2 x H3 is
    nontrivial (or the pair is no cocycle at all).
    """
    coords = pair_coords(a, *pair)
    sol = solve(delta1(a).matrix, coords)
    if sol is None:
        return None
    return build_cochain_space(a, 1).from_coords(sol)


def cochain_to_matrix(a: Algebra, h: Cochain) -> Matrix:
    """View a 1-cochain as the d x d matrix sending e_j to h(e_j)."""
    cols = [list(h.value((j,))) for j in range(a.dim)]
    return Matrix.from_columns(cols, rows=a.dim)


def matrix_to_cochain(a: Algebra, m: Matrix) -> Cochain:
    table = {(j,): tuple(m.column(j)) for j in range(a.dim)}
    return Cochain(1, a.dim, table)
