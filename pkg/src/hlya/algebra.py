"""Structure-constant representation of a twisted binary/ternary algebra.

An algebra is a quadruple (L, [.,.], {.,.,.}, alpha): a d-dimensional
rational vector space with an antisymmetric binary bracket, a ternary
bracket antisymmetric in its first two slots, and a twisting endomorphism
alpha.  Eight identities (checked by :func:`check_axioms`) make the
quadruple a Hom-Lie-Yamaguti algebra; with alpha = id it is an ordinary
Lie-Yamaguti algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .errors import AxiomError, DimMismatchError, NotHomLieError, NotMorphismError
from .exactlin import ONE, ZERO, Matrix, rat

Vec = tuple[Fraction, ...]
SVec = dict[int, Fraction]

# Axioms, by the numbering used throughout this package:
#   1: alpha([xy]) = [alpha(x) alpha(y)]
#   2: alpha({xyz}) = {alpha(x) alpha(y) alpha(z)}
#   3: [xx] = 0
#   4: {xxy} = 0
#   5: cyclic_{x,y,z} ([[xy] alpha(z)] + {xyz}) = 0
#   6: cyclic_{x,y,z} {[xy] alpha(z) alpha(u)} = 0
#   7: {alpha(x) alpha(y) [uv]} = [{xyu} alpha^2(v)] + [alpha^2(u) {xyv}]
#   8: {a2(u) a2(v) {xyz}} = {{uvx} a2(y) a2(z)} + {a2(x) {uvy} a2(z)}
#                            + {a2(x) a2(y) {uvz}}
AXIOM_IDS = (1, 2, 3, 4, 5, 6, 7, 8)


def _vec(values: Sequence) -> Vec:
    return tuple(rat(v) for v in values)


def zero_vec(dim: int) -> Vec:
    return (ZERO,) * dim


@dataclass(frozen=True)
class Algebra:
    """Immutable structure-constant data.  Use the constructors below."""

    dim: int
    binary: tuple  # binary[i][j] = coordinates of [e_i, e_j]
    ternary: tuple  # ternary[i][j][k] = coordinates of {e_i e_j e_k}
    alpha: tuple  # row-major matrix; alpha(e_j) = sum_i alpha[i][j] e_i
    name: str = field(default="", compare=False)

    def alpha_matrix(self) -> Matrix:
        return Matrix(self.alpha)

    def __hash__(self):
        # cached: the structure tensors are deeply nested Fraction tuples and
        # hashing them dominates hot loops that hit lru_cache lookups
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.dim, self.binary, self.ternary, self.alpha))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"Algebra({label}, dim={self.dim})"


def make_algebra(dim, binary, ternary, alpha, name="") -> Algebra:
    """Build an Algebra from full tensors, enforcing the antisymmetry shape.

    Rejects tensors that fail [xx]=0 / {xxy}=0 antisymmetry outright rather
    than silently symmetrizing: those identities are definitional.
    """
    b = tuple(tuple(_vec(binary[i][j]) for j in range(dim)) for i in range(dim))
    t = tuple(
        tuple(tuple(_vec(ternary[i][j][k]) for k in range(dim)) for j in range(dim))
        for i in range(dim)
    )
    a = tuple(_vec(alpha[i]) for i in range(dim))
    if len(a) != dim or any(len(row) != dim for row in a):
        raise DimMismatchError("alpha must be a dim x dim matrix")
    zero = zero_vec(dim)
    for i in range(dim):
        if b[i][i] != zero:
            raise AxiomError(f"[e{i + 1}, e{i + 1}] must vanish")
        for j in range(i + 1, dim):
            if b[i][j] != tuple(-x for x in b[j][i]):
                raise AxiomError(f"binary tensor not antisymmetric at ({i + 1},{j + 1})")
        for k in range(dim):
            if t[i][i][k] != zero:
                raise AxiomError(f"{{e{i + 1} e{i + 1} e{k + 1}}} must vanish")
            for j in range(i + 1, dim):
                if t[i][j][k] != tuple(-x for x in t[j][i][k]):
                    raise AxiomError(
                        f"ternary tensor not antisymmetric at ({i + 1},{j + 1},{k + 1})"
                    )
    return Algebra(dim, b, t, a, name)


def algebra_from_sparse(dim, binary_entries, ternary_entries, alpha, name="") -> Algebra:
    """Build from sparse 0-based entries {(i, j): vec} with i < j (binary)
    and {(i, j, k): vec} with i < j (ternary); omitted entries are zero."""
    zero = [0] * dim
    b = [[list(zero) for _ in range(dim)] for _ in range(dim)]
    t = [[[list(zero) for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]
    for (i, j), vec in binary_entries.items():
        if i >= j:
            raise AxiomError("binary entries must have i < j")
        b[i][j] = list(vec)
        b[j][i] = [-rat(x) for x in vec]
    for (i, j, k), vec in ternary_entries.items():
        if i >= j:
            raise AxiomError("ternary entries must have i < j")
        t[i][j][k] = list(vec)
        t[j][i][k] = [-rat(x) for x in vec]
    return make_algebra(dim, b, t, alpha, name)


# --- sparse evaluation helpers -------------------------------------------


def to_svec(vec: Sequence) -> SVec:
    return {i: rat(x) for i, x in enumerate(vec) if x}


def to_dense(sv: SVec, dim: int) -> Vec:
    return tuple(sv.get(i, ZERO) for i in range(dim))


def svec_add(acc: SVec, sv: SVec, coef: Fraction = ONE) -> None:
    for i, x in sv.items():
        v = acc.get(i, ZERO) + coef * x
        if v:
            acc[i] = v
        else:
            acc.pop(i, None)


@lru_cache(maxsize=None)
def _binary_table(a: Algebra) -> dict:
    table = {}
    for i in range(a.dim):
        for j in range(a.dim):
            sv = to_svec(a.binary[i][j])
            if sv:
                table[(i, j)] = sv
    return table


@lru_cache(maxsize=None)
def _ternary_table(a: Algebra) -> dict:
    table = {}
    for idx in itertools.product(range(a.dim), repeat=3):
        i, j, k = idx
        sv = to_svec(a.ternary[i][j][k])
        if sv:
            table[idx] = sv
    return table


@lru_cache(maxsize=None)
def alpha_power_columns(a: Algebra, k: int) -> tuple:
    """Columns of alpha^k as sparse vectors; alpha^0 = identity."""
    if k == 0:
        return tuple({j: ONE} for j in range(a.dim))
    prev = alpha_power_columns(a, k - 1)
    cols = []
    for j in range(a.dim):
        acc: SVec = {}
        for i, c in prev[j].items():
            # alpha(e_i) = column i of alpha
            svec_add(acc, {r: a.alpha[r][i] for r in range(a.dim) if a.alpha[r][i]}, c)
        cols.append(acc)
    return tuple(cols)


def apply_alpha(a: Algebra, sv: SVec, k: int = 1) -> SVec:
    if k == 0:
        return dict(sv)
    cols = alpha_power_columns(a, k)
    acc: SVec = {}
    for i, c in sv.items():
        svec_add(acc, cols[i], c)
    return acc


def binary_sv(a: Algebra, x: SVec, y: SVec) -> SVec:
    table = _binary_table(a)
    acc: SVec = {}
    for i, cx in x.items():
        for j, cy in y.items():
            sv = table.get((i, j))
            if sv:
                svec_add(acc, sv, cx * cy)
    return acc


def ternary_sv(a: Algebra, x: SVec, y: SVec, z: SVec) -> SVec:
    table = _ternary_table(a)
    acc: SVec = {}
    for i, cx in x.items():
        for j, cy in y.items():
            for k, cz in z.items():
                sv = table.get((i, j, k))
                if sv:
                    svec_add(acc, sv, cx * cy * cz)
    return acc


def basis_sv(i: int) -> SVec:
    return {i: ONE}


# --- public evaluation ----------------------------------------------------


def _check_vec(a: Algebra, v: Sequence) -> SVec:
    if len(v) != a.dim:
        raise DimMismatchError(f"vector of length {len(v)}, expected {a.dim}")
    return to_svec(v)


def eval_binary(a: Algebra, x: Sequence, y: Sequence) -> Vec:
    """[x, y] by bilinear contraction against the binary tensor."""
    return to_dense(binary_sv(a, _check_vec(a, x), _check_vec(a, y)), a.dim)


def eval_ternary(a: Algebra, x: Sequence, y: Sequence, z: Sequence) -> Vec:
    """{x, y, z} by trilinear contraction against the ternary tensor."""
    return to_dense(
        ternary_sv(a, _check_vec(a, x), _check_vec(a, y), _check_vec(a, z)), a.dim
    )


# --- axiom checking -------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    """Pass flags per axiom id plus the first counterexample tuple (1-based)."""

    passed: dict
    counterexamples: dict

    @property
    def all_passed(self) -> bool:
        return all(self.passed.values())

    def failing(self) -> list[int]:
        return [k for k in AXIOM_IDS if not self.passed[k]]


def _cyc3(fn: Callable, x, y, z) -> SVec:
    acc: SVec = {}
    for t in ((x, y, z), (y, z, x), (z, x, y)):
        svec_add(acc, fn(*t))
    return acc


def check_axioms(a: Algebra) -> AxiomReport:
    """Evaluate the eight defining identities on every basis tuple.

    Multilinearity makes basis checks sufficient.  Failures are recorded,
    never raised.
    """
    d = a.dim
    passed = {k: True for k in AXIOM_IDS}
    counter: dict = {}
    e = [basis_sv(i) for i in range(d)]

    def al(sv, k=1):
        return apply_alpha(a, sv, k)

    def br(x, y):
        return binary_sv(a, x, y)

    def tr(x, y, z):
        return ternary_sv(a, x, y, z)

    def record(axiom, idx, residual):
        if residual and passed[axiom]:
            passed[axiom] = False
            counter[axiom] = tuple(i + 1 for i in idx)

    for i, j in itertools.product(range(d), repeat=2):
        record(1, (i, j), _sub(al(br(e[i], e[j])), br(al(e[i]), al(e[j]))))
    for idx in itertools.product(range(d), repeat=3):
        i, j, k = idx
        record(2, idx, _sub(al(tr(e[i], e[j], e[k])), tr(al(e[i]), al(e[j]), al(e[k]))))
    for i in range(d):
        record(3, (i, i), br(e[i], e[i]))
        for j in range(d):
            record(3, (i, j), _sub(br(e[i], e[j]), _neg(br(e[j], e[i]))))
            for k in range(d):
                record(4, (i, i, j), tr(e[i], e[i], e[j]))
                record(4, (i, j, k), _sub(tr(e[i], e[j], e[k]), _neg(tr(e[j], e[i], e[k]))))
    for idx in itertools.product(range(d), repeat=3):
        i, j, k = idx
        res = _cyc3(lambda x, y, z: _addsv(br(br(x, y), al(z)), tr(x, y, z)), e[i], e[j], e[k])
        record(5, idx, res)
    for idx in itertools.product(range(d), repeat=4):
        i, j, k, u = idx
        res = _cyc3(lambda x, y, z: tr(br(x, y), al(z), al(e[u])), e[i], e[j], e[k])
        record(6, idx, res)
    for idx in itertools.product(range(d), repeat=4):
        x, y, u, v = (e[i] for i in idx)
        lhs = tr(al(x), al(y), br(u, v))
        rhs = _addsv(br(tr(x, y, u), al(v, 2)), br(al(u, 2), tr(x, y, v)))
        record(7, idx, _sub(lhs, rhs))
    for idx in itertools.product(range(d), repeat=5):
        u, v, x, y, z = (e[i] for i in idx)
        lhs = tr(al(u, 2), al(v, 2), tr(x, y, z))
        rhs: SVec = {}
        svec_add(rhs, tr(tr(u, v, x), al(y, 2), al(z, 2)))
        svec_add(rhs, tr(al(x, 2), tr(u, v, y), al(z, 2)))
        svec_add(rhs, tr(al(x, 2), al(y, 2), tr(u, v, z)))
        record(8, idx, _sub(lhs, rhs))
    return AxiomReport(passed, counter)


def _neg(sv: SVec) -> SVec:
    return {i: -x for i, x in sv.items()}


def _sub(x: SVec, y: SVec) -> SVec:
    acc = dict(x)
    svec_add(acc, y, -ONE)
    return acc


def _addsv(x: SVec, y: SVec) -> SVec:
    acc = dict(x)
    svec_add(acc, y)
    return acc


# --- constructors ---------------------------------------------------------


def _zero_ternary(dim: int):
    return [[[[0] * dim for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]


def from_lie_algebra(bracket, alpha, name="") -> Algebra:
    """A twisted Lie algebra viewed with zero ternary bracket.

    Raises NotHomLieError when the twisted Jacobi identity (axiom 5 with a
    vanishing ternary part) fails, AxiomError for any other failure.
    """
    dim = len(bracket)
    a = make_algebra(dim, bracket, _zero_ternary(dim), alpha, name)
    report = check_axioms(a)
    if report.all_passed:
        return a
    if not report.passed[5]:
        raise NotHomLieError(
            f"twisted Jacobi identity fails at basis tuple {report.counterexamples[5]}"
        )
    raise AxiomError(f"axioms {report.failing()} fail")


def from_lya_standard(bracket, name="") -> Algebra:
    """Untwisted algebra with {x y z} = [[x, y], z] derived from a Lie bracket."""
    dim = len(bracket)
    lie = make_algebra(dim, bracket, _zero_ternary(dim), [[int(i == j) for j in range(dim)] for i in range(dim)])
    t = [
        [
            [
                list(
                    to_dense(
                        binary_sv(lie, binary_sv(lie, basis_sv(i), basis_sv(j)), basis_sv(k)),
                        dim,
                    )
                )
                for k in range(dim)
            ]
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    a = make_algebra(dim, bracket, t, lie.alpha, name)
    report = check_axioms(a)
    if not report.all_passed:
        raise AxiomError(
            f"input bracket is not Lie: axioms {report.failing()} fail"
        )
    return a


def is_endomorphism(a: Algebra, beta: Matrix) -> bool:
    """Does beta preserve both the binary and the ternary bracket?"""
    cols = [to_svec(beta.column(j)) for j in range(a.dim)]

    def bv(sv: SVec) -> SVec:
        acc: SVec = {}
        for i, c in sv.items():
            svec_add(acc, cols[i], c)
        return acc

    e = [basis_sv(i) for i in range(a.dim)]
    for i, j in itertools.product(range(a.dim), repeat=2):
        if _sub(bv(binary_sv(a, e[i], e[j])), binary_sv(a, bv(e[i]), bv(e[j]))):
            return False
    for idx in itertools.product(range(a.dim), repeat=3):
        i, j, k = idx
        if _sub(
            bv(ternary_sv(a, e[i], e[j], e[k])),
            ternary_sv(a, bv(e[i]), bv(e[j]), bv(e[k])),
        ):
            return False
    return True


def yau_twist(a: Algebra, morphism: Matrix, name="") -> Algebra:
    """Candidate twist [x,y]' = beta[x,y], {xyz}' = beta^2{xyz}, alpha' = beta.

    The base must be untwisted (alpha = id) and beta an endomorphism of it.
    No correctness claim beyond the axiom checker: AxiomError is a normal
    outcome for morphisms whose twist fails the identities.
    """
    d = a.dim
    if a.alpha_matrix() != Matrix.identity(d):
        raise NotMorphismError("yau_twist requires an untwisted base (alpha = id)")
    if morphism.rows != d or morphism.cols != d:
        raise DimMismatchError("morphism must be dim x dim")
    if not is_endomorphism(a, morphism):
        raise NotMorphismError("the given map does not preserve the brackets")
    beta2 = morphism.matmul(morphism)
    b = [
        [list(morphism.apply(a.binary[i][j])) for j in range(d)]
        for i in range(d)
    ]
    t = [
        [
            [list(beta2.apply(a.ternary[i][j][k])) for k in range(d)]
            for j in range(d)
        ]
        for i in range(d)
    ]
    twisted = make_algebra(d, b, t, morphism.data, name or (a.name + "_twisted"))
    report = check_axioms(twisted)
    if not report.all_passed:
        raise AxiomError(f"twisted structure fails axioms {report.failing()}")
    return twisted
