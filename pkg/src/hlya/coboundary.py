"""The four coboundary operators, materialized as exact matrices.

Each operator acts between (pairs of) cochain spaces and is assembled
column by column: every basis cochain of the domain is pushed through the
defining formula, tabulated on the codomain's representative tuples, and
expressed in the codomain basis (with the equivariance residual checked
during coordinate extraction).  :func:`verify_well_definedness` performs
the slower full-tabulation audit of the alternating-pair conditions.

Levels and their (domain -> codomain) pairs:

    delta1 : C1        -> C2 x C3
    delta2 : C2 x C3   -> C4 x C5
    d2     : C2 x C3   -> C3 x W4   (W4: alternating in the leading pair only)
    delta3 : C4 x C5   -> C6 x C7

The first component of delta2 and both components of d2 and delta3 couple
the two domain blocks, so columns are assembled from (f, 0) and (0, g)
separately and rely on linearity in the pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    Algebra,
    SVec,
    _binary_table,
    _ternary_table,
    alpha_power_columns,
    svec_add,
    to_dense,
)
from .cochain import Cochain, CochainSpace, build_cochain_space
from .exactlin import Matrix, ONE

_MINUS = -ONE


@dataclass(frozen=True)
class CoboundaryMap:
    """Matrix of one operator w.r.t. the computed subspace bases."""

    level: str
    domain: tuple  # CochainSpace components
    codomain: tuple
    matrix: Matrix

    @property
    def domain_dim(self) -> int:
        return sum(s.dim for s in self.domain)

    @property
    def codomain_dim(self) -> int:
        return sum(s.dim for s in self.codomain)

    def split_domain_coords(self, coords):
        out = []
        at = 0
        for s in self.domain:
            out.append(list(coords[at : at + s.dim]))
            at += s.dim
        return out


def _tabulate(a: Algebra, arity: int, fn) -> dict:
    """fn maps an index tuple to a sparse value; returns a dense-key table."""
    d = a.dim
    table = {}
    for idx in itertools.product(range(d), repeat=arity):
        sv = fn(idx)
        if sv:
            table[idx] = to_dense(sv, d)
    return table


def _reduced_tabulation(space, fn) -> list:
    """Evaluate fn only on the representative tuples of the target space.

    The alternating conditions make the remaining tuples redundant for
    coordinates; :func:`verify_well_definedness` is the place where the full
    tabulation is checked against them.
    """
    d = space.algebra.dim
    reduced = [ONE * 0] * space.reduced_dim
    for pos, idx in enumerate(space.rep_tuples):
        sv = fn(idx)
        for k, x in sv.items():
            reduced[pos * d + k] = x
    return reduced


def _acc(*signed_terms) -> SVec:
    acc: SVec = {}
    for sign, sv in signed_terms:
        svec_add(acc, sv, sign)
    return acc


def _cyc3_idx(fn, i, j, k) -> SVec:
    acc: SVec = {}
    for t in ((i, j, k), (j, k, i), (k, i, j)):
        svec_add(acc, fn(*t))
    return acc


class _Ops:
    """Per-algebra shortcuts: alpha-power basis columns and bracket closures."""

    def __init__(self, a: Algebra):
        self.a = a
        self.e = alpha_power_columns(a, 0)
        self.A = {k: alpha_power_columns(a, k) for k in range(5)}
        # bracket tables held directly: keeps cache lookups (which hash the
        # whole algebra) out of the per-tuple inner loops
        self._btab = _binary_table(a)
        self._ttab = _ternary_table(a)

    def al(self, k: int, sv: SVec) -> SVec:
        if k == 0:
            return sv
        acc: SVec = {}
        cols = self.A[k]
        for i, c in sv.items():
            svec_add(acc, cols[i], c)
        return acc

    def br(self, x: SVec, y: SVec) -> SVec:
        table = self._btab
        acc: SVec = {}
        for i, cx in x.items():
            for j, cy in y.items():
                sv = table.get((i, j))
                if sv:
                    svec_add(acc, sv, cx * cy)
        return acc

    def tr(self, x: SVec, y: SVec, z: SVec) -> SVec:
        table = self._ttab
        acc: SVec = {}
        for i, cx in x.items():
            cxi = cx
            for j, cy in y.items():
                cxy = cxi * cy
                for k, cz in z.items():
                    sv = table.get((i, j, k))
                    if sv:
                        svec_add(acc, sv, cxy * cz)
        return acc


# --- operator formulas, tabulated on basis tuples -------------------------


def _delta1_tables(ops: _Ops, h: Cochain):
    a, e = ops.a, ops.e
    br, tr = ops.br, ops.tr

    def hv(sv: SVec) -> SVec:
        return h.eval_sv([sv])

    def comp_I(idx):
        x, y = e[idx[0]], e[idx[1]]
        return _acc((ONE, br(x, hv(y))), (ONE, br(hv(x), y)), (_MINUS, hv(br(x, y))))

    def comp_II(idx):
        x, y, z = (e[i] for i in idx)
        return _acc(
            (ONE, tr(hv(x), y, z)),
            (ONE, tr(x, hv(y), z)),
            (ONE, tr(x, y, hv(z))),
            (_MINUS, hv(tr(x, y, z))),
        )

    return [comp_I, comp_II]


def _delta2_tables(ops: _Ops, f: Cochain, g: Cochain):
    a, e = ops.a, ops.e
    al, br, tr = ops.al, ops.br, ops.tr
    fv = lambda x, y: f.eval_sv([x, y])
    gv = lambda x, y, z: g.eval_sv([x, y, z])

    def comp_I(idx):
        x, y, z, u = (e[i] for i in idx)
        return _acc(
            (ONE, tr(al(1, x), al(1, y), fv(z, u))),
            (_MINUS, fv(tr(x, y, z), al(2, u))),
            (_MINUS, fv(al(2, z), tr(x, y, u))),
            (ONE, gv(al(1, x), al(1, y), br(z, u))),
            (_MINUS, br(al(2, z), gv(x, y, u))),
            (_MINUS, br(gv(x, y, z), al(2, u))),
        )

    def comp_II(idx):
        x, y, u, v, w = (e[i] for i in idx)
        return _acc(
            (ONE, tr(al(2, x), al(2, y), gv(u, v, w))),
            (_MINUS, tr(gv(x, y, u), al(2, v), al(2, w))),
            (_MINUS, tr(al(2, u), gv(x, y, v), al(2, w))),
            (_MINUS, tr(al(2, u), al(2, v), gv(x, y, w))),
            (ONE, gv(al(2, x), al(2, y), tr(u, v, w))),
            (_MINUS, gv(tr(x, y, u), al(2, v), al(2, w))),
            (_MINUS, gv(al(2, u), tr(x, y, v), al(2, w))),
            (_MINUS, gv(al(2, u), al(2, v), tr(x, y, w))),
        )

    return [comp_I, comp_II]


def _d2_tables(ops: _Ops, f: Cochain, g: Cochain):
    a, e = ops.a, ops.e
    al, br, tr = ops.al, ops.br, ops.tr
    fv = lambda x, y: f.eval_sv([x, y])
    gv = lambda x, y, z: g.eval_sv([x, y, z])

    def comp_I(idx):
        def term(i, j, k):
            x, y, z = e[i], e[j], e[k]
            return _acc(
                (ONE, br(fv(x, y), al(1, z))),
                (ONE, fv(br(x, y), al(1, z))),
                (ONE, gv(x, y, z)),
            )

        return _cyc3_idx(term, *idx)

    def comp_II(idx):
        u = e[idx[3]]

        def term(i, j, k):
            x, y, z = e[i], e[j], e[k]
            return _acc(
                (ONE, tr(fv(x, y), al(1, z), al(1, u))),
                (ONE, gv(br(x, y), al(1, z), al(1, u))),
            )

        return _cyc3_idx(term, *idx[:3])

    return [comp_I, comp_II]


def _hat_args(base: list, k: int, i: int, replacement: SVec) -> list:
    """Argument-list surgery for the hat sums.

    Drops slots 2k-1 and 2k (1-based) from ``base`` and substitutes
    ``replacement`` at 1-based slot ``i`` of the original numbering.
    """
    drop = {2 * k - 2, 2 * k - 1}
    return [
        replacement if m == i - 1 else base[m]
        for m in range(len(base))
        if m not in drop
    ]


def _double_sum(arity: int, k_range, fn, order: str = "ki") -> SVec:
    """sum_k sum_{i=2k+1}^{arity} (-1)^k fn(k, i), in either nesting order."""
    acc: SVec = {}
    pairs = [(k, i) for k in k_range for i in range(2 * k + 1, arity + 1)]
    if order == "ik":
        pairs.sort(key=lambda t: (t[1], t[0]))
    for k, i in pairs:
        svec_add(acc, fn(k, i), ONE if k % 2 == 0 else _MINUS)
    return acc


def _delta3_tables(ops: _Ops, f: Cochain, g: Cochain, sum_order: str = "ki"):
    a, e = ops.a, ops.e
    al, br, tr = ops.al, ops.br, ops.tr
    fv = lambda args: f.eval_sv(args)
    gv = lambda args: g.eval_sv(args)

    def comp_I(idx):
        x = [e[i] for i in idx]
        a2 = [al(2, v) for v in x]
        a3 = [al(3, v) for v in x]

        def hat_term(k, i):
            triple = tr(x[2 * k - 2], x[2 * k - 1], x[i - 1])
            return fv(_hat_args(a2, k, i, triple))

        return _acc(
            (ONE, tr(a3[0], a3[1], fv([x[2], x[3], x[4], x[5]]))),
            (_MINUS, tr(a3[2], a3[3], fv([x[0], x[1], x[4], x[5]]))),
            (ONE, _double_sum(6, (1, 2), hat_term, sum_order)),
            (_MINUS, gv([al(1, x[0]), al(1, x[1]), al(1, x[2]), al(1, x[3]), br(x[4], x[5])])),
            (ONE, br(al(4, x[4]), gv([x[0], x[1], x[2], x[3], x[5]]))),
            (ONE, br(gv([x[0], x[1], x[2], x[3], x[4]]), al(4, x[5]))),
        )

    def comp_II(idx):
        x = [e[i] for i in idx]
        a2 = [al(2, v) for v in x]
        a4 = [al(4, v) for v in x]

        def pair_term(k):
            rest = [x[m] for m in range(7) if m not in (2 * k - 2, 2 * k - 1)]
            return tr(a4[2 * k - 2], a4[2 * k - 1], gv(rest))

        def hat_term(k, i):
            triple = tr(x[2 * k - 2], x[2 * k - 1], x[i - 1])
            return gv(_hat_args(a2, k, i, triple))

        acc = _acc(
            (ONE, pair_term(1)),
            (_MINUS, pair_term(2)),
            (ONE, pair_term(3)),
            (ONE, _double_sum(7, (1, 2, 3), hat_term, sum_order)),
            (ONE, tr(gv([x[0], x[1], x[2], x[3], x[4]]), a4[5], a4[6])),
            (_MINUS, tr(gv([x[0], x[1], x[2], x[3], x[5]]), a4[4], a4[6])),
        )
        return acc

    return [comp_I, comp_II]


# --- assembly -------------------------------------------------------------


def _assemble(level, a, domain, codomain, fns_for) -> CoboundaryMap:
    columns = []
    for comp, space in enumerate(domain):
        for basis_cochain in space.basis_cochains:
            col = []
            for target, fn in zip(codomain, fns_for(comp, basis_cochain)):
                reduced = _reduced_tabulation(target, fn)
                col.extend(target.coords_from_reduced(reduced))
            columns.append(col)
    rows = sum(s.dim for s in codomain)
    if columns and rows:
        matrix = Matrix.from_columns(columns, rows=rows)
    else:
        matrix = Matrix.zeros(rows, len(columns))
    return CoboundaryMap(level, tuple(domain), tuple(codomain), matrix)


def _spaces(a: Algebra, *arities) -> list[CochainSpace]:
    return [build_cochain_space(a, n) for n in arities]


@lru_cache(maxsize=None)
def delta1(a: Algebra) -> CoboundaryMap:
    """f in C1 to (the pair of) its binary and ternary Leibniz defects."""
    ops = _Ops(a)
    (c1,) = _spaces(a, 1)
    codomain = _spaces(a, 2, 3)
    return _assemble("delta1", a, [c1], codomain, lambda comp, h: _delta1_tables(ops, h))


def _paired_tables(make_tables, f_zero: Cochain, g_zero: Cochain):
    def tables_for(comp, basis_cochain):
        if comp == 0:
            return make_tables(basis_cochain, g_zero)
        return make_tables(f_zero, basis_cochain)

    return tables_for


@lru_cache(maxsize=None)
def delta2(a: Algebra) -> CoboundaryMap:
    ops = _Ops(a)
    domain = _spaces(a, 2, 3)
    codomain = _spaces(a, 4, 5)
    f0, g0 = Cochain.zero(2, a.dim), Cochain.zero(3, a.dim)
    return _assemble(
        "delta2", a, domain, codomain,
        _paired_tables(lambda f, g: _delta2_tables(ops, f, g), f0, g0),
    )


@lru_cache(maxsize=None)
def d2(a: Algebra) -> CoboundaryMap:
    """The auxiliary degree-2 operator built from the two cyclic identities.

    Its first component lands in the full 3-cochain space (the cyclic sum
    cancels on the leading diagonal and equivariance is inherited).  The
    second component is alternating in its leading pair and equivariant but
    genuinely not alternating in the trailing pair -- e.g. on sl2 with the
    leading-pair indicator 2-cochain the values at (e1,e2,e3,e1) and
    (e1,e2,e1,e3) are -4*e3 and 0 -- so its codomain is the partially
    alternating space (one pair condition) rather than the full 4-cochain
    space.  Kernel computations are unaffected: vanishing of the tabulated
    formula is the same condition in either coordinate system.
    """
    ops = _Ops(a)
    domain = _spaces(a, 2, 3)
    codomain = [build_cochain_space(a, 3), build_cochain_space(a, 4, pairs=1)]
    f0, g0 = Cochain.zero(2, a.dim), Cochain.zero(3, a.dim)
    return _assemble(
        "d2", a, domain, codomain,
        _paired_tables(lambda f, g: _d2_tables(ops, f, g), f0, g0),
    )


@lru_cache(maxsize=None)
def delta3(a: Algebra) -> CoboundaryMap:
    ops = _Ops(a)
    domain = _spaces(a, 4, 5)
    codomain = _spaces(a, 6, 7)
    f0, g0 = Cochain.zero(4, a.dim), Cochain.zero(5, a.dim)
    return _assemble(
        "delta3", a, domain, codomain,
        _paired_tables(lambda f, g: _delta3_tables(ops, f, g), f0, g0),
    )


OPERATORS = {"1": delta1, "2": delta2, "d2": d2, "3": delta3}


def operator_by_level(a: Algebra, level: str) -> CoboundaryMap:
    if level not in OPERATORS:
        raise KeyError(f"unknown operator level {level!r}; choose from {sorted(OPERATORS)}")
    return OPERATORS[level](a)


# --- direct formula application (used by tests and the deformation code) --


def apply_delta2_pair(a: Algebra, f: Cochain, g: Cochain) -> tuple[Cochain, Cochain]:
    """(delta2_I(f,g), delta2_II(g)) as cochains, straight from the formulas."""
    fn_I, fn_II = _delta2_tables(_Ops(a), f, g)
    c4, c5 = _spaces(a, 4, 5)
    return (
        c4.cochain_from_table(_tabulate(a, 4, fn_I))[0],
        c5.cochain_from_table(_tabulate(a, 5, fn_II))[0],
    )


def apply_d2_pair(a: Algebra, f: Cochain, g: Cochain) -> tuple[Cochain, Cochain]:
    fn_I, fn_II = _d2_tables(_Ops(a), f, g)
    c3 = build_cochain_space(a, 3)
    w4 = build_cochain_space(a, 4, pairs=1)
    return (
        c3.cochain_from_table(_tabulate(a, 3, fn_I))[0],
        w4.cochain_from_table(_tabulate(a, 4, fn_II))[0],
    )


def apply_delta1_single(a: Algebra, h: Cochain) -> tuple[Cochain, Cochain]:
    fn_I, fn_II = _delta1_tables(_Ops(a), h)
    c2, c3 = _spaces(a, 2, 3)
    return (
        c2.cochain_from_table(_tabulate(a, 2, fn_I))[0],
        c3.cochain_from_table(_tabulate(a, 3, fn_II))[0],
    )


def apply_delta3_pair(a: Algebra, f: Cochain, g: Cochain, sum_order: str = "ki") -> tuple[Cochain, Cochain]:
    fn_I, fn_II = _delta3_tables(_Ops(a), f, g, sum_order)
    c6, c7 = _spaces(a, 6, 7)
    return (
        c6.cochain_from_table(_tabulate(a, 6, fn_I))[0],
        c7.cochain_from_table(_tabulate(a, 7, fn_II))[0],
    )


def verify_well_definedness(a: Algebra, level: str) -> int:
    """Full-tabulation audit of one operator on every domain basis cochain.

    Unlike the fast representative-tuple assembly, this evaluates the
    defining formula on *all* basis tuples and checks the image against the
    codomain cochain conditions (alternating pairs + equivariance), raising
    NotACochainError on any violation.  Returns the number of basis
    cochains audited.
    """
    op = operator_by_level(a, level)
    appliers = {
        "1": lambda h: apply_delta1_single(a, h),
        "2": lambda f, g: apply_delta2_pair(a, f, g),
        "d2": lambda f, g: apply_d2_pair(a, f, g),
        "3": lambda f, g: apply_delta3_pair(a, f, g),
    }
    audited = 0
    if level == "1":
        for h in op.domain[0].basis_cochains:
            appliers[level](h)
            audited += 1
        return audited
    zeros = [Cochain.zero(s.arity, a.dim) for s in op.domain]
    for comp, space in enumerate(op.domain):
        for basis_cochain in space.basis_cochains:
            pair = list(zeros)
            pair[comp] = basis_cochain
            appliers[level](*pair)
            audited += 1
    return audited
