r"""
The normalized fundamental-solution coefficients P^k and their lifts.

Row zero of each coefficient matrix is a polynomial in one symbol: writing
Lam for the rotated series zeta^j L, the column recursion

    n D p_k = - sum_{l=2..n} Lam^{1-l} Lop_l (p_{k+1-l}),      D Lam^r = r Lam^r Y,

produces one universal polynomial p_k per order (a nonnegative power series
in Lam, which certifies membership in C[L]).  The differential operators
Lop_l are assembled from a two-index table of polynomials H_{m,l} in
X = Lam^n together with Stirling numbers; their k = 1, 2 instances are
pinned against closed forms.

Every integration step leaves one free constant.  Three policies are
implemented: ``zero`` (all constants zero), ``symplectic`` (each constant is
solved, order by order, from the quadratic unitarity condition on the
solution matrix, and left at zero where that condition is vacuous), and
``custom`` (caller-provided).

The remaining rows are then built twice:

* as exact truncated series, column by column, through the modified
  flatness recursion plus one honest quadrature per order (this is the
  oracle route; it never touches the polynomial ring);
* as elements of the free ring of :mod:`orbigw.ring`, by the same
  descending recursion with the formal derivation (this is the lift).

``verify_lift`` certifies the second construction against the first,
coefficient by coefficient, and ``verify_partial_lemmas`` checks the
formal partial-derivative identities that drive the anomaly equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .cyclotomic import Cyclotomic
from .genus0 import GenusZeroData
from .report import Report
from .ring import RingContext, RingElement, fit_laurent_in_L
from .series import Series
from .stirling import stirling_first

Poly = dict[int, Fraction]  # exponent -> coefficient, one symbol


# -- small exact polynomial helpers -------------------------------------------


def p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def p_scale(a: Poly, c: Fraction) -> Poly:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def p_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = out.get(e, Fraction(0)) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def p_shift(a: Poly, k: int) -> Poly:
    return {e + k: c for e, c in a.items()}


def p_xdx(a: Poly) -> Poly:
    return {e: c * e for e, c in a.items() if e}


def p_subst_power(a: Poly, n: int) -> Poly:
    return {e * n: c for e, c in a.items()}


def p_div_exact(a: Poly, b: Poly) -> Poly:
    """Exact polynomial division (raises when the division leaves a remainder)."""
    if not a:
        return {}
    rem = dict(a)
    out: Poly = {}
    bmin = min(b)
    blead = b[bmin]
    while rem:
        e = min(rem)
        q = rem[e] / blead
        out[e - bmin] = q
        for be, bc in b.items():
            t = e - bmin + be
            s = rem.get(t, Fraction(0)) - q * bc
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
        if rem and min(rem) < e:
            raise ValueError("inexact polynomial division")
    return out


def p_eval_series(a: Poly, base: Series, cache: dict[int, Series]) -> Series:
    total = Series.zero()
    for e, c in a.items():
        if e not in cache:
            cache[e] = base**e
        total = total + cache[e] * c
    return total


# -- operator tables -----------------------------------------------------------


def build_H_table(n: int, m_max: int) -> dict[tuple[int, int], Poly]:
    """
    Polynomials H_{m,l} in X from the recursion

        H_{m,l} = H_{m-1,l} + n (1 + (-1)^n X / n^n) (X d/dX + (m-l)/n) H_{m-1,l-1},

    with H_{0,l} = delta_{0,l} and H_{m,l} = 0 for l > m.
    """
    if m_max < n:
        raise ValueError("m_max must be at least n")
    Y: Poly = {0: Fraction(1), 1: Fraction((-1) ** n, n**n)}
    H: dict[tuple[int, int], Poly] = {(0, 0): {0: Fraction(1)}}
    for m in range(1, m_max + 1):
        for l in range(0, m + 1):
            prev = H.get((m - 1, l), {})
            term = dict(prev)
            lower = H.get((m - 1, l - 1), {})
            if lower:
                op = p_add(p_xdx(lower), p_scale(lower, Fraction(m - l, n)))
                term = p_add(term, p_scale(p_mul(Y, op), Fraction(n)))
            if term:
                H[(m, l)] = term
    return H


def build_L_operators(n: int) -> list[list[Poly]]:
    """
    Coefficient polynomials (in the symbol Lam, after X -> Lam^n) of the
    operators Lop_k = sum_i c_{k,i} D^i for k = 1..n.  Index [k-1][i].
    """
    H = build_H_table(n, n)
    Y: Poly = {0: Fraction(1), n: Fraction((-1) ** n, n**n)}
    ops: list[list[Poly]] = []
    for k in range(1, n + 1):
        coeffs: list[Poly] = []
        for i in range(0, k + 1):
            c = p_scale(p_subst_power(H.get((n - i, k - i), {}), n), Fraction(comb(n, i)))
            tail: Poly = {}
            for r in range(1, k - i + 1):
                term = p_scale(
                    p_subst_power(H.get((n - i - r, k - i - r), {}), n),
                    Fraction(comb(n - r, i) * stirling_first(n, n - r)),
                )
                tail = p_add(tail, term)
            if tail:
                c = p_add(c, p_mul(Y, tail))
            coeffs.append(c)
        ops.append(coeffs)
    return ops


def apply_operator(coeffs: list[Poly], p: Poly, n: int) -> Poly:
    """Apply sum_i c_i(Lam) D^i to a polynomial in Lam, with D Lam^r = r Lam^r Y."""
    Y: Poly = {0: Fraction(1), n: Fraction((-1) ** n, n**n)}
    out: Poly = {}
    cur = dict(p)
    for i, ci in enumerate(coeffs):
        if i > 0:
            cur = p_mul(p_xdx(cur), Y)
        if ci and cur:
            out = p_add(out, p_mul(ci, cur))
    return out


def f_n_poly(n: int) -> Poly:
    """f_n(L) = ((-1)^(n-1)/n) C(n+1,4) (1 + (-1)^n L^n/n^n) L^(n-1) / n^n."""
    pref = Fraction((-1) ** (n - 1) * comb(n + 1, 4), n ** (n + 1))
    return {n - 1: pref, 2 * n - 1: pref * Fraction((-1) ** n, n**n)}


# -- the universal column ---------------------------------------------------------


def compute_phis(n: int, k_max: int, normalization: Fraction, constants: list[Fraction]) -> list[Poly]:
    """
    Universal polynomials p_0 .. p_{k_max} with the given integration constants.

    Each step divides the right-hand side exactly by Y and by n r on Lam^r,
    asserting on theory violations (a constant term, a negative power, or an
    inexact division means an upstream bug).
    """
    if len(constants) < k_max:
        raise ValueError("need one constant per order k = 1..k_max")
    ops = build_L_operators(n)
    Y: Poly = {0: Fraction(1), n: Fraction((-1) ** n, n**n)}
    phis: list[Poly] = [{0: Fraction(normalization)} if normalization else {}]
    for k in range(1, k_max + 1):
        rhs: Poly = {}
        for l in range(2, n + 1):
            if k + 1 - l < 0:
                break
            term = apply_operator(ops[l - 1], phis[k + 1 - l], n)
            term = p_shift(term, 1 - l)
            if term and min(term) < 0:
                raise AssertionError(f"operator term at order {k}, l={l} has a pole")
            rhs = p_add(rhs, term)
        rhs = p_scale(rhs, Fraction(-1))
        quot = p_div_exact(rhs, Y)
        if 0 in quot:
            raise AssertionError(f"right-hand side at order {k} has a constant term")
        phi: Poly = {e: c / (n * e) for e, c in quot.items()}
        if constants[k - 1]:
            phi[0] = Fraction(constants[k - 1])
        phis.append(phi)
    return phis


# -- series route: modified flatness, column by column ------------------------------


def series_tables(
    data: GenusZeroData, k_max: int, normalization: Fraction, constants: list[Fraction]
) -> list[list[list[Series]]]:
    """
    tables[j][k][i] = the normalized entry at row i, column j, order k, as a series.

    Built from the modified flatness recursion alone: the rows at order k are
    cumulative sums over the known order k-1 data, and the row-zero series is
    recovered by one quadrature from the cycle-closure condition.  The
    polynomial route never enters; this is the oracle the ring lift is
    checked against.
    """
    cfg = data.cfg
    n = cfg.n
    inv_L = data.L.invert()
    tables: list[list[list[Series]]] = []
    for j in range(n):
        zj = data.zeta(j)
        col: list[list[Series]] = [[Series.monomial(normalization).truncate(data.L.prec) for _ in range(n)]]
        for k in range(1, k_max + 1):
            prev = col[k - 1]
            cum: list[Series] = [Series.zero() for _ in range(n)]
            cum[n - 1] = prev[0].D() * inv_L
            for i in range(n - 1, 1, -1):
                cum[i - 1] = cum[i] + prev[i].D() * inv_L + data.A[n - i] * prev[i]
            total_cum = Series.zero()
            for s in cum:
                total_cum = total_cum + s
            rhs = -(total_cum.D())
            for i in range(n):
                rhs = rhs - data.A[(n - i) % n] * cum[i] * data.L
            rhs = rhs / Fraction(n)
            if 0 in rhs.coeffs:
                raise AssertionError("cycle closure has a constant term; flatness violated")
            f = rhs.D_inverse() + Series.monomial(zj**k * Fraction(constants[k - 1]))
            col.append([f + cum[i] for i in range(n)])
        tables.append(col)
    return tables


def unitarity_residual(
    data: GenusZeroData, tables: list[list[list[Series]]], e: int
) -> list[list[Series]]:
    """
    The order-e coefficient of the quadratic unitarity condition, as an
    n x n matrix of series; all entries vanish exactly when the condition
    holds at this order.
    """
    n = data.cfg.n
    out: list[list[Series]] = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Series.zero()
            for c in range(e + 1):
                d = e - c
                sign = (-1) ** c
                for r in range(n):
                    rinv = (-r) % n
                    w = data.zeta(-(c + rinv) * i - (d + r) * j) * Fraction(sign, n)
                    acc = acc + tables[i][c][rinv] * tables[j][d][r] * w
            row.append(acc)
        out.append(row)
    return out


@dataclass
class PColumn:
    """Universal row-zero polynomials with their integration constants."""

    n: int
    k_max: int
    normalization: Fraction
    policy: str
    phis: list[Poly]
    constants: list[Fraction]
    constant_status: list[str]

    def row_zero_ring(self, j: int, k: int, zeta) -> RingElement:
        """The lifted row-zero entry at column j and order k (an element of C[L])."""
        terms = {}
        for r, c in self.phis[k].items():
            terms[(r, ())] = zeta((r + k) * j) * c
        return RingElement(terms)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k_max": self.k_max,
            "normalization": str(self.normalization),
            "policy": self.policy,
            "phis": [sorted((e, str(c)) for e, c in p.items()) for p in self.phis],
            "constants": [str(c) for c in self.constants],
            "constant_status": list(self.constant_status),
        }

    @staticmethod
    def from_json(d: dict) -> "PColumn":
        return PColumn(
            d["n"],
            d["k_max"],
            Fraction(d["normalization"]),
            d["policy"],
            [{int(e): Fraction(c) for e, c in p} for p in d["phis"]],
            [Fraction(c) for c in d["constants"]],
            list(d["constant_status"]),
        )


def fix_constants_symplectic(
    data: GenusZeroData, k_max: int, normalization: Fraction
) -> tuple[list[Fraction], list[str]]:
    """
    Choose integration constants so the unitarity condition holds order by order.

    At each order e the condition is affine in the new constant; where its
    linear part vanishes identically the constant is reported free and left
    at zero, and the condition itself must then already hold.
    """
    n = data.cfg.n
    constants: list[Fraction] = []
    status: list[str] = []
    for e in range(1, k_max + 1):
        base = series_tables(data, e, normalization, constants + [Fraction(0)])
        bumped = series_tables(data, e, normalization, constants + [Fraction(1)])
        r0 = unitarity_residual(data, base, e)
        r1 = unitarity_residual(data, bumped, e)
        slope_entry = None
        for i in range(n):
            for j in range(n):
                delta = r1[i][j] - r0[i][j]
                lead = delta.first_nonzero()
                if lead is not None:
                    slope_entry = (i, j, lead)
                    break
            if slope_entry:
                break
        if slope_entry is None:
            bad = [
                (i, j, r0[i][j].zero_order())
                for i in range(n)
                for j in range(n)
                if r0[i][j].zero_order() is not None
            ]
            if bad:
                raise AssertionError(f"unitarity at order {e} inconsistent: {bad[:3]}")
            constants.append(Fraction(0))
            status.append("free")
            continue
        i, j, (exp, slope) = slope_entry
        rho = r0[i][j].get(exp)
        slope_inv = slope.inverse() if isinstance(slope, Cyclotomic) else Fraction(1) / slope
        c = -(rho * slope_inv)
        if isinstance(c, Cyclotomic):
            c = c.to_rational()
        constants.append(Fraction(c))
        status.append("fixed")
        final = series_tables(data, e, normalization, constants)
        resid = unitarity_residual(data, final, e)
        bad = [
            (a, b, resid[a][b].zero_order())
            for a in range(n)
            for b in range(n)
            if resid[a][b].zero_order() is not None
        ]
        if bad:
            raise AssertionError(f"unitarity at order {e} not solvable by one constant: {bad[:3]}")
    return constants, status


def compute_P_column(
    n: int,
    k_max: int,
    policy: str = "symplectic",
    data: GenusZeroData | None = None,
    normalization: Fraction = Fraction(1),
    custom_constants: list[Fraction] | None = None,
) -> PColumn:
    """Build the universal column under a constants policy."""
    if policy == "zero":
        constants = [Fraction(0)] * k_max
        status = ["zero"] * k_max
    elif policy == "custom":
        if custom_constants is None or len(custom_constants) < k_max:
            raise ValueError("custom policy needs k_max constants")
        constants = [Fraction(c) for c in custom_constants[:k_max]]
        status = ["given"] * k_max
    elif policy == "symplectic":
        if data is None:
            raise ValueError("symplectic policy needs genus zero data")
        constants, status = fix_constants_symplectic(data, k_max, normalization)
    else:
        raise ValueError(f"unknown constants policy {policy!r}")
    phis = compute_phis(n, k_max, normalization, constants)
    return PColumn(n, k_max, normalization, policy, phis, constants, status)


# -- the ring lift -----------------------------------------------------------------


def lift_tables(ctx: RingContext, col: PColumn, zeta) -> dict[tuple[int, int, int], RingElement]:
    """
    lift[(k, i, j)] = the order-k, row-i, column-j entry in the free ring.

    Rows descend from row zero through the modified flatness recursion; the
    formal derivation rewrites every derivative that leaves the admitted set.
    """
    n = ctx.n
    out: dict[tuple[int, int, int], RingElement] = {}
    for j in range(n):
        out[(0, 0, j)] = col.row_zero_ring(j, 0, zeta)
        for i in range(1, n):
            out[(0, i, j)] = out[(0, 0, j)]
        for k in range(1, col.k_max + 1):
            out[(k, 0, j)] = col.row_zero_ring(j, k, zeta)
            prev0 = out[(k - 1, 0, j)]
            out[(k, n - 1, j)] = out[(k, 0, j)] + ctx.derive(prev0).mul_L(-1)
            for i in range(n - 1, 1, -1):
                prev = out[(k - 1, i, j)]
                out[(k, i - 1, j)] = (
                    out[(k, i, j)] + ctx.derive(prev).mul_L(-1) + ctx.A(n - i) * prev
                )
    return out


def verify_lift(
    ctx: RingContext,
    data: GenusZeroData,
    col: PColumn,
    lifted: dict[tuple[int, int, int], RingElement],
    tables: list[list[list[Series]]],
) -> Report:
    """Certify the ring lift against the series oracle, entry by entry."""
    n = ctx.n
    ev = ctx.evaluator(data)
    rep = Report(f"lift certification (n={n}, k_max={col.k_max}, policy={col.policy})")
    for j in range(n):
        worst = None
        for k in range(col.k_max + 1):
            for i in range(n):
                d = (ev.eval(lifted[(k, i, j)]) - tables[j][k][i]).zero_order()
                if d is not None:
                    worst = (k, i, d)
                    break
            if worst:
                break
        rep.add(f"column {j} matches series oracle", worst is None, str(worst) if worst else "")
    # the one flatness equation not consumed by the construction must close
    for j in range(n):
        bad = None
        for k in range(1, col.k_max + 1):
            prev = lifted[(k - 1, 1, j)]
            resid = lifted[(k, 0, j)] - lifted[(k, 1, j)] - ctx.derive(prev).mul_L(-1) - ctx.A(n - 1) * prev
            if not resid.is_zero():
                bad = (k, resid.monomial_count())
                break
        rep.add(f"cycle closure in the ring, column {j}", bad is None, str(bad) if bad else "")
    # membership: row zero entries live in C[L]
    ok = all(
        not col.row_zero_ring(j, k, zeta=lambda m: data.zeta(m)).uses_negative_L()
        for j in range(n)
        for k in range(col.k_max + 1)
    )
    rep.add("row zero entries have no pole in L", ok)
    return rep


def verify_partial_lemmas(
    ctx: RingContext, lifted: dict[tuple[int, int, int], RingElement], k_max: int
) -> Report:
    """
    The formal partial derivative of every lifted entry with respect to the
    distinguished generator collapses to the shifted entries predicted by the
    flatness structure (one Kronecker delta for odd n, two for even n).
    """
    n = ctx.n
    s = ctx.s
    gen = ("A", ctx.distinguished, 0)
    rep = Report(f"partial derivative lemmas (n={n})")
    for j in range(n):
        bad = None
        for k in range(k_max + 1):
            for i in range(n):
                got = lifted[(k, i, j)].partial(gen)
                want = RingElement.zero()
                if ctx.odd:
                    if i == s and k >= 1:
                        want = lifted[(k - 1, s + 1, j)]
                else:
                    if i == s and k >= 1:
                        want = lifted[(k - 1, s + 1, j)]
                    elif i == s - 1 and k >= 1:
                        want = lifted[(k - 1, s, j)]
                if not (got - want).is_zero():
                    bad = (k, i)
                    break
            if bad:
                break
        rep.add(f"partial lemma, column {j}", bad is None, str(bad) if bad else "")
    return rep


# -- top-level driver ----------------------------------------------------------------


@dataclass
class PMatrixData:
    """Everything the graph sum needs: column polynomials, series oracle, ring lift."""

    ctx: RingContext
    data: GenusZeroData
    col: PColumn
    tables: list[list[list[Series]]]
    lifted: dict[tuple[int, int, int], RingElement]


def build_pmatrix(
    ctx: RingContext,
    data: GenusZeroData,
    k_max: int,
    policy: str = "symplectic",
    normalization: Fraction = Fraction(1),
    custom_constants: list[Fraction] | None = None,
) -> PMatrixData:
    col = compute_P_column(ctx.n, k_max, policy, data, normalization, custom_constants)
    tables = series_tables(data, k_max, col.normalization, col.constants)
    lifted = lift_tables(ctx, col, data.zeta)
    return PMatrixData(ctx, data, col, tables, lifted)


def verify_pmatrix(pm: PMatrixData, fit_orders: bool = True) -> Report:
    """The full verification battery for one constants policy."""
    ctx, data, col = pm.ctx, pm.data, pm.col
    n = ctx.n
    rep = Report(f"P-matrix verification (n={n}, k_max={col.k_max}, policy={col.policy})")

    ops = build_L_operators(n)
    rep.add("Lop_1 = n D", not ops[0][0] and ops[0][1] == {0: Fraction(n)})
    Yp: Poly = {0: Fraction(1), n: Fraction((-1) ** n, n**n)}
    want2 = [
        p_scale(p_add(p_mul(Yp, Yp), p_scale(Yp, Fraction(-1))), Fraction(comb(n + 1, 4))),
        p_scale(Yp, Fraction(-comb(n, 2))),
        {0: Fraction(comb(n, 2))},
    ]
    got2 = ops[1]
    rep.add("Lop_2 closed form", all(p_add(g, p_scale(w, Fraction(-1))) == {} for g, w in zip(got2, want2)))

    # congruence mod the ideal (X Y): Lop_k = C(n,k) D (D - Y) ... (D - (k-1)Y),
    # tested through its classified action on the monomials Lam^r
    for k in range(1, n + 1):
        okk = True
        for r in range(0, k + n + 1):
            lhs = apply_operator(ops[k - 1], {r: Fraction(1)}, n)
            # rhs: C(n,k) D(D-Y)...(D-(k-1)Y) Lam^r mod ideal (X Y), computed mod Lam^{2n}
            # with Y treated exactly; use the classified values: 0 for r < k,
            # r(r-1)..(r-k+1) Lam^r Y^k for r >= k, all mod X Y
            rhs: Poly = {}
            if r >= k:
                fall = Fraction(comb(n, k))
                for t in range(k):
                    fall *= r - t
                # Lam^r Y^k mod (X Y): Y^k == Y, so Lam^r Y = Lam^r + (-1)^n Lam^{r+n}/n^n
                rhs = p_scale({r: Fraction(1), r + n: Fraction((-1) ** n, n**n)}, fall)
            diff = p_add(lhs, p_scale(rhs, Fraction(-1)))
            # membership of the difference in the ideal (X Y): every term must be
            # divisible by Lam^n * Y; check by exact division
            if diff:
                XY = p_mul({n: Fraction(1)}, Yp)
                try:
                    p_div_exact(diff, XY)
                except ValueError:
                    okk = False
                    break
        rep.add(f"Lop_{k} congruence mod (X Y)", okk)

    # D p_1 = f_n p_0
    ops_done = p_add(
        apply_operator([{}, {0: Fraction(1)}], col.phis[1], n),
        p_scale(p_mul(f_n_poly(n), col.phis[0]), Fraction(-1)),
    )
    rep.add("D p_1 = f_n p_0", ops_done == {})

    for k, phi in enumerate(col.phis):
        rep.add(f"p_{k} has only nonnegative powers", not phi or min(phi) >= 0)

    # series oracle matches the polynomial route on every column
    cache: dict[int, dict[int, Series]] = {}
    for j in range(n):
        zj = data.zeta(j)
        base = data.L * zj
        cache_j = cache.setdefault(j, {})
        bad = None
        for k in range(col.k_max + 1):
            poly_val = p_eval_series(col.phis[k], base, cache_j) * data.zeta(k * j)
            d = (poly_val - pm.tables[j][k][0]).zero_order()
            if d is not None:
                bad = (k, d)
                break
        rep.add(f"polynomial vs series route, column {j}", bad is None, str(bad) if bad else "")

    if fit_orders:
        for j in range(n):
            zj = data.zeta(j)
            bad = None
            for k in range(col.k_max + 1):
                series_val = pm.tables[j][k][0] * data.zeta(-k * j)  # un-normalized row zero
                Lj = data.L * zj
                try:
                    fit, checked = fit_laurent_in_L(series_val, Lj, 0, (k + 1) * n)
                except ValueError as exc:
                    bad = (k, str(exc))
                    break
                want = {e: c * Fraction(1) for e, c in col.phis[k].items()}
                got_rat = {e: (c.to_rational() if isinstance(c, Cyclotomic) else Fraction(c)) for e, c in fit.items()}
                if got_rat != want:
                    bad = (k, "fit disagrees with polynomial route")
                    break
            rep.add(f"Laurent fit certifies membership, column {j}", bad is None, str(bad) if bad else "")

    sub = verify_lift(ctx, data, col, pm.lifted, pm.tables)
    rep.checks.extend(sub.checks)
    sub = verify_partial_lemmas(ctx, pm.lifted, col.k_max)
    rep.checks.extend(sub.checks)
    return rep
