r"""
Genus zero data for the cyclic quotient orbifold of order n.

Everything downstream is built from a handful of explicit series in x:

* the components I_k of the hypergeometric solution of the rank-n
  Picard-Fuchs equation,

      I_k(x) = sum_{l >= 0} (-1)^{nl} x^{nl+k} / (nl+k)!
               * (prod_{j<l} (j + k/n))^n,

  held as the z^{-k} slots of one z-adic array so the Birkhoff
  normalization can act on it;
* the distinguished series L(x) = x (1 - (-1)^n (x/n)^n)^{-1/n}, the base
  generator of every finite-generation ring;
* the normalization factors C_i produced by iterating the operator
  M F = z D (F / F(x, infinity)), together with the running products
  K_l = C_0 ... C_l;
* the logarithmic data X_{k,l} = D^l C_k / C_k and the combinations
  A_i = (i DL/L - sum_{r<=i} X_r) / L in which the higher genus theory is
  polynomial.

Two independent constructions of the C_i are implemented: the z-adic
normalization above and the inductive form C_i = D Lop_{i-1} ... Lop_0 I_i
with Lop_i = C_i^{-1} D.  Their agreement, the Picard-Fuchs residuals, and
the product identities are exposed as verification reports rather than
assumed.

All arithmetic is exact; coefficients are rational until roots of unity
enter through the idempotent frame (Psi and its inverse).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .cyclotomic import Cyclotomic
from .report import Report
from .series import Series
from .series import binomial_pow as _binomial_pow
from .stirling import StirlingTable


@dataclass(frozen=True)
class ModelConfig:
    """Order n >= 3 of the quotient and the x-truncation order N."""

    n: int
    N: int = 0

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("the model needs n >= 3")
        if self.N == 0:
            object.__setattr__(self, "N", 10 * self.n)
        if self.N < 4 * self.n:
            raise ValueError("truncation order N must be at least 4n")

    @property
    def parity(self) -> str:
        return "even" if self.n % 2 == 0 else "odd"

    @property
    def s(self) -> int:
        """n = 2s+1 for odd n, n = 2s for even n."""
        return self.n // 2

    def inv(self, i: int) -> int:
        """The involution on {0..n-1} with inv(0) = 0 and inv(i) = n - i."""
        return (-i) % self.n

    def ion(self, i: int) -> int:
        """The shifted involution on {0..n}: ion(0) = n, identity on 1..n-1."""
        if i == 0:
            return self.n
        return i


def compute_I(cfg: ModelConfig, slots: int | None = None) -> list[Series]:
    """
    The z^{-k} slot series of the hypergeometric array, k = 0..slots.

    Each x-degree m = nq + r contributes through the degree-q polynomial
    prod_{j<q} (1 + (-1)^n b_j^n z^n) with b_j = j + r/n; the z^{nj} term
    lands in slot m - nj.
    """
    n, N = cfg.n, cfg.N
    if slots is None:
        slots = n + 2
    sign = (-1) ** n
    out: list[dict[int, Fraction]] = [dict() for _ in range(slots + 1)]
    for m in range(N + 1):
        q, r = divmod(m, n)
        poly = [Fraction(1)]
        for j in range(q):
            b = Fraction(j * n + r, n)
            c = sign * b**n
            nxt = poly + [Fraction(0)]
            for t in range(len(poly)):
                if poly[t] and c:
                    nxt[t + 1] += poly[t] * c
            poly = nxt
        invfact = Fraction(1, factorial(m))
        for j, cj in enumerate(poly):
            k = m - n * j
            if k <= slots and cj:
                out[k][m] = cj * invfact
    return [Series(d, N + 1) for d in out]


def compute_L(cfg: ModelConfig) -> Series:
    """L = x (1 - (-1)^n (x/n)^n)^(-1/n); satisfies DL/L = L^n/x^n."""
    n, N = cfg.n, cfg.N
    u = Series({n: Fraction(-((-1) ** n), n**n)})
    return _binomial_pow(u, -1, n, prec=N + 1).shift(1)


def birkhoff_C(cfg: ModelConfig, slots: list[Series], count: int | None = None) -> list[Series]:
    """
    C_0 .. C_count by iterating the normalization M F = z D (F / F(x, infinity)).

    In slot form one step maps [s_0, s_1, ...] to [D(s_1/s_0), D(s_2/s_0), ...],
    so C_i only ever consumes the first i+1 slots.
    """
    if count is None:
        count = len(slots) - 1
    if count > len(slots) - 1:
        raise ValueError("not enough z-slots for the requested C count")
    cs: list[Series] = []
    cur = slots
    for i in range(count + 1):
        lead = cur[0]
        if lead.first_nonzero() is None:
            raise ZeroDivisionError(f"slot 0 vanished at step {i}; truncation order too small")
        cs.append(lead)
        if i < count:
            cur = [(cur[k + 1] / lead).D() for k in range(len(cur) - 1)]
    return cs


def C_via_inversion(cfg: ModelConfig, slots: list[Series], count: int | None = None) -> list[Series]:
    """
    The inductive normalization C_i = D Lop_{i-1} ... Lop_0 I_i, Lop_r = C_r^{-1} D.

    Self-contained (uses only its own output), so it cross-validates
    :func:`birkhoff_C`.
    """
    if count is None:
        count = len(slots) - 1
    cs = [Series.one().truncate(slots[0].prec)]
    for i in range(1, count + 1):
        t = slots[i]
        for r in range(1, i):
            t = t.D() / cs[r]
        cs.append(t.D())
    return cs


@dataclass
class GenusZeroData:
    """All genus zero series for one (n, N), plus the ring generators."""

    cfg: ModelConfig
    I: list[Series]
    L: Series
    C: list[Series]
    C_alt: list[Series]
    K: list[Series]
    X: list[list[Series]]
    A: list[Series]
    Theta: Series
    DLL: Series
    stirling: StirlingTable
    _zeta_cache: dict[int, Cyclotomic] = field(default_factory=dict, repr=False)

    # -- construction -------------------------------------------------------

    @staticmethod
    def build(cfg: ModelConfig, x_levels: int = 0) -> "GenusZeroData":
        n = cfg.n
        slots = compute_I(cfg, n + 2)
        L = compute_L(cfg)
        C = birkhoff_C(cfg, slots, n + 1)
        C_alt = C_via_inversion(cfg, slots, n + 1)
        K = [C[0]]
        for l in range(1, n + 1):
            K.append(K[-1] * C[l])
        levels = max(n + 1, x_levels)
        X: list[list[Series]] = []
        for k in range(n + 1):
            row = [Series.one().truncate(C[k].prec)]
            d = C[k]
            for _ in range(levels):
                d = d.D()
                row.append(d / C[k])
            X.append(row)
        DLL = L.D() / L
        A = []
        for i in range(n + 1):
            acc = DLL * i
            for r in range(1, i + 1):
                acc = acc - X[r][1]
            A.append(acc / L)
        st = StirlingTable.build(max(n + 1, 9))
        return GenusZeroData(cfg, slots, L, C, C_alt, K, X, A, slots[1], DLL, st)

    # -- small helpers --------------------------------------------------------

    def zeta(self, k: int) -> Cyclotomic:
        k %= self.cfg.n
        if k not in self._zeta_cache:
            self._zeta_cache[k] = Cyclotomic.zeta(self.cfg.n, k)
        return self._zeta_cache[k]

    def K_ext(self, l: int) -> Series:
        """K_l for any l >= 0 through K_{n+l} = L^n K_l."""
        n = self.cfg.n
        out = self.K[l % n]
        for _ in range(l // n):
            out = out * self.L**n
        return out

    def two_point(self, i: int) -> Series:
        """<<phi_i, phi_{n-1-i}>> = (1/n) Lop_i ... Lop_0 I_{i+1}; zero otherwise."""
        t = self.I[i + 1]
        for r in range(1, i + 1):
            t = t.D() / self.C[r]
        return t / self.cfg.n

    def quantum_coeff(self, i: int, j: int) -> Series:
        """Structure constant of phi_i * phi_j = (K_{i+j} / K_i K_j) phi_{i+j}."""
        return self.K_ext(i + j) / (self.K[i] * self.K[j])

    def pairing(self, i: int, j: int) -> Fraction:
        return Fraction(1, self.cfg.n) if (i + j) % self.cfg.n == 0 else Fraction(0)

    def psi_matrix(self) -> list[list[Series]]:
        """Psi[alpha][i] = (1/n) zeta^{alpha i} L^i / K_i."""
        n = self.cfg.n
        units = [self.L**i / self.K[i] for i in range(n)]
        return [
            [units[i] * (self.zeta(a * i) / Fraction(n)) for i in range(n)]
            for a in range(n)
        ]

    def psi_inverse_matrix(self) -> list[list[Series]]:
        """PsiInv[j][beta] = zeta^{-beta j} K_j / L^j."""
        n = self.cfg.n
        units = [self.K[j] / self.L**j for j in range(n)]
        return [[units[j] * self.zeta(-b * j) for b in range(n)] for j in range(n)]

    def idempotent(self, alpha: int) -> list[Series]:
        """Coordinates of e_alpha in the phi basis: (1/n) zeta^{-alpha i} K_i / L^i."""
        n = self.cfg.n
        return [
            (self.K[i] / self.L**i) * (self.zeta(-alpha * i) / Fraction(n))
            for i in range(n)
        ]

    def phi_product(self, a: list[Series], b: list[Series]) -> list[Series]:
        """Quantum product of two vectors written in the phi basis."""
        n = self.cfg.n
        out: list[Series] = [Series.zero(min(s.prec for s in a + b)) for _ in range(n)]
        for i in range(n):
            if a[i].is_zero():
                continue
            for j in range(n):
                if b[j].is_zero():
                    continue
                out[(i + j) % n] = out[(i + j) % n] + a[i] * b[j] * self.quantum_coeff(i, j)
        return out

    # -- the B / Z ladder -----------------------------------------------------

    def Z_series(self, m: int, k: int) -> Series:
        if k > m:
            return Series.zero(self.C[0].prec)
        if k == m:
            return Series.one().truncate(self.C[0].prec)
        t = Series.one()
        for r in range(m, k, -1):
            t = (self.C[r] * t).D_inverse()
        return t

    def B_series(self, k: int, p: int) -> Series:
        if p > k:
            return Series.zero(self.C[0].prec)
        if p == 1:
            return self.C[1].deriv_pow(k - 1)
        from math import comb

        total = Series.zero()
        chain = [0] * (p + 1)
        chain[1] = k

        def rec(i: int, acc: Series, coeff: int):
            nonlocal total
            if i == p:
                total = total + acc * self.C[p].deriv_pow(chain[p] - 1) * coeff
                return
            lo = p - i
            for nxt in range(lo, chain[i]):
                chain[i + 1] = nxt
                rec(
                    i + 1,
                    acc * self.C[i].deriv_pow(chain[i] - 1 - nxt),
                    coeff * comb(chain[i] - 1, nxt),
                )

        rec(1, Series.one(), 1)
        return total


# -- verification -------------------------------------------------------------


def verify_picard_fuchs(data: GenusZeroData) -> Report:
    """
    Residuals of the rank-n equation, slot by slot, in three equivalent forms:
    the raw x^{-n}-form, the per-component form, and the factorized form.
    """
    cfg = data.cfg
    n = cfg.n
    st = data.stirling
    rep = Report(f"Picard-Fuchs residuals (n={n}, N={cfg.N})")
    sign = Fraction((-1) ** n, n**n)

    for k, slot in enumerate(data.I):
        lhs = Series.zero()
        for j in range(1, n + 1):
            lhs = lhs + slot.deriv_pow(j) * st.s(n, j)
        lhs = lhs.shift(-n) - slot.deriv_pow(n) * sign
        rhs = data.I[k - n] if k >= n else Series.zero()
        resid = lhs - rhs
        diff = resid.zero_order()
        rep.add(
            f"full equation, slot {k}",
            diff is None,
            f"first bad x-power {diff}" if diff is not None else f"zero through x^{int(resid.prec) - 1}",
        )

    for k in range(n):
        resid = data.I[k].deriv_pow(n)
        for r in range(1, n):
            resid = resid + data.DLL * data.I[k].deriv_pow(r) * st.s(n, r)
        bad = resid.zero_order()
        rep.add(
            f"component form, I_{k}",
            bad is None,
            f"first bad x-power {bad}" if bad is not None else f"zero through x^{int(resid.prec) - 1}",
        )

    def chain(slot: Series, order: range) -> Series:
        t = slot
        for r in order:
            t = t.D() / data.C[r]
        return t

    for k, slot in enumerate(data.I):
        rhs = data.I[k - n] if k >= n else Series.zero()
        for label, order in (("L1..Ln", range(n, 0, -1)), ("Ln..L1", range(1, n + 1))):
            got = chain(slot, order)
            diff = (got - rhs).zero_order()
            rep.add(
                f"factorized ({label}), slot {k}",
                diff is None,
                f"first bad x-power {diff}" if diff is not None else "",
            )
    return rep


def verify_birkhoff(data: GenusZeroData) -> Report:
    """Periodicity, palindrome, and product identities of the C and K series."""
    cfg = data.cfg
    n = cfg.n
    rep = Report(f"Birkhoff identities (n={n}, N={cfg.N})")

    for i in range(n + 2):
        d = (data.C[i] - data.C_alt[i]).zero_order()
        rep.add(f"two constructions of C_{i} agree", d is None, f"first bad x-power {d}" if d is not None else "")

    d = (data.C[n + 1] - data.C[1]).zero_order()
    rep.add("periodicity C_{n+1} = C_1", d is None)

    prod = Series.one()
    for k in range(1, n + 1):
        prod = prod * data.C[k]
    d = (prod - data.L**n).zero_order()
    rep.add("product C_1 ... C_n = L^n", d is None)

    for k in range(1, n + 1):
        d = (data.C[k] - data.C[n + 1 - k]).zero_order()
        rep.add(f"palindrome C_{k} = C_{n+1-k}", d is None)

    for l in range(n + 1):
        d = (data.K[l] * data.K[n - l] - data.L**n).zero_order()
        rep.add(f"K_{l} K_{n-l} = L^n", d is None)

    d = (data.K[n] - data.L**n).zero_order()
    rep.add("K_n = L^n", d is None)
    return rep


def verify_ring_series(data: GenusZeroData) -> Report:
    """
    Series-level identities behind the finite-generation ring: the A-symmetries,
    the ladder expansion of D^k I_m, and the graded ladder relation.
    """
    cfg = data.cfg
    n = cfg.n
    st = data.stirling
    rep = Report(f"ring generator identities (n={n}, N={cfg.N})")

    for i in range(n + 1):
        d = (data.A[i] + data.A[n - i]).zero_order()
        rep.add(f"A_{i} + A_{n-i} = 0", d is None)
    acc = Series.zero()
    for i in range(n + 1):
        acc = acc + data.A[i]
    rep.add("sum of all A_i = 0", acc.zero_order() is None)
    if n % 2 == 0:
        rep.add("A_{n/2} = 0", data.A[n // 2].zero_order() is None)
    d = (data.A[0]).zero_order()
    rep.add("A_0 = 0", d is None)
    rep.add("A_n = 0", data.A[n].zero_order() is None)

    acc = Series.zero()
    for r in range(n + 1):
        acc = acc + data.X[r][1]
    rep.add("sum X_r = n DL/L", (acc - data.DLL * n).zero_order() is None)

    for m in range(1, n + 1):
        for k in range(1, n + 1):
            lhs = data.I[m].deriv_pow(k)
            rhs = Series.zero()
            for p in range(1, k + 1):
                rhs = rhs + data.B_series(k, p) * data.Z_series(m, p)
            d = (lhs - rhs).zero_order()
            rep.add(f"ladder expansion D^{k} I_{m}", d is None, f"first bad x-power {d}" if d is not None else "")

    for m in range(1, n):
        resid = data.B_series(n, m)
        for k in range(m, n):
            resid = resid + data.DLL * data.B_series(k, m) * st.s(n, k)
        d = resid.zero_order()
        rep.add(f"graded ladder relation, column {m}", d is None, f"first bad x-power {d}" if d is not None else "")

    # the derivative relation that closes the generator set
    s = cfg.s
    fl = f_n_series(data)
    limit = (n - 1) // 2
    resid = fl * Fraction(n)
    for r in range(1, limit + 1):
        resid = resid + data.A[r].D() * Fraction(n - 2 * r)
    resid = resid / data.L
    for r in range(1, limit + 1):
        resid = resid - data.A[r] * data.A[r]
    d = resid.zero_order()
    rep.add("closure relation for the top A derivative", d is None, f"first bad x-power {d}" if d is not None else "")
    return rep


def f_n_series(data: GenusZeroData) -> Series:
    """f_n(L) = ((-1)^(n-1)/n) C(n+1,4) (1 + (-1)^n L^n/n^n) L^(n-1)/n^n as a series in x."""
    from math import comb

    n = data.cfg.n
    pref = Fraction((-1) ** (n - 1) * comb(n + 1, 4), n) / Fraction(n**n)
    return (Series.one() + data.L**n * Fraction((-1) ** n, n**n)) * data.L ** (n - 1) * pref


def verify_quantum(data: GenusZeroData) -> Report:
    """Idempotents, pairing normalization, transition matrix, canonical coordinates."""
    cfg = data.cfg
    n = cfg.n
    rep = Report(f"quantum structure (n={n}, N={cfg.N})")

    for i in range(n):
        d = (data.quantum_coeff(1, i) - data.C[i + 1] / data.C[1]).zero_order()
        rep.add(f"phi_1 * phi_{i} multiplier", d is None)

    d = (data.two_point(0) - data.Theta / n).zero_order()
    rep.add("two-point value at i = 0", d is None)
    for i in range(n):
        d = (data.two_point(i).D() - data.C[i + 1] / n).zero_order()
        rep.add(f"D of two-point function, i={i}", d is None)

    es = [data.idempotent(a) for a in range(n)]
    for a in range(n):
        for b in range(n):
            prod = data.phi_product(es[a], es[b])
            target = es[b] if a == b else [Series.zero() for _ in range(n)]
            bad = None
            for i in range(n):
                d = (prod[i] - target[i]).zero_order()
                if d is not None:
                    bad = (i, d)
                    break
            rep.add(f"idempotency e_{a} * e_{b}", bad is None, str(bad) if bad else "")

    for a in range(n):
        val = Series.zero()
        for i in range(n):
            val = val + es[a][i] * es[a][(n - i) % n] * data.pairing(i, (n - i) % n)
        d = (val - Series.monomial(Fraction(1, n**2))).zero_order()
        rep.add(f"g(e_{a}, e_{a}) = 1/n^2", d is None)

    psi = data.psi_matrix()
    psi_inv = data.psi_inverse_matrix()
    bad = None
    for a in range(n):
        for b in range(n):
            acc = Series.zero()
            for i in range(n):
                acc = acc + psi[a][i] * psi_inv[i][b]
            target = Series.one() if a == b else Series.zero()
            d = (acc - target).zero_order()
            if d is not None:
                bad = (a, b, d)
    rep.add("Psi Psi^{-1} = Id", bad is None, str(bad) if bad else "")

    # canonical coordinate eigenvalue: phi_1 * e_alpha = (zeta^alpha L / C_1) e_alpha
    phi1 = [Series.zero() for _ in range(n)]
    phi1[1] = Series.one()
    for a in range(n):
        prod = data.phi_product(phi1, es[a])
        eig = data.L / data.C[1] * data.zeta(a)
        bad = None
        for i in range(n):
            d = (prod[i] - es[a][i] * eig).zero_order()
            if d is not None:
                bad = (i, d)
                break
        rep.add(f"canonical coordinate eigenvalue, alpha={a}", bad is None, str(bad) if bad else "")
        # du/dx form: eigenvalue times D(Theta)/x equals zeta^alpha L / x
        lhs = eig * data.Theta.D()
        rhs = data.L * data.zeta(a)
        rep.add(f"du^{a}/dx = zeta^{a} L / x", (lhs - rhs).zero_order() is None)
    return rep


def compute_K_X_A(data: GenusZeroData) -> tuple[list[Series], list[list[Series]], list[Series]]:
    """The running products K_l, the table X_{k,l}, and the A_i, as built."""
    return data.K, data.X, data.A


def quantum_structure(data: GenusZeroData):
    """
    The quantum product data: structure constants, three-point functions,
    idempotents, and the transition matrix with its inverse.
    """
    n = data.cfg.n
    product = {(i, j): data.quantum_coeff(i, j) for i in range(n) for j in range(n)}
    three_point = {
        (i, j, k): product[(i, j)] * data.pairing((i + j) % n, k)
        for i in range(n)
        for j in range(n)
        for k in range(n)
    }
    idempotents = [data.idempotent(a) for a in range(n)]
    return product, three_point, idempotents, data.psi_matrix(), data.psi_inverse_matrix()


def build_and_verify(cfg: ModelConfig) -> tuple[GenusZeroData, Report]:
    data = GenusZeroData.build(cfg)
    rep = Report(f"genus zero verification (n={cfg.n}, N={cfg.N})")
    for sub in (verify_picard_fuchs(data), verify_birkhoff(data), verify_ring_series(data), verify_quantum(data)):
        rep.checks.extend(sub.checks)
    return data, rep
