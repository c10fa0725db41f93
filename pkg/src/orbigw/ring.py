r"""
The free Laurent-polynomial ring that certifies finite generation.

Ring elements are polynomials over Q(zeta_n) in

* integer powers of the symbol L,
* the admitted A-generators D^j A_i (a finite set fixed per n),
* the factor symbols C_1, ..., C_ceil((n-1)/2) (indices canonicalized by the
  palindrome C_i = C_{n+1-i}),

with a formal derivation D.  D acts on L-powers through D L = L Y with
Y = 1 + (-1)^n L^n / n^n, raises admitted A-generators by one derivative,
and rewrites any derivative that falls outside the admitted set using two
families of relations:

* the closure relation that expresses the first derivative of the
  distinguished A-generator (index s for odd n = 2s+1, s-1 for even n = 2s)
  through lower data and the explicit Laurent polynomial f_n(L);
* for each remaining representative index m, the relation obtained by
  pushing the rank-n differential equation through the ladder expansion of
  D^k I_m, which eliminates D^{n-1-m} A_m.

The rewrite rules are constructed symbolically once per n.  They are not
trusted: ``certify_rules`` evaluates every rule against the genus zero
series and fails loudly on the first mismatched coefficient.  The evaluation
homomorphism (L to the series L(x), D^j A_i to the series derivative,
C_i to the normalization factor) is the module's ground truth, and
``derive`` commutes with it by construction.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .cyclotomic import Coefficient, Cyclotomic
from .genus0 import GenusZeroData
from .report import Report
from .series import Series
from .stirling import stirling_first

# generator keys: ("A", i, j) stands for D^j A_i, ("C", i) for C_i
Gen = tuple
Monomial = tuple  # (L_exponent, ((gen, exp), ...)) with gens sorted


def _mono(L_exp: int = 0, gens: tuple = ()) -> Monomial:
    return (L_exp, gens)


_ONE_MONO = _mono()


class RingElement:
    """Polynomial in L^{+-1} and the ring generators, with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Coefficient] | None = None):
        out = {}
        for m, c in (terms or {}).items():
            if not c:
                continue
            if isinstance(c, Cyclotomic) and c.is_rational():
                c = c.to_rational()
            out[m] = c
        self.terms = out

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero() -> "RingElement":
        return RingElement()

    @staticmethod
    def scalar(c: Coefficient) -> "RingElement":
        return RingElement({_ONE_MONO: c})

    @staticmethod
    def L_power(k: int, c: Coefficient = Fraction(1)) -> "RingElement":
        return RingElement({_mono(k): c})

    @staticmethod
    def generator(gen: Gen, c: Coefficient = Fraction(1)) -> "RingElement":
        return RingElement({_mono(0, ((gen, 1),)): c})

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElement):
            return self.terms == other.terms
        return NotImplemented

    def generators_used(self) -> set[Gen]:
        out: set[Gen] = set()
        for (_, gens) in self.terms:
            out.update(g for g, _ in gens)
        return out

    def uses_negative_L(self) -> bool:
        return any(le < 0 for (le, _) in self.terms)

    def monomial_count(self) -> int:
        return len(self.terms)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = RingElement.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return RingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = RingElement.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RingElement.scalar(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if not other:
                return RingElement()
            return RingElement({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, RingElement):
            return NotImplemented
        out: dict[Monomial, Coefficient] = {}
        for (l1, g1), c1 in self.terms.items():
            for (l2, g2), c2 in other.terms.items():
                if not g2:
                    merged = g1
                elif not g1:
                    merged = g2
                else:
                    acc = dict(g1)
                    for g, e in g2:
                        acc[g] = acc.get(g, 0) + e
                    merged = tuple(sorted(acc.items()))
                m = (l1 + l2, merged)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return RingElement(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RingElement":
        if k < 0:
            raise ValueError("negative powers of general ring elements are not defined")
        result = RingElement.scalar(Fraction(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def mul_L(self, k: int) -> "RingElement":
        return RingElement({(le + k, gens): c for (le, gens), c in self.terms.items()})

    # -- calculus -------------------------------------------------------------------

    def partial(self, gen: Gen) -> "RingElement":
        """Formal partial derivative with respect to one generator."""
        out: dict[Monomial, Coefficient] = {}
        for (le, gens), c in self.terms.items():
            for idx, (g, e) in enumerate(gens):
                if g == gen:
                    rest = list(gens)
                    if e == 1:
                        rest.pop(idx)
                    else:
                        rest[idx] = (g, e - 1)
                    m = (le, tuple(rest))
                    s = out.get(m, 0) + c * e
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
                    break
        return RingElement(out)

    # -- rendering and serialization ---------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "RingElement(0)"
        bits = []
        for (le, gens), c in sorted(self.terms.items())[:6]:
            gtxt = "*".join(
                (f"{_gen_name(g)}^{e}" if e > 1 else _gen_name(g)) for g, e in gens
            )
            ltxt = f"L^{le}" if le else ""
            body = "*".join(t for t in (ltxt, gtxt) if t) or "1"
            bits.append(f"({c})*{body}" if not isinstance(c, Cyclotomic) else f"({c!r})*{body}")
        tail = " + ..." if len(self.terms) > 6 else ""
        return " + ".join(bits) + tail

    def to_json(self) -> list:
        out = []
        for (le, gens), c in sorted(self.terms.items()):
            coeff = c.to_json() if isinstance(c, Cyclotomic) else str(c)
            out.append([le, [[list(g), e] for g, e in gens], coeff])
        return out

    @staticmethod
    def from_json(data: list, order: int) -> "RingElement":
        terms = {}
        for le, gens, coeff in data:
            mono = (le, tuple((tuple(g), e) for g, e in gens))
            c = Cyclotomic.from_json(order, coeff) if isinstance(coeff, list) else Fraction(coeff)
            terms[mono] = c
        return RingElement(terms)


def _gen_name(g: Gen) -> str:
    if g[0] == "A":
        _, i, j = g
        return f"A{i}" if j == 0 else f"D{j}A{i}"
    return f"C{g[1]}"


class RingContext:
    """
    Rewrite rules and evaluation for the ring of one model order n.

    Construction is purely symbolic.  Certification against genus zero series
    is a separate step (``certify_rules``) so the same context can be reused
    at different truncation orders.
    """

    def __init__(self, n: int):
        if n < 3:
            raise ValueError("n >= 3 required")
        self.n = n
        s = n // 2
        self.s = s
        self.odd = bool(n % 2)
        self.distinguished = s if self.odd else s - 1
        # admitted derivative bound per representative index
        self.admitted: dict[int, int] = {}
        for i in range(1, self.distinguished):
            self.admitted[i] = n - 2 - i
        self.admitted[self.distinguished] = 0
        self._nf: dict[tuple[int, int], RingElement] = {}
        self._base_rules: dict[int, RingElement] = {}
        self._build_rules()

    # -- generator bookkeeping ----------------------------------------------------

    def a_gens(self) -> list[Gen]:
        out = []
        for i in sorted(self.admitted):
            out += [("A", i, j) for j in range(self.admitted[i] + 1)]
        return out

    def c_index(self, i: int) -> int:
        """Canonical factor index under the palindrome C_i = C_{n+1-i}."""
        i = ((i - 1) % self.n) + 1
        return min(i, self.n + 1 - i)

    def c_gen(self, i: int) -> Gen:
        return ("C", self.c_index(i))

    def a_rep(self, i: int) -> tuple[int, int]:
        """Representative index and sign for A_i under A_{n-i} = -A_i; (0,0) when zero."""
        n = self.n
        if i % n == 0:
            return (0, 0)
        i %= n
        if not self.odd and i == self.s:
            return (0, 0)
        if i <= self.distinguished:
            return (i, 1)
        return (n - i, -1)

    def A(self, i: int) -> RingElement:
        rep, sign = self.a_rep(i)
        if sign == 0:
            return RingElement.zero()
        return RingElement.generator(("A", rep, 0), Fraction(sign))

    def Y(self) -> RingElement:
        n = self.n
        return RingElement({_ONE_MONO: Fraction(1), _mono(n): Fraction((-1) ** n, n**n)})

    def f_n(self) -> RingElement:
        """The Laurent polynomial driving the closure relation."""
        n = self.n
        pref = Fraction((-1) ** (n - 1) * comb(n + 1, 4), n ** (n + 1))
        return RingElement({_mono(n - 1): pref, _mono(2 * n - 1): pref * Fraction((-1) ** n, n**n)})

    def X_poly(self, i: int) -> RingElement:
        """X_i = DC_i / C_i expressed through A-generators: Y - L A_i + L A_{i-1}."""
        if i == 0:
            return RingElement.zero()
        return self.Y() - self.A(i).mul_L(1) + self.A(i - 1).mul_L(1)

    # -- the derivation --------------------------------------------------------------

    def derive(self, e: RingElement, free: bool = False) -> RingElement:
        """Formal D; with free=True derivatives are never rewritten (rule construction)."""
        out = RingElement.zero()
        Y = self.Y()
        for (le, gens), c in e.terms.items():
            base = RingElement({(le, gens): c})
            if le:
                out = out + base * Y * le
            for idx, (g, ex) in enumerate(gens):
                rest = list(gens)
                if ex == 1:
                    rest.pop(idx)
                else:
                    rest[idx] = (g, ex - 1)
                cof = RingElement({(le, tuple(rest)): c * ex})
                out = out + cof * self._d_gen(g, free)
        return out

    def _d_gen(self, g: Gen, free: bool) -> RingElement:
        if g[0] == "A":
            _, i, j = g
            if free or j + 1 <= self.admitted.get(i, -1):
                return RingElement.generator(("A", i, j + 1))
            return self.normal_form(i, j + 1)
        # D C_i = C_i X_i; the stored index is already canonical and
        # X is palindrome-symmetric in the same way (X_i = X_{n+1-i})
        i = g[1]
        return RingElement.generator(g) * self.X_poly(i)

    def normal_form(self, i: int, j: int) -> RingElement:
        """Normal form of D^j A_i for j beyond the admitted bound."""
        top = self.admitted[i]
        if j <= top:
            return RingElement.generator(("A", i, j))
        key = (i, j)
        if key not in self._nf:
            if j == top + 1:
                self._nf[key] = self._base_rules[i]
            else:
                self._nf[key] = self.derive(self.normal_form(i, j - 1))
        return self._nf[key]

    # -- rule construction --------------------------------------------------------------

    def _X_ladder(self, k: int, l: int) -> RingElement:
        """X_{k,l} = (D + X_k)^{l-1} X_k in the free ring; X_{k,0} = 1."""
        if l == 0:
            return RingElement.scalar(Fraction(1))
        xk = self.X_poly(k)
        t = xk
        for _ in range(l - 1):
            t = self.derive(t, free=True) + xk * t
        return t

    def _BK(self, k: int, p: int) -> RingElement:
        """B_{k,p} / K_p in the free ring, expanded through the X ladder."""
        if p > k:
            return RingElement.zero()
        if p == 1:
            return self._X_ladder(1, k - 1)
        total = RingElement.zero()
        chain = [0] * (p + 1)
        chain[1] = k

        def rec(idx: int, acc: RingElement, coeff: int):
            nonlocal total
            if idx == p:
                total = total + acc * self._X_ladder(p, chain[p] - 1) * coeff
                return
            for nxt in range(p - idx, chain[idx]):
                chain[idx + 1] = nxt
                rec(idx + 1, acc * self._X_ladder(idx, chain[idx] - 1 - nxt), coeff * comb(chain[idx] - 1, nxt))

        rec(1, RingElement.scalar(Fraction(1)), 1)
        return total

    def _build_rules(self):
        n = self.n
        limit = (n - 1) // 2
        dist = self.distinguished
        # closure relation for the distinguished generator
        rhs = self.f_n() * Fraction(-n)
        for r in range(1, limit + 1):
            rhs = rhs + (self.A(r) * self.A(r)).mul_L(1)
        for r in range(1, limit):
            rhs = rhs - RingElement.generator(("A", r, 1)) * Fraction(n - 2 * r)
        self._base_rules[dist] = rhs * Fraction(1, n - 2 * limit)

        # ladder relations eliminate the top derivative of every other representative
        for m in range(1, dist):
            rel = self._BK(n, m)
            Y = self.Y()
            for k in range(m, n):
                rel = rel + Y * self._BK(k, m) * stirling_first(n, k)
            target = ("A", m, n - 1 - m)
            coeff_elem = RingElement.zero()
            rest = RingElement.zero()
            for (le, gens), c in rel.terms.items():
                hit = [e for g, e in gens if g == target]
                if hit:
                    if hit[0] != 1:
                        raise AssertionError(f"relation not linear in {target}")
                    reduced = tuple((g, e) for g, e in gens if g != target)
                    coeff_elem = coeff_elem + RingElement({(le, reduced): c})
                else:
                    rest = rest + RingElement({(le, gens): c})
            if len(coeff_elem.terms) != 1:
                raise AssertionError(f"unexpected pivot for {target}: {coeff_elem!r}")
            (le, gens), c = next(iter(coeff_elem.terms.items()))
            if gens:
                raise AssertionError(f"pivot for {target} is not a pure L power")
            rule = rest.mul_L(-le) * (Fraction(-1) / c)
            bad = [g for g in rule.generators_used() if g[0] == "A" and g[2] > self.admitted.get(g[1], -1)]
            if bad:
                raise AssertionError(f"rule for {target} mentions inadmissible {bad}")
            self._base_rules[m] = rule

    # -- evaluation ------------------------------------------------------------------------

    def evaluator(self, data: GenusZeroData) -> "RingEvaluator":
        return RingEvaluator(self, data)


class RingEvaluator:
    """Caches generator series and maps ring elements to truncated series."""

    def __init__(self, ctx: RingContext, data: GenusZeroData):
        if data.cfg.n != ctx.n:
            raise ValueError("ring context and genus zero data disagree on n")
        self.ctx = ctx
        self.data = data
        self._gen_series: dict[Gen, Series] = {}
        self._L_pows: dict[int, Series] = {0: Series.one()}
        self._A_derivs: dict[tuple[int, int], Series] = {}

    def L_pow(self, k: int) -> Series:
        if k not in self._L_pows:
            if k > 0:
                self._L_pows[k] = self.L_pow(k - 1) * self.data.L
            else:
                self._L_pows[k] = self.L_pow(k + 1) / self.data.L
        return self._L_pows[k]

    def gen_series(self, g: Gen) -> Series:
        if g not in self._gen_series:
            if g[0] == "A":
                _, i, j = g
                s = self.data.A[i]
                for _ in range(j):
                    s = s.D()
                self._gen_series[g] = s
            else:
                self._gen_series[g] = self.data.C[g[1]]
        return self._gen_series[g]

    def eval(self, e: RingElement) -> Series:
        total = Series.zero()
        for (le, gens), c in e.terms.items():
            term = self.L_pow(le)
            for g, ex in gens:
                term = term * self.gen_series(g) ** ex
            total = total + term * c
        return total


def certify_rules(ctx: RingContext, data: GenusZeroData, depth: int = 2) -> Report:
    """
    Evaluate every rewrite rule against the genus zero series.

    ``depth`` extra derivative levels are certified beyond each base rule, which
    exercises the lazily derived normal forms as well.
    """
    ev = ctx.evaluator(data)
    rep = Report(f"rewrite rule certification (n={ctx.n}, N={data.cfg.N})")
    for i, top in sorted(ctx.admitted.items()):
        for j in range(top + 1, top + 1 + depth):
            got = ev.eval(ctx.normal_form(i, j))
            want = data.A[i].deriv_pow(j)
            d = (got - want).zero_order()
            rep.add(
                f"normal form of D^{j} A_{i}",
                d is None,
                f"first bad x-power {d}" if d is not None else f"zero through x^{int((got - want).prec) - 1}",
            )
    # D commutes with evaluation on a catalogue of small elements
    probes: list[RingElement] = [RingElement.L_power(-1)]
    for g in ctx.a_gens():
        probes.append(RingElement.generator(g))
    for i in range(1, ctx.n // 2 + 1):
        probes.append(RingElement.generator(("C", ctx.c_index(i))))
    for idx, p in enumerate(probes):
        got = ev.eval(ctx.derive(p))
        want = ev.eval(p).D()
        d = (got - want).zero_order()
        rep.add(f"derive/eval commute on probe {idx}", d is None, f"first bad x-power {d}" if d is not None else "")
    return rep


def fit_laurent_in_L(
    f: Series, L: Series, max_pole: int, max_degree: int
) -> tuple[dict[int, Coefficient], int]:
    """
    The unique Laurent polynomial p(L) with p(L(x)) = f to the available order.

    Matching ascending x-coefficients is a triangular solve because
    L^r = c^r x^r (1 + O(x^n)) for the invertible leading coefficient c.
    Returns the coefficient dict and the last checked x-order; raises
    ValueError when no polynomial with pole order <= max_pole and degree
    <= max_degree fits.
    """
    lead_base = L.first_nonzero()
    if lead_base is None or lead_base[0] != 1:
        raise ValueError("the base series must have valuation exactly 1")
    out: dict[int, Coefficient] = {}
    residual = f
    pows: dict[int, Series] = {}
    while True:
        lead = residual.first_nonzero()
        if lead is None:
            import math as _math

            return out, (-1 if _math.isinf(residual.prec) else int(residual.prec) - 1)
        e, c = lead
        if e < -max_pole:
            raise ValueError(f"pole order exceeds {max_pole} at L^{e}")
        if e > max_degree:
            raise ValueError(f"no fit with degree <= {max_degree}; residual starts at x^{e}")
        if e not in pows:
            pows[e] = L**e
        unit = pows[e].get(e)
        coeff = c * unit.inverse() if isinstance(unit, Cyclotomic) else c / unit
        out[e] = coeff
        residual = residual - pows[e] * coeff
