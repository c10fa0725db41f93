r"""
Holomorphic anomaly equations, verified as exact ring identities.

For odd n = 2s+1 and genus g >= 2 the claim is

    C_{s+1} / ((2s+1) L) d F_g / d A_s
        = (1/2) F_{g-1,2}(phi_s, phi_s)
          + (1/2) sum_{i=1}^{g-1} F_{g-i,1}(phi_s) F_{i,1}(phi_s),

and for even n = 2s

    C_{s+1} / (2s L) d F_g / d A_{s-1}
        = F_{g-1,2}(phi_{s-1}, phi_s)
          + sum_{i=1}^{g-1} F_{g-i,1}(phi_{s-1}) F_{i,1}(phi_s),

both inside C[L^{+-1}][S_n][C_{s+1}].  The right-hand potentials carry two
leg prefactors whose product collapses, through the exact identities
K_{s+1}^2 = C_{s+1} L^n (odd) and K_s K_{s+1} = C_{s+1} L^n (even), to the
same monomial C_{s+1}/L that multiplies the left side, so each theorem is
equivalent to an identity between the prefactor-free cores.  Both the
canonical-form difference and the evaluated series residual are computed;
the two checkers must agree, and the identity must hold under every
constants policy, because the proof consumes only the flatness structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .genus0 import GenusZeroData, ModelConfig
from .pmatrix import build_pmatrix
from .potentials import ContributionTables, assemble_F, audit_generators
from .report import Report
from .ring import RingContext, RingElement
from .series import Series


@dataclass
class HaeReport:
    n: int
    g: int
    parity: str
    policy: str
    lhs: RingElement
    rhs: RingElement
    difference: RingElement
    eval_residual: Series
    generator_audits: list[dict]
    status: str

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "g": self.g,
            "parity": self.parity,
            "policy": self.policy,
            "status": self.status,
            "difference_monomials": self.difference.monomial_count(),
            "eval_residual_zero": self.eval_residual.is_zero(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }


def _common_prefactor(ctx: RingContext) -> RingElement:
    """The monomial C_{s+1} / L both sides of the anomaly equation carry."""
    return RingElement({(-1, ((ctx.c_gen(ctx.s + 1), 1),)): Fraction(1)})


def prefactor_collapse_check(data: GenusZeroData) -> bool:
    """K_{Inv(c1)} K_{Inv(c2)} / L^{...} = C_{s+1}/L for the two legs of the right side."""
    n = data.cfg.n
    s = data.cfg.s
    if n % 2:
        lhs = data.K[s + 1] * data.K[s + 1]
    else:
        lhs = data.K[s] * data.K[s + 1]
    rhs = data.C[s + 1] * data.L**n
    return (lhs - rhs).zero_order() is None


def verify_hae(
    n: int,
    g: int,
    policy: str = "symplectic",
    custom_constants: list[Fraction] | None = None,
    N: int | None = None,
    tables: ContributionTables | None = None,
) -> HaeReport:
    """
    Build everything for (n, g) under one constants policy and compare both
    sides of the anomaly equation canonically and under evaluation.
    """
    if g < 2:
        raise ValueError("the anomaly equation is stated for g >= 2")
    cfg = ModelConfig(n, N or 0)
    if tables is None:
        ctx = RingContext(n)
        data = GenusZeroData.build(cfg)
        pm = build_pmatrix(ctx, data, 3 * g - 2, policy, custom_constants=custom_constants)
        tables = ContributionTables(pm)
    else:
        ctx, data = tables.ctx, tables.data
    s = cfg.s
    odd = bool(n % 2)
    dist_gen = ("A", ctx.distinguished, 0)

    Fg = assemble_F(tables, g, ())
    lhs_core = Fg.core.partial(dist_gen) * Fraction(1, n)

    legs_two = (s, s) if odd else (s - 1, s)
    F_two = assemble_F(tables, g - 1, legs_two)
    rhs_core = F_two.core
    one_left = {}
    one_right = {}
    for i in range(1, g):
        ca = s if odd else s - 1
        if (g - i) not in one_left:
            one_left[g - i] = assemble_F(tables, g - i, (ca,))
        if i not in one_right:
            one_right[i] = assemble_F(tables, i, (s,))
        rhs_core = rhs_core + one_left[g - i].core * one_right[i].core
    if odd:
        rhs_core = rhs_core * Fraction(1, 2)

    pref = _common_prefactor(ctx)
    lhs = pref * lhs_core
    rhs = pref * rhs_core
    difference = lhs - rhs

    ev = ctx.evaluator(data)
    lhs_series = ev.eval(lhs)
    rhs_series = ev.eval(rhs)
    eval_residual = lhs_series - rhs_series

    canonical_zero = difference.is_zero()
    # a vacuous zero (no surviving precision) must not count as a pass
    eval_zero = eval_residual.is_zero() and eval_residual.prec >= 2 * n
    collapse_ok = prefactor_collapse_check(data)
    if canonical_zero and eval_zero and collapse_ok:
        status = "verified"
    elif canonical_zero != eval_zero:
        status = "checker-disagreement"
    else:
        status = "failed"

    audits = [
        audit_generators(tables, Fg),
        audit_generators(tables, F_two),
    ] + [audit_generators(tables, p) for p in list(one_left.values()) + list(one_right.values())]

    return HaeReport(
        n,
        g,
        cfg.parity,
        policy,
        lhs,
        rhs,
        difference,
        eval_residual,
        audits,
        status,
    )


def verify_hae_odd(n: int, g: int, **kw) -> HaeReport:
    if n % 2 == 0 or n < 3:
        raise ValueError("odd n >= 3 required")
    return verify_hae(n, g, **kw)


def verify_hae_even(n: int, g: int, **kw) -> HaeReport:
    if n % 2 or n < 4:
        raise ValueError("even n >= 4 required")
    return verify_hae(n, g, **kw)


def verify_finite_generation(tables: ContributionTables, g: int, insertions: tuple[int, ...]) -> Report:
    """
    Assemble one potential and audit its generator content: the core may use
    A-generators and L powers only, the prefactor C-generators only, and no
    vertex factor may leave the Laurent ring in L.
    """
    pot = assemble_F(tables, g, insertions)
    audit = audit_generators(tables, pot)
    rep = Report(f"finite generation (g={g}, insertions={insertions})")
    rep.add("core inside C[L^(+-1)][S_n]", audit["core_ok"], str(audit["core_gens"]))
    rep.add("prefactor inside C[C_n]", audit["prefactor_ok"], str(audit["prefactor_gens"]))
    rep.add("vertex factors are Laurent in L", audit["vertex_ok"])
    return rep


def verify_hae_policies(
    n: int, g: int, policies: list[str] | None = None, N: int | None = None
) -> tuple[Report, list[HaeReport]]:
    """Run the anomaly equation under several constants policies and compare."""
    if policies is None:
        policies = ["symplectic", "zero", "custom"]
    rep = Report(f"holomorphic anomaly equation (n={n}, g={g})")
    results = []
    for pol in policies:
        custom = [Fraction(1, k + 1) for k in range(3 * g - 2)] if pol == "custom" else None
        r = verify_hae(n, g, policy=pol, custom_constants=custom, N=N)
        results.append(r)
        rep.add(f"policy {pol}: exact identity", r.verified, r.status)
        for a in r.generator_audits:
            if not (a["core_ok"] and a["prefactor_ok"] and a["vertex_ok"]):
                rep.add(f"policy {pol}: finite generation audit", False, str(a))
                break
        else:
            rep.add(f"policy {pol}: finite generation audit", True)
    rep.add("status independent of policy", len({r.status for r in results}) == 1)
    return rep, results
