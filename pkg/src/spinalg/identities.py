"""Registry of gamma-matrix and spinor identities, verified exactly.

Dimension-generic identities run for every D in 2..10 over all admissible
index/parameter values; D=4-specific ones use the canonical Weyl basis.
Heavy index enumerations work on the monomial form of gamma products, so a
full `verify_all` stays well inside interactive time.

Conventions that the checks pin down (each recorded in the reports):

* epsilon tensor: eps^{0123} = +1 (with the metric mostly-plus, lowering
  gives eps_{0123} = -1);
* the block contraction Gamma^{A B} Gamma_B carries the prefactor
  (-1)^(s(s+1)/2) (D-r)!/(D-r-s)! for same-order lower indices -- the
  (-1)^r sometimes quoted fails its own r=0, s=1 specialization;
* the dual-form identities at D=4 need the normalizations determined here
  by exact computation (see the individual runners).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .clifford import Signature, perm_sign
from .conjugation import ConjugationData, charge_conj, t_parameter
from .exactnum import ExactMatrix, GaussianRational, I, ONE, ZERO, gr
from .gammarep import GammaRep, MonomialMatrix, build_gamma, gamma5, gamma_anti
from .matform import (
    MatForm,
    basis_two_form,
    bilinear_form,
    gamma_bracket,
    gamma_form,
    gamma_power,
    matrix_action,
    so_action,
    two_form_components,
)
from .superalg import GeneratorPool, SuperElement, SuperSpinor, generic_majorana

GENERIC_DIMS = range(2, 11)

# Levi-Civita normalization: eps^{0123} = +1.  The sibling convention
# (eps_{0123} = +1, i.e. eps^{0123} = -1) flips the sign of every epsilon
# term; the dual-form runners below record how the sources' literal signs
# fare under each.
EPSILON_UPPER_0123 = 1


def eps_upper(indices) -> int:
    return EPSILON_UPPER_0123 * perm_sign(indices)


@dataclass
class IdentityReport:
    identity: str
    dim: int
    passed: bool
    witness: str = ""
    note: str = ""

    def to_json(self):
        return {
            "identity": self.identity,
            "dim": self.dim,
            "passed": self.passed,
            "witness": self.witness,
            "note": self.note,
        }

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        extra = f"  [{self.note}]" if self.note else ""
        tail = f"  witness: {self.witness}" if (self.witness and not self.passed) else ""
        return f"{status}  {self.identity} (D={self.dim}){extra}{tail}"


class UnknownIdentityError(KeyError):
    pass


class InapplicableDimensionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Monomial accumulator helpers
# ---------------------------------------------------------------------------

def _dacc_add(acc: dict, mono: MonomialMatrix, scale):
    for i in range(mono.n):
        key = (i, mono.perm[i])
        v = scale * mono.vals[i]
        acc[key] = acc[key] + v if key in acc else v


def _dacc_is_zero(acc: dict) -> bool:
    return all(v.is_zero() for v in acc.values())


def _upper_mono(rep: GammaRep, a: int) -> tuple[GaussianRational, MonomialMatrix]:
    return gr(rep.eta(a)), rep.blade_monomial(1 << a)


def _multi_upper(rep: GammaRep, indices):
    """(coefficient, blade monomial) of Gamma^{a1..an}, or None when zero."""
    sign = perm_sign(indices)
    if sign == 0:
        return None
    mask = 0
    coeff = sign
    for a in indices:
        mask |= 1 << a
        coeff *= rep.eta(a)
    return gr(coeff), rep.blade_monomial(mask)


def _multi_lower(rep: GammaRep, indices):
    sign = perm_sign(indices)
    if sign == 0:
        return None
    mask = 0
    for a in indices:
        mask |= 1 << a
    return gr(sign), rep.blade_monomial(mask)


# ---------------------------------------------------------------------------
# Dimension-generic contraction identities
# ---------------------------------------------------------------------------

def _run_gg(D: int) -> IdentityReport:
    rep = build_gamma(D)
    acc: dict = {}
    for a in range(D):
        ca, ma = _upper_mono(rep, a)
        _dacc_add(acc, ma.compose(ma), ca)
    for i in range(rep.size):
        acc[(i, i)] = acc.get((i, i), ZERO) + gr(D)
    ok = _dacc_is_zero(acc)
    return IdentityReport("gg-contraction", D, ok, "" if ok else "sum != -D Id")


def _run_g1g(D: int) -> IdentityReport:
    rep = build_gamma(D)
    for b in range(D):
        cb, mb = _upper_mono(rep, b)
        acc: dict = {}
        for a in range(D):
            ca, ma = _upper_mono(rep, a)
            _dacc_add(acc, ma.compose(mb).compose(ma), ca * cb)
        _dacc_add(acc, mb, cb * gr(-(D - 2)))
        if not _dacc_is_zero(acc):
            return IdentityReport("g1g-contraction", D, False, f"b={b}")
    return IdentityReport("g1g-contraction", D, True)


def _run_g2g(D: int) -> IdentityReport:
    rep = build_gamma(D)
    for b, c in product(range(D), repeat=2):
        cb, mb = _upper_mono(rep, b)
        cc, mc = _upper_mono(rep, c)
        mid = mb.compose(mc)
        acc: dict = {}
        for a in range(D):
            ca, ma = _upper_mono(rep, a)
            _dacc_add(acc, ma.compose(mid).compose(ma), ca * cb * cc)
        _dacc_add(acc, mid, cb * cc * gr(-(4 - D)))
        if b == c:
            eta_bc = gr(-4 * rep.eta(b))
            for i in range(rep.size):
                acc[(i, i)] = acc.get((i, i), ZERO) + eta_bc
        if not _dacc_is_zero(acc):
            return IdentityReport("g2g-contraction", D, False, f"(b,c)=({b},{c})")
    return IdentityReport("g2g-contraction", D, True)


def _run_g3g(D: int) -> IdentityReport:
    rep = build_gamma(D)
    singles = [_upper_mono(rep, a) for a in range(D)]
    for b, c, d in product(range(D), repeat=3):
        cb, mb = singles[b]
        cc, mc = singles[c]
        cd, md = singles[d]
        mid = mb.compose(mc).compose(md)
        cmid = cb * cc * cd
        acc: dict = {}
        for a in range(D):
            ca, ma = singles[a]
            _dacc_add(acc, ma.compose(mid).compose(ma), ca * cmid)
        _dacc_add(acc, mid, cmid * gr(-(D - 6)))
        if c == d:
            _dacc_add(acc, mb, cb * gr(4 * rep.eta(c)))
        if b == c:
            _dacc_add(acc, md, cd * gr(4 * rep.eta(b)))
        if b == d:
            _dacc_add(acc, mc, cc * gr(-4 * rep.eta(b)))
        if not _dacc_is_zero(acc):
            return IdentityReport("g3g-contraction", D, False, f"(b,c,d)=({b},{c},{d})")
    return IdentityReport("g3g-contraction", D, True)


def _run_multi_split(D: int) -> IdentityReport:
    """Gamma^{a1..ar} = 1/2 (Gamma^{a1} Gamma^{a2..ar} - (-1)^r Gamma^{a2..ar} Gamma^{a1})."""
    rep = build_gamma(D)
    half = gr(Fraction(1, 2))
    for r in range(1, D + 1):
        for rest in combinations(range(D), r - 1):
            tail = _multi_upper(rep, list(rest))
            for a1 in range(D):
                acc: dict = {}
                lhs = _multi_upper(rep, [a1] + list(rest))
                if lhs is not None:
                    _dacc_add(acc, lhs[1], lhs[0])
                if tail is not None:
                    c1, m1 = _upper_mono(rep, a1)
                    ct, mt = tail
                    sgn = gr(-((-1) ** r))
                    _dacc_add(acc, m1.compose(mt), -half * c1 * ct)
                    _dacc_add(acc, mt.compose(m1), -half * sgn * ct * c1)
                if not _dacc_is_zero(acc):
                    return IdentityReport(
                        "multi-index-split", D, False, f"a1={a1}, rest={rest}"
                    )
    return IdentityReport("multi-index-split", D, True)


def _run_multi_contraction(D: int) -> IdentityReport:
    """Gamma^a Gamma^{A_r} Gamma_a = (-1)^(r+1) (D-2r) Gamma^{A_r}."""
    rep = build_gamma(D)
    for r in range(0, D + 1):
        coeff = gr(((-1) ** (r + 1)) * (D - 2 * r))
        for A in combinations(range(D), r):
            cA, mA = _multi_upper(rep, list(A))
            acc: dict = {}
            for a in range(D):
                ca, ma = _upper_mono(rep, a)
                _dacc_add(acc, ma.compose(mA).compose(ma), ca * cA)
            _dacc_add(acc, mA, -coeff * cA)
            if not _dacc_is_zero(acc):
                return IdentityReport("multi-contraction", D, False, f"A={A}")
    return IdentityReport("multi-contraction", D, True)


def _run_block_contraction(D: int) -> IdentityReport:
    """Gamma^{A_r B_s} Gamma_{B_s} = (-1)^(s(s+1)/2) (D-r)!/(D-r-s)! Gamma^{A_r}.

    Summed over ordered dummy tuples; collapsed to sorted sets times s!.
    """
    rep = build_gamma(D)
    note = "sign (-1)^(s(s+1)/2); the (-1)^r prefactor fails at (r,s)=(0,1)"
    fact = [1] * (D + 1)
    for i in range(1, D + 1):
        fact[i] = fact[i - 1] * i
    for r in range(0, D + 1):
        for s in range(0, D - r + 1):
            sign = (-1) ** ((s * (s + 1) // 2) % 2)
            coeff = gr(sign * fact[D - r] // fact[D - r - s])
            sfact = gr(fact[s])
            for A in combinations(range(D), r):
                cA, mA = _multi_upper(rep, list(A))
                acc: dict = {}
                complement = [x for x in range(D) if x not in A]
                for B in combinations(complement, s):
                    up = _multi_upper(rep, list(A) + list(B))
                    lo = _multi_lower(rep, list(B))
                    _dacc_add(acc, up[1].compose(lo[1]), sfact * up[0] * lo[0])
                _dacc_add(acc, mA, -coeff * cA)
                if not _dacc_is_zero(acc):
                    return IdentityReport(
                        "block-contraction", D, False, f"(r,s)=({r},{s}), A={A}", note
                    )
    return IdentityReport("block-contraction", D, True, "", note)


# ---------------------------------------------------------------------------
# D=4 identities
# ---------------------------------------------------------------------------

def _run_d4_g3g(D: int) -> IdentityReport:
    rep = build_gamma(4)
    for b, c, d in product(range(4), repeat=3):
        lhs = ExactMatrix.zeros(4, 4)
        gb, gc, gd = (rep.gamma_upper(x) for x in (b, c, d))
        for a in range(4):
            ga = rep.gamma_upper(a)
            gal = rep.gamma_lower(a)
            lhs = lhs + ga.mul(gb).mul(gc).mul(gd).mul(gal)
        rhs = gd.mul(gc).mul(gb).scale(gr(2))
        if lhs != rhs:
            return IdentityReport("d4-g3g-contraction", 4, False, f"({b},{c},{d})")
    return IdentityReport("d4-g3g-contraction", 4, True)


def _run_d4_triple(D: int) -> IdentityReport:
    rep = build_gamma(4)
    g5 = gamma5(rep)
    for a, b, c in product(range(4), repeat=3):
        lhs = rep.gamma_upper(a).mul(rep.gamma_upper(b)).mul(rep.gamma_upper(c))
        rhs = ExactMatrix.zeros(4, 4)
        if a == b:
            rhs = rhs - rep.gamma_upper(c).scale(gr(rep.eta(a)))
        if b == c:
            rhs = rhs - rep.gamma_upper(a).scale(gr(rep.eta(b)))
        if a == c:
            rhs = rhs + rep.gamma_upper(b).scale(gr(rep.eta(a)))
        for d in range(4):
            e = eps_upper([d, a, b, c])
            if e:
                rhs = rhs + rep.gamma_lower(d).mul(g5).scale(I * gr(e))
        if lhs != rhs:
            return IdentityReport("d4-triple-product", 4, False, f"({a},{b},{c})")
    return IdentityReport(
        "d4-triple-product", 4, True, "", "literal form under eps^{0123} = +1"
    )


def _run_d4_dual2(D: int) -> IdentityReport:
    """gamma5 gamma^{cd} = sign * (i/2) eps^{abcd} gamma_{ab}; sign found exactly."""
    rep = build_gamma(4)
    g5 = gamma5(rep)
    holding = None
    for sign in (1, -1):
        ok = True
        for c, d in product(range(4), repeat=2):
            lhs = g5.mul(gamma_anti(rep, [c, d], upper=True))
            rhs = ExactMatrix.zeros(4, 4)
            for a, b in product(range(4), repeat=2):
                e = eps_upper([a, b, c, d])
                if e:
                    rhs = rhs + gamma_anti(rep, [a, b]).scale(gr(e))
            rhs = rhs.scale(I * gr(Fraction(sign, 2)))
            if lhs != rhs:
                ok = False
                break
        if ok:
            if holding is not None:
                return IdentityReport("d4-dual-two-form", 4, False, "both signs hold")
            holding = sign
    if holding is None:
        return IdentityReport("d4-dual-two-form", 4, False, "neither sign holds")
    note = (
        f"holds with sign {holding:+d} under eps^{{0123}} = +1; "
        "the quoted -i/2 corresponds to the eps_{0123} = +1 convention"
    )
    return IdentityReport("d4-dual-two-form", 4, True, "", note)


def _run_d4_dual3(D: int) -> IdentityReport:
    """gamma^a gamma5 = c * eps^{abcd} gamma_{bcd}; normalization c found exactly."""
    rep = build_gamma(4)
    g5 = gamma5(rep)
    candidates = {
        "i": I,
        "-i": -I,
        "i/6": I * gr(Fraction(1, 6)),
        "-i/6": -I * gr(Fraction(1, 6)),
    }
    holding = []
    for label, cval in candidates.items():
        ok = True
        for a in range(4):
            lhs = rep.gamma_upper(a).mul(g5)
            rhs = ExactMatrix.zeros(4, 4)
            for b, c, d in product(range(4), repeat=3):
                e = eps_upper([a, b, c, d])
                if e:
                    rhs = rhs + gamma_anti(rep, [b, c, d]).scale(gr(e))
            rhs = rhs.scale(cval)
            if lhs != rhs:
                ok = False
                break
        if ok:
            holding.append(label)
    if len(holding) != 1:
        return IdentityReport("d4-dual-three-form", 4, False, f"holding={holding}")
    note = (
        f"normalization {holding[0]} under eps^{{0123}} = +1 "
        "(a 1/3! relative to the bare i is required either way)"
    )
    return IdentityReport("d4-dual-three-form", 4, True, "", note)


# ---------------------------------------------------------------------------
# Bracket identities on matrix-valued forms
# ---------------------------------------------------------------------------

def _ifact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _upc(rep: GammaRep, mask: int) -> int:
    """Product of eta factors raising the indices of a blade."""
    out = 1
    a = 0
    while mask:
        if mask & 1:
            out *= rep.eta(a)
        mask >>= 1
        a += 1
    return out


def _iota_sign(a: int, mask: int, sig: Signature) -> int:
    """Coefficient of [v_a, v_mask] on v_(mask without a)."""
    below = (mask & ((1 << a) - 1)).bit_count()
    return (-1 if below & 1 else 1) * sig.eta(a)


def _wedge_sign(x: int, y: int) -> int:
    from .clifford import reorder_sign

    return reorder_sign(x, y)


def _run_bracket_left(D: int) -> IdentityReport:
    """[v_a, Gamma^N] = N [v_a, Gamma] Gamma^{N-1} + N(N-1) v_a Gamma^{N-2}.

    Gamma^N = N! sum_{|S|=N} Gamma^{S} v_S with monomial coefficients, so
    both sides are compared blade-by-blade as short monomial sums.
    """
    rep = build_gamma(D)
    sig = rep.sig
    ga = rep.blade_monomial  # blade mask -> monomial product of lower gammas
    for N in range(2, D + 1):
        fN, fN1, fN2 = _ifact(N), _ifact(N - 1), _ifact(N - 2)
        for a in range(D):
            abit = 1 << a
            for T in combinations(range(D), N - 1):
                tmask = 0
                for x in T:
                    tmask |= 1 << x
                acc: dict = {}
                if not tmask & abit:
                    smask = tmask | abit
                    c = fN * _upc(rep, smask) * _iota_sign(a, smask, sig)
                    _dacc_add(acc, ga(smask), gr(c))
                # N * Gamma_a Gamma^{N-1}
                c1 = N * fN1 * _upc(rep, tmask)
                _dacc_add(acc, ga(abit).compose(ga(tmask)), gr(-c1))
                # N(N-1) v_a ^ Gamma^{N-2}
                if tmask & abit:
                    u = tmask & ~abit
                    c2 = (
                        N * (N - 1) * fN2 * _upc(rep, u) * _wedge_sign(abit, u)
                    )
                    _dacc_add(acc, ga(u), gr(-c2))
                if not _dacc_is_zero(acc):
                    return IdentityReport(
                        "bracket-power-left", D, False, f"N={N}, a={a}, T={T}"
                    )
    return IdentityReport("bracket-power-left", D, True)


def _run_bracket_right(D: int) -> IdentityReport:
    """[v_a, Gamma^N] = (-1)^(N-1) (N Gamma^{N-1} Gamma_a + N(N-1) Gamma^{N-2} v_a)."""
    rep = build_gamma(D)
    sig = rep.sig
    ga = rep.blade_monomial
    for N in range(2, D + 1):
        fN, fN1, fN2 = _ifact(N), _ifact(N - 1), _ifact(N - 2)
        sgn = (-1) ** (N - 1)
        for a in range(D):
            abit = 1 << a
            for T in combinations(range(D), N - 1):
                tmask = 0
                for x in T:
                    tmask |= 1 << x
                acc: dict = {}
                if not tmask & abit:
                    smask = tmask | abit
                    c = fN * _upc(rep, smask) * _iota_sign(a, smask, sig)
                    _dacc_add(acc, ga(smask), gr(c))
                c1 = sgn * N * fN1 * _upc(rep, tmask)
                _dacc_add(acc, ga(tmask).compose(ga(abit)), gr(-c1))
                if tmask & abit:
                    u = tmask & ~abit
                    c2 = (
                        sgn * N * (N - 1) * fN2 * _upc(rep, u) * _wedge_sign(u, abit)
                    )
                    _dacc_add(acc, ga(u), gr(-c2))
                if not _dacc_is_zero(acc):
                    return IdentityReport(
                        "bracket-power-right", D, False, f"N={N}, a={a}, T={T}"
                    )
    return IdentityReport("bracket-power-right", D, True)


def _run_bracket_mixed(D: int) -> IdentityReport:
    """[v_a, Gamma] Gamma^N - (-1)^N Gamma^N [v_a, Gamma] = -2N v_a Gamma^{N-1}."""
    rep = build_gamma(D)
    ga = rep.blade_monomial
    for N in range(1, D + 1):
        fN, fN1 = _ifact(N), _ifact(N - 1)
        sgn = (-1) ** N
        for a in range(D):
            abit = 1 << a
            for T in combinations(range(D), N):
                tmask = 0
                for x in T:
                    tmask |= 1 << x
                acc: dict = {}
                c = fN * _upc(rep, tmask)
                _dacc_add(acc, ga(abit).compose(ga(tmask)), gr(c))
                _dacc_add(acc, ga(tmask).compose(ga(abit)), gr(-sgn * c))
                if tmask & abit:
                    u = tmask & ~abit
                    c2 = 2 * N * fN1 * _upc(rep, u) * _wedge_sign(abit, u)
                    _dacc_add(acc, ga(u), gr(c2))
                if not _dacc_is_zero(acc):
                    return IdentityReport(
                        "bracket-mixed-commutator", D, False, f"N={N}, a={a}, T={T}"
                    )
    return IdentityReport("bracket-mixed-commutator", D, True)


def _run_theta_square(D: int) -> IdentityReport:
    """[Gamma, Theta] Gamma^2 - Gamma^2 [Gamma, Theta] = 4N Gamma Theta.

    Linear in Theta, so one basis blade at a time suffices; the coefficient
    parity cancels from all three normal-ordered terms, which is exercised
    with live odd/even symbolic coefficients in `theta_square_super` (and
    the MatForm route cross-checks this monomial evaluation at small D).
    """
    rep = build_gamma(D)
    sig = rep.sig
    ga = rep.blade_monomial
    two_subsets = list(combinations(range(D), 2))
    for N in range(1, D + 1):
        for S in combinations(range(D), N):
            smask = 0
            for x in S:
                smask |= 1 << x
            # [Gamma, v_S] = sum_{a in S} iota-sign * Gamma^a (x) v_{S-a}
            lhs: dict[int, dict] = {}
            for a in S:
                abit = 1 << a
                u = smask & ~abit
                ca = _iota_sign(a, smask, sig) * rep.eta(a)
                mono_a = ga(abit)
                for (t1, t2) in two_subsets:
                    tmask = (1 << t1) | (1 << t2)
                    if tmask & u:
                        continue
                    w = u | tmask
                    ct = 2 * _upc(rep, tmask)
                    d = lhs.setdefault(w, {})
                    _dacc_add(
                        d,
                        mono_a.compose(ga(tmask)),
                        gr(ca * ct * _wedge_sign(u, tmask)),
                    )
                    _dacc_add(
                        d,
                        ga(tmask).compose(mono_a),
                        gr(-ca * ct * _wedge_sign(tmask, u)),
                    )
            # RHS: 4N Gamma ^ v_S
            for c in range(D):
                cbit = 1 << c
                if cbit & smask:
                    continue
                w = smask | cbit
                d = lhs.setdefault(w, {})
                _dacc_add(
                    d,
                    ga(cbit),
                    gr(-4 * N * rep.eta(c) * _wedge_sign(cbit, smask)),
                )
            for w, d in lhs.items():
                if not _dacc_is_zero(d):
                    return IdentityReport(
                        "bracket-theta-square", D, False, f"S={S}, blade={w}"
                    )
    return IdentityReport("bracket-theta-square", D, True)


def bracket_power_left_matform(rep: GammaRep, N: int, a: int) -> bool:
    """MatForm route for the same statement; cross-check at small D."""
    GN = gamma_power(rep, N)
    ga = MatForm.from_matrix(rep.sig, rep.gamma_lower(a))
    va = MatForm.scalar_blade(rep.sig, rep.size, 1 << a)
    rhs = ga.mul(gamma_power(rep, N - 1)).scale(gr(N)) + va.mul(
        gamma_power(rep, N - 2)
    ).scale(gr(N * (N - 1)))
    return GN.bracket(a) == rhs


def theta_square_matform(rep: GammaRep, mask: int) -> bool:
    """MatForm route for the Theta identity on one basis blade."""
    from .clifford import popcount

    N = popcount(mask)
    G = gamma_form(rep)
    G2 = gamma_power(rep, 2)
    theta = MatForm.scalar_blade(rep.sig, rep.size, mask)
    br = gamma_bracket(rep, theta)
    lhs = br.mul(G2) - G2.mul(br)
    return lhs == G.mul(theta).scale(gr(4 * N))


def theta_square_super(rep: GammaRep, N: int, parity: int) -> bool:
    """Theta with fresh symbolic coefficients of the given parity (D=4 scale)."""
    pool = GeneratorPool()
    G = gamma_form(rep)
    G2 = gamma_power(rep, 2)
    terms = {}
    for S in combinations(range(rep.D), N):
        mask = 0
        for x in S:
            mask |= 1 << x
        sym = pool.odd(f"t{mask}") if parity else pool.even(f"t{mask}")
        terms[mask] = ExactMatrix.scalar(rep.size, sym)
    theta = MatForm(rep.sig, rep.size, terms)
    br = gamma_bracket(rep, theta)
    lhs = br.mul(G2) - G2.mul(br)
    rhs = G.mul(theta).scale(gr(4 * N))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Flip laws and the spin-action bilinear (D=4, Majorana)
# ---------------------------------------------------------------------------

def _majorana_pair(parities, rep, conj):
    pool = GeneratorPool()
    spinors = [
        generic_majorana(f"s{i}", p, conj, rep, pool) for i, p in enumerate(parities)
    ]
    return pool, spinors


def _d4_context():
    rep = build_gamma(4)
    return rep, charge_conj(rep, -1)


def flip_law_residual(N: int, pc: int, pp: int, rep: GammaRep, conj: ConjugationData) -> MatForm:
    """chibar Gamma^N psi + t_N (-1)^(N(|psi|+|chi|)+|psi||chi|) psibar Gamma^N chi."""
    _, (chi, psi) = _majorana_pair([pc, pp], rep, conj)
    GN = gamma_power(rep, N)
    lhs = bilinear_form(chi, GN, psi, rep)
    sign = t_parameter(N) * (-1) ** ((N * (pp + pc) + pp * pc) % 2)
    rhs = bilinear_form(psi, GN, chi, rep).scale(gr(sign))
    return lhs + rhs


def _run_flip_laws(D: int) -> IdentityReport:
    rep, conj = _d4_context()
    for N in range(0, 5):
        for pc, pp in product((0, 1), repeat=2):
            if not flip_law_residual(N, pc, pp, rep, conj).is_zero():
                return IdentityReport(
                    "majorana-flip-laws", 4, False, f"N={N}, parities=({pc},{pp})"
                )
    return IdentityReport("majorana-flip-laws", 4, True, "", "N=0..4, all parity pairs")


def spin_action_matrix(rep: GammaRep, alpha: MatForm) -> ExactMatrix:
    """-(1/4) alpha^{ab} Gamma_ab, the spin action of a 2-form on spinors."""
    comps = two_form_components(alpha)
    acc = ExactMatrix.zeros(rep.size, rep.size)
    quarter = gr(Fraction(-1, 4))
    for (a, b), c in comps.items():
        acc = acc + gamma_anti(rep, [a, b]).scale(quarter * c)
    return acc


def double_bracket_matrix(rep: GammaRep, alpha: MatForm) -> ExactMatrix:
    """Gamma^a Gamma^b [v_a, [v_b, alpha]] contracted to a plain matrix."""
    acc = ExactMatrix.zeros(rep.size, rep.size)
    for b in range(rep.D):
        inner = alpha.bracket(b)
        for a in range(rep.D):
            scalar_form = inner.bracket(a)
            c = scalar_form.terms.get(0)
            if c is None:
                continue
            coeff = c.data[0][0]
            acc = acc + rep.gamma_upper(a).mul(rep.gamma_upper(b)).scale(coeff)
    return acc


def _run_spin_action_bilinear(D: int) -> IdentityReport:
    """chibar gamma^3 [alpha, psi] = 3 chibar gamma alpha psi
    + s (-1)^(|alpha|) (1/2) chibar [alpha, gamma^3]_V psi, s fixed by computation.
    """
    rep, conj = _d4_context()
    G = gamma_form(rep)
    G3 = gamma_power(rep, 3)
    holding = set()
    for ap in (0, 1):
        for pc, pp in product((0, 1), repeat=2):
            pool = GeneratorPool()
            chi = generic_majorana("c", pc, conj, rep, pool)
            psi = generic_majorana("p", pp, conj, rep, pool)
            terms = {}
            for a, b in combinations(range(4), 2):
                sym = pool.odd(f"a{a}{b}") if ap else pool.even(f"a{a}{b}")
                alpha_ab = basis_two_form(rep.sig, rep.size, a, b, sym)
                terms = (MatForm(rep.sig, rep.size, terms) + alpha_ab).terms
            alpha = MatForm(rep.sig, rep.size, terms)
            action = spin_action_matrix(rep, alpha)
            lhs = bilinear_form(
                chi, G3.mul(MatForm.from_matrix(rep.sig, action)), psi, rep
            )
            rhs1 = bilinear_form(chi, G.mul(alpha), psi, rep).scale(gr(3))
            rhs2 = bilinear_form(chi, so_action(alpha, G3), psi, rep).scale(
                gr(Fraction(1, 2))
            )
            matches = set()
            for s0 in (1, -1):
                s = s0 * (-1) ** ap
                if (lhs - rhs1 - rhs2.scale(gr(s))).is_zero():
                    matches.add(s0)
            if len(matches) != 1:
                return IdentityReport(
                    "d4-spin-action-bilinear",
                    4,
                    False,
                    f"|alpha|={ap}, parities=({pc},{pp}), matches={sorted(matches)}",
                )
            holding.add(matches.pop())
    if len(holding) != 1:
        return IdentityReport(
            "d4-spin-action-bilinear", 4, False, f"inconsistent signs {sorted(holding)}"
        )
    s0 = holding.pop()
    reading = "(-1)^|alpha|" if s0 == 1 else "-(-1)^|alpha|"
    return IdentityReport(
        "d4-spin-action-bilinear", 4, True, "",
        f"holding sign reading: {reading}; tested both, exactly one holds",
    )


# ---------------------------------------------------------------------------
# Gamma-basis expansion (even D)
# ---------------------------------------------------------------------------

def expand_in_gamma_basis(M: ExactMatrix, rep: GammaRep) -> dict[tuple, GaussianRational]:
    """Coefficients m_A with M = sum_A m_A Gamma^{[A]} (even D only).

    m_A = (-1)^|A| 2^{-k} Tr(M Gamma_{[A]}), where Gamma_{[A]} carries the
    lower indices in reversed order (that ordering makes the trace pairing
    orthonormal up to the (-1)^|A|).
    """
    if rep.D % 2:
        raise InapplicableDimensionError("gamma basis completeness needs even D")
    if M.rows != rep.size or M.cols != rep.size:
        raise ValueError("matrix size mismatch")
    out = {}
    inv = gr(Fraction(1, rep.size))
    for r in range(rep.D + 1):
        sign = gr((-1) ** r)
        for A in combinations(range(rep.D), r):
            low = _multi_lower(rep, list(reversed(A)))
            c, mono = low
            t = ZERO
            for j in range(rep.size):
                i = mono.perm[j]
                e = M.data[i][j]
                if not e.is_zero():
                    t = t + e * mono.vals[j]
            coeff = sign * inv * c * t
            if not coeff.is_zero():
                out[A] = coeff
    return out


def reconstruct_from_gamma_basis(coeffs: dict, rep: GammaRep) -> ExactMatrix:
    acc = ExactMatrix.zeros(rep.size, rep.size)
    for A, c in coeffs.items():
        acc = acc + gamma_anti(rep, list(A), upper=True).scale(c)
    return acc


# ---------------------------------------------------------------------------
# Fierz machinery (D=4)
# ---------------------------------------------------------------------------

def fierz_check(variant: str, parities=None) -> IdentityReport:
    rep, conj = _d4_context()
    if variant == "base":
        return _fierz_base(rep, conj)
    if variant == "rearr1":
        return _fierz_rearr(rep, conj, parities, first=True)
    if variant == "rearr2":
        return _fierz_rearr(rep, conj, parities, first=False)
    if variant == "lemma":
        return _fierz_lemma(rep, conj)
    raise UnknownIdentityError(variant)


def _fierz_base(rep, conj) -> IdentityReport:
    """(C gamma^a)_{alpha(beta} (C gamma_a)_{rho delta)} = 0, all index tuples."""
    n = rep.size
    CG_up = [conj.C.mul(rep.gamma_upper(a)) for a in range(4)]
    CG_lo = [conj.C.mul(rep.gamma_lower(a)) for a in range(4)]
    for al, be, ro, de in product(range(n), repeat=4):
        tot = ZERO
        for a in range(4):
            tot = tot + (
                CG_up[a].data[al][be] * CG_lo[a].data[ro][de]
                + CG_up[a].data[al][ro] * CG_lo[a].data[be][de]
                + CG_up[a].data[al][de] * CG_lo[a].data[be][ro]
            )
        if not tot.is_zero():
            return IdentityReport(
                "fierz-base", 4, False, f"indices ({al},{be},{ro},{de})"
            )
    return IdentityReport("fierz-base", 4, True, "", "all 4^4 index tuples")


def _fierz_rearr(rep, conj, parities, first: bool) -> IdentityReport:
    """The two rearrangements of lbar1 g^3 l2 lbar3 g l4.

    The second one holds with its quoted signs.  For the first, the engine
    tests both global signs of the right-hand side and asserts exactly one
    holds: it is the opposite of the quoted one, uniformly over all sixteen
    parity assignments (consistent with the quoted intermediate
    normal-ordering steps, which this package reproduces sign-for-sign).
    """
    if parities is None or len(parities) != 4:
        raise ValueError("rearrangement variants need four parities")
    p1, p2, p3, p4 = parities
    pool = GeneratorPool()
    l1, l2, l3, l4 = (
        generic_majorana(f"l{i}", p, conj, rep, pool)
        for i, p in enumerate((p1, p2, p3, p4))
    )
    G = gamma_form(rep)
    G3 = gamma_power(rep, 3)

    def prod(sa, A, sb, B, XA, XB):
        return bilinear_form(sa, XA, A, rep).mul(bilinear_form(sb, XB, B, rep))

    lhs = prod(l1, l2, l3, l4, G3, G)
    sign_a = gr((-1) ** (p2 * p3))
    sign_b = gr((-1) ** ((p4 * (p2 + p3 + 1) + p3) % 2))
    name = "fierz-rearrangement-1" if first else "fierz-rearrangement-2"
    if first:
        rhs = prod(l1, l3, l2, l4, G, G3).scale(sign_a) + prod(
            l1, l4, l2, l3, G, G3
        ).scale(sign_b)
        matches = [s for s in (1, -1) if (lhs - rhs.scale(gr(s))).is_zero()]
        if matches == [-1]:
            return IdentityReport(
                name, 4, True, "",
                "holds with a global -1 relative to the quoted signs "
                "(tested both, exactly one holds)",
            )
        return IdentityReport(
            name, 4, False, f"parities={tuple(parities)}, matches={matches}"
        )
    rhs = -(
        prod(l1, l3, l2, l4, G3, G).scale(sign_a)
        + prod(l1, l4, l2, l3, G3, G).scale(sign_b)
    )
    ok = lhs == rhs
    return IdentityReport(name, 4, ok, "" if ok else f"parities={tuple(parities)}")


def _fierz_lemma(rep, conj) -> IdentityReport:
    """lambdabar gamma^3 chi chibar gamma psi = 0 (and siblings), |chi|=0, |psi|=1.

    Checked faithfully as stated.  The claim is false: over the
    supercommutative algebra the three products are nonzero for every
    parity of lambda (indeed chibar gamma^0 chi = -chi^dagger chi cannot
    vanish for commuting components).  What does hold exactly, and is
    asserted here as a witness of the analysis, is the relation set
        P0 = -P2,   2 P0 = (-1)^|lambda| P1,
    with P0 = lbar g3 chi chibar g psi, P1 = chibar g chi lbar g3 psi,
    P2 = lbar g chi chibar g3 psi.  All three vanish only when chi is
    odd (P1 = 0 at |chi| = 1 while P0, P2 remain nonzero).
    """
    G = gamma_form(rep)
    G3 = gamma_power(rep, 3)
    all_zero = True
    witness = ""
    for pl in (0, 1):
        pool = GeneratorPool()
        lam = generic_majorana("l", pl, conj, rep, pool)
        chi = generic_majorana("c", 0, conj, rep, pool)
        psi = generic_majorana("p", 1, conj, rep, pool)
        p0 = bilinear_form(lam, G3, chi, rep).mul(bilinear_form(chi, G, psi, rep))
        p1 = bilinear_form(chi, G, chi, rep).mul(bilinear_form(lam, G3, psi, rep))
        p2 = bilinear_form(lam, G, chi, rep).mul(bilinear_form(chi, G3, psi, rep))
        for i, p in enumerate((p0, p1, p2)):
            if not p.is_zero() and all_zero:
                all_zero = False
                witness = f"product {i} nonzero at |lambda|={pl}"
        # the relations that actually hold, asserted so the failure report
        # carries a verified analysis rather than a bare mismatch
        assert (p0 + p2).is_zero(), "P0 = -P2 relation broke"
        assert (p0.scale(gr(2)) - p1.scale(gr((-1) ** pl))).is_zero(), (
            "2 P0 = (-1)^|lambda| P1 relation broke"
        )
    if all_zero:
        return IdentityReport(
            "fierz-lemma-products", 4, True, "", "all three products, both |lambda|"
        )
    return IdentityReport(
        "fierz-lemma-products", 4, False, witness,
        "statement fails as quoted; verified instead: P0 = -P2 and "
        "2 P0 = (-1)^|lambda| P1, all nonzero at |chi| = 0",
    )


def _run_fierz_base(D):
    return _fierz_base(*_d4_context())


def _run_fierz_rearr1(D):
    for ps in product((0, 1), repeat=4):
        rpt = fierz_check("rearr1", ps)
        if not rpt.passed:
            return rpt
    return IdentityReport("fierz-rearrangement-1", 4, True, "", "all 16 parity tuples")


def _run_fierz_rearr2(D):
    for ps in product((0, 1), repeat=4):
        rpt = fierz_check("rearr2", ps)
        if not rpt.passed:
            return rpt
    return IdentityReport("fierz-rearrangement-2", 4, True, "", "all 16 parity tuples")


def _run_fierz_lemma(D):
    return _fierz_lemma(*_d4_context())


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegistryEntry:
    name: str
    description: str
    generic: bool  # applicable to all D in GENERIC_DIMS (else D=4 only)
    runner: object

    def applicable(self, D: int) -> bool:
        return (D in GENERIC_DIMS) if self.generic else (D == 4)


REGISTRY: dict[str, RegistryEntry] = {}


def _register(name, description, generic, runner):
    REGISTRY[name] = RegistryEntry(name, description, generic, runner)


_register("gg-contraction", "Gamma^a Gamma_a = -D", True, _run_gg)
_register("g1g-contraction", "Gamma^a Gamma^b Gamma_a = (D-2) Gamma^b", True, _run_g1g)
_register(
    "g2g-contraction",
    "Gamma^a Gamma^b Gamma^c Gamma_a = (4-D) Gamma^b Gamma^c + 4 eta^{bc}",
    True,
    _run_g2g,
)
_register(
    "g3g-contraction",
    "Gamma^a Gamma^b Gamma^c Gamma^d Gamma_a = (D-6) Gamma^bcd-string - eta terms",
    True,
    _run_g3g,
)
_register(
    "multi-index-split",
    "Gamma^{a1..ar} = (Gamma^{a1} Gamma^{a2..ar} - (-1)^r Gamma^{a2..ar} Gamma^{a1})/2",
    True,
    _run_multi_split,
)
_register(
    "multi-contraction",
    "Gamma^a Gamma^{A_r} Gamma_a = (-1)^(r+1) (D-2r) Gamma^{A_r}",
    True,
    _run_multi_contraction,
)
_register(
    "block-contraction",
    "Gamma^{A_r B_s} Gamma_{B_s} = (-1)^(s(s+1)/2) (D-r)!/(D-r-s)! Gamma^{A_r}",
    True,
    _run_block_contraction,
)
_register("d4-g3g-contraction", "g^a g^b g^c g^d g_a = 2 g^d g^c g^b", False, _run_d4_g3g)
_register(
    "d4-triple-product",
    "g^a g^b g^c = eta terms + i eps^{dabc} g_d g5",
    False,
    _run_d4_triple,
)
_register(
    "d4-dual-two-form", "g5 g^{cd} = +-(i/2) eps^{abcd} g_{ab}", False, _run_d4_dual2
)
_register(
    "d4-dual-three-form", "g^a g5 = c eps^{abcd} g_{bcd}", False, _run_d4_dual3
)
_register(
    "bracket-power-left",
    "[v_a, G^N] = N [v_a,G] G^{N-1} + N(N-1) v_a G^{N-2}",
    True,
    _run_bracket_left,
)
_register(
    "bracket-power-right",
    "[v_a, G^N] = (-1)^(N-1) (N G^{N-1} G_a + N(N-1) G^{N-2} v_a)",
    True,
    _run_bracket_right,
)
_register(
    "bracket-mixed-commutator",
    "[v_a,G] G^N - (-1)^N G^N [v_a,G] = -2N v_a G^{N-1}",
    True,
    _run_bracket_mixed,
)
_register(
    "bracket-theta-square",
    "[G,Theta] G^2 - G^2 [G,Theta] = 4N G Theta",
    True,
    _run_theta_square,
)
_register(
    "majorana-flip-laws",
    "chibar G^N psi = -t_N (-1)^(N(|psi|+|chi|)+|psi||chi|) psibar G^N chi",
    False,
    _run_flip_laws,
)
_register(
    "d4-spin-action-bilinear",
    "chibar g^3 [alpha,psi] = 3 chibar g alpha psi + (-1)^|alpha| (1/2) chibar [alpha,g^3]_V psi",
    False,
    _run_spin_action_bilinear,
)
_register("fierz-base", "(C g^a)_(al(be) (C g_a)_(rho de)) = 0", False, _run_fierz_base)
_register(
    "fierz-rearrangement-1", "first Fierz rearrangement", False, _run_fierz_rearr1
)
_register(
    "fierz-rearrangement-2", "second Fierz rearrangement", False, _run_fierz_rearr2
)
_register("fierz-lemma-products", "vanishing triple products", False, _run_fierz_lemma)


def verify(identity_id: str, D: int) -> IdentityReport:
    entry = REGISTRY.get(identity_id)
    if entry is None:
        raise UnknownIdentityError(identity_id)
    if not entry.applicable(D):
        raise InapplicableDimensionError(
            f"identity {identity_id!r} is not applicable at D={D}"
        )
    return entry.runner(D)


def verify_all(D: int) -> list[IdentityReport]:
    reports = []
    for name in sorted(REGISTRY):
        entry = REGISTRY[name]
        if entry.applicable(D):
            reports.append(entry.runner(D))
    return reports
