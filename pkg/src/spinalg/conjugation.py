"""Intertwiner B, charge conjugation matrix C, and the Majorana machinery.

B is the unitary matrix with Gamma_a = eta * B^{-1} Gamma_a^* B.  For even D
both signs eta = +-1 admit a (Schur-unique) solution; for odd D = 2k+1 only
eta = (-1)^k does.  epsilon is read off from B B^* = epsilon * Id and
cross-checked against the closed form
epsilon = cos(pi/4 (d-1)) - eta sin(pi/4 (d-1)), evaluated exactly in
Q(sqrt 2): the value is +-1 at even D and +-sqrt(2) at the admissible eta of
odd D (zero signals an inadmissible eta), so the sign is what is compared.

C := B^t Gamma_0 satisfies Gamma_a^t C = eta C Gamma_a, C C^dagger = Id and
C^t = epsilon eta C.  epsilon = +1 yields a real structure psi -> B psi^*
(Majorana for eta = -1, pseudo-Majorana for eta = +1); epsilon = -1 a
quaternionic one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import ExactMatrix, GaussianRational, ONE, ZERO, gr, null_space
from .gammarep import GammaRep, GammaRepError, _intertwiner_orbit_count, gamma_ab


class ConjugationError(ValueError):
    pass


@dataclass(frozen=True)
class ConjugationData:
    B: ExactMatrix
    eta: int
    epsilon: int
    C: ExactMatrix
    structure: str  # 'real' | 'quaternionic'


def admissible_etas(D: int) -> list[int]:
    if D % 2 == 0:
        return [1, -1]
    k = (D - 1) // 2
    return [(-1) ** (k % 2)]


def solve_B(rep: GammaRep, eta: int) -> ExactMatrix:
    """Solve Gamma_a = eta B^{-1} Gamma_a^* B for unitary B.

    The stacked homogeneous system B Gamma_a - eta Gamma_a^* B = 0 has a
    one-dimensional kernel exactly when eta is admissible; the solver works
    orbit-by-orbit on matrix positions (all gammas are monomial) and is
    cross-checked against a dense null-space oracle in the tests.  The
    returned B is normalized unitary with its first nonzero entry (row
    major) real positive.
    """
    if eta not in (1, -1):
        raise ConjugationError("eta must be +1 or -1")
    if rep.D % 2 == 1 and eta not in admissible_etas(rep.D):
        raise ConjugationError(
            f"eta={eta} is not admissible at odd D={rep.D}; "
            f"need eta={admissible_etas(rep.D)[0]}"
        )
    gens = rep.monomials()
    conj_gens = [type(g)(g.perm, [v.conj() for v in g.vals]) for g in gens]
    count, B = _intertwiner_orbit_count(gens, conj_gens, gr(eta))
    if count == 0:
        raise ConjugationError(f"no intertwiner exists for eta={eta} at D={rep.D}")
    if count > 1:
        raise ConjugationError(
            f"intertwiner space has dimension {count}; representation is reducible"
        )
    return _normalize_unitary(B)


def solve_B_dense(rep: GammaRep, eta: int) -> list[ExactMatrix]:
    """Oracle: kernel basis of the stacked system via dense elimination."""
    n = rep.size
    rows = []
    for g in rep.gammas:
        gc = g.conj()
        for i in range(n):
            for j in range(n):
                row = [ZERO] * (n * n)
                for m in range(n):
                    row[i * n + m] = row[i * n + m] + g.data[m][j]
                    row[m * n + j] = row[m * n + j] - gr(eta) * gc.data[i][m]
                rows.append(row)
    return null_space(ExactMatrix(rows))


def _normalize_unitary(B: ExactMatrix) -> ExactMatrix:
    n = B.rows
    prod = B.mul(B.adjoint())
    c = prod.scalar_multiple_of_identity()
    if c is None:
        raise ConjugationError("candidate intertwiner is not proportional to a unitary")
    if c.im != 0 or c.re <= 0:
        raise ConjugationError("B B^dagger is not a positive scalar")
    # rescale by 1/sqrt(c); exactness requires c to be a rational square
    num, den = c.re.numerator, c.re.denominator
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is None or rd is None:
        raise ConjugationError(
            f"unitary normalization needs irrational scale sqrt({c.re})"
        )
    B = B.scale(gr(Fraction(rd, rn)))
    # phase convention: first nonzero entry (row-major) real positive
    first = None
    for row in B.data:
        for e in row:
            if not e.is_zero():
                first = e
                break
        if first is not None:
            break
    phase = first.conj()  # |first| = 1 after unitary scaling
    if (first * phase) != ONE:
        raise ConjugationError("normalized intertwiner entry is not unimodular")
    return B.scale(phase)


def _isqrt_exact(n: int):
    r = int(n**0.5)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand * cand == n:
            return cand
    return None


def epsilon_of(B: ExactMatrix) -> int:
    """Sign from B B^* = epsilon Id."""
    c = B.mul(B.conj()).scalar_multiple_of_identity()
    if c == ONE:
        return 1
    if c == -ONE:
        return -1
    raise ConjugationError(f"B B^* is not +-Id (scalar part {c})")


# cos((pi/4) m) and sin((pi/4) m) for m mod 8, as (rational, coeff of sqrt2)
_COS8 = [
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1, 2)),
    (Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(-1, 2)),
    (Fraction(-1), Fraction(0)),
    (Fraction(0), Fraction(-1, 2)),
    (Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(1, 2)),
]
_SIN8 = [
    (Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(1, 2)),
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1, 2)),
    (Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(-1, 2)),
    (Fraction(-1), Fraction(0)),
    (Fraction(0), Fraction(-1, 2)),
]


def epsilon_formula_value(d: int, eta: int) -> tuple[Fraction, Fraction]:
    """cos(pi/4 (d-1)) - eta sin(pi/4 (d-1)) as p + q*sqrt(2), exactly."""
    m = (d - 1) % 8
    cp, cq = _COS8[m]
    sp, sq = _SIN8[m]
    return (cp - eta * sp, cq - eta * sq)


def epsilon_formula(d: int, eta: int) -> int:
    """Sign of the counting formula; raises when it vanishes (inadmissible eta).

    At even D = d+1 the value is exactly +-1; at odd D it is +-sqrt(2) for
    the admissible eta and 0 for the other sign.
    """
    p, q = epsilon_formula_value(d, eta)
    if p == 0 and q == 0:
        raise ConjugationError(f"counting formula vanishes for d={d}, eta={eta}")
    if p != 0 and q != 0:
        raise ConjugationError("unexpected mixed value in the counting formula")
    v = p if q == 0 else q
    return 1 if v > 0 else -1


# The (epsilon, eta) table, keyed by D mod 8; None marks an inadmissible eta.
_EPSILON_TABLE = {
    1: {1: 1, -1: None},
    2: {1: 1, -1: 1},
    3: {1: None, -1: 1},
    4: {1: -1, -1: 1},
    5: {1: -1, -1: None},
    6: {1: -1, -1: -1},
    7: {1: None, -1: -1},
    0: {1: 1, -1: -1},
}


def epsilon_table(D: int, eta: int):
    """Expected epsilon for (D mod 8, eta), or None when eta is inadmissible."""
    return _EPSILON_TABLE[D % 8][eta]


def charge_conj(rep: GammaRep, eta: int) -> ConjugationData:
    """Assemble B, C, epsilon and assert every defining property exactly."""
    B = solve_B(rep, eta)
    eps = epsilon_of(B)
    n = rep.size
    ident = ExactMatrix.identity(n)

    if B.mul(B.adjoint()) != ident:
        raise ConjugationError("B is not unitary")
    if B.transpose() != B.scale(gr(eps)):
        raise ConjugationError("B^t != epsilon B")
    Binv = B.adjoint()
    for a in range(rep.D):
        if rep.gammas[a] != Binv.mul(rep.gammas[a].conj()).mul(B).scale(gr(eta)):
            raise ConjugationError(f"intertwining relation fails at index {a}")

    C = B.transpose().mul(rep.gammas[0])
    if C.mul(C.adjoint()) != ident:
        raise ConjugationError("C is not unitary")
    if C.transpose() != C.scale(gr(eps * eta)):
        raise ConjugationError("C^t != epsilon eta C")
    for a in range(rep.D):
        lhs = rep.gammas[a].transpose().mul(C)
        rhs = C.mul(rep.gammas[a]).scale(gr(eta))
        if lhs != rhs:
            raise ConjugationError(f"Gamma^t C = eta C Gamma fails at index {a}")

    expected = epsilon_table(rep.D, eta)
    if expected is None or expected != eps:
        raise ConjugationError(
            f"epsilon {eps} does not match the table cell for D={rep.D}, eta={eta}"
        )
    if eps != epsilon_formula(rep.D - 1, eta):
        raise ConjugationError("epsilon disagrees with the counting formula")

    return ConjugationData(
        B=B, eta=eta, epsilon=eps, C=C,
        structure="real" if eps == 1 else "quaternionic",
    )


def spin_invariance_checks(rep: GammaRep, data: ConjugationData) -> None:
    """(Gamma_ab)^t C = -C Gamma_ab and B (Gamma_ab)^* B^{-1} = Gamma_ab."""
    Binv = data.B.adjoint()
    for a in range(rep.D):
        for b in range(a + 1, rep.D):
            g = gamma_ab(rep, a, b)
            if g.transpose().mul(data.C) != -(data.C.mul(g)):
                raise ConjugationError(f"C spin invariance fails at ({a},{b})")
            if data.B.mul(g.conj()).mul(Binv) != g:
                raise ConjugationError(f"B spin intertwining fails at ({a},{b})")


def t_parameter(N: int) -> int:
    """Sign t_N in (C Gamma^(N))^t = -t_N C Gamma^(N): (-1)^floor((N+1)/2)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return (-1) ** (((N + 1) // 2) % 2)


def t_parameter_matrix_check(rep: GammaRep, data: ConjugationData, N: int) -> bool:
    """Verify the transpose symmetry of C Gamma^{a1..aN} for all index tuples."""
    from itertools import combinations

    from .gammarep import gamma_anti

    t = gr(-t_parameter(N))
    for combo in combinations(range(rep.D), N):
        M = data.C.mul(gamma_anti(rep, list(combo), upper=True))
        if M.transpose() != M.scale(t):
            return False
    return True


def real_structure_map(data: ConjugationData, psi: ExactMatrix) -> ExactMatrix:
    """phi(psi) = B psi^* on exact column spinors."""
    return data.B.mul(psi.conj())


def majorana_check(psi, data: ConjugationData, rep: GammaRep) -> bool:
    """Componentwise B psi^* = psi for a spinor with supercommutative entries.

    Requires epsilon = +1 (a real structure); with epsilon = -1 the map
    squares to -id and no spinor can satisfy the condition.
    """
    if data.epsilon != 1:
        raise ConjugationError(
            "no Majorana condition for a quaternionic structure (epsilon = -1)"
        )
    comps = list(psi.components) if hasattr(psi, "components") else list(psi)
    n = rep.size
    if len(comps) != n:
        raise ConjugationError("spinor size does not match the representation")
    starred = [c.star() for c in comps]
    for i in range(n):
        acc = None
        for j in range(n):
            b = data.B.data[i][j]
            if b.is_zero():
                continue
            term = starred[j] * b
            acc = term if acc is None else acc + term
        diff = (acc - comps[i]) if acc is not None else -comps[i]
        if not diff.is_zero():
            return False
    return True
