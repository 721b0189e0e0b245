"""Lorentzian gamma representations built by induction.

Conventions: mostly-plus metric eta = diag(-1, +1, ..., +1), so
{Gamma_a, Gamma_b} = -2 eta_ab, Gamma_0^2 = +Id (hermitian) and
Gamma_i^2 = -Id (anti-hermitian), each Gamma_a unitary.

Construction:

* D=2 base: Gamma_0 = [[0,1],[1,0]], Gamma_1 = [[0,1],[-1,0]];
* D=4 canonical basis: the Weyl block form Gamma_a = [[0, sigma_a],
  [sbar_a, 0]] with sbar_0 = sigma_0, sbar_i = -sigma_i and the
  sigma_2 = [[0,i],[-i,0]] sign choice (note: opposite to the more common
  convention; kept because the charge-conjugation matrix is proportional
  to Gamma_2 in this basis);
* odd step D -> D+1: Gamma_{d+1} = alpha * Gamma_0 ... Gamma_d with alpha
  in {1, i} fixed by exact computation of the square (and asserted equal
  to the parity rule: 1 for k even, i for k odd);
* even step D -> D+2: Gamma''_a = offdiag(Gamma_a, Gamma_a),
  Gamma''_{d+1} = offdiag(Id, -Id), Gamma''_{d+2} = diag(i Id, -i Id).

All gamma matrices (and hence all their products) are monomial: one
nonzero entry of modulus 1 per row and column.  A small monomial kernel
keeps products of long gamma strings O(size) instead of O(size^3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .clifford import Signature, blade_indices, perm_sign
from .exactnum import ExactMatrix, GaussianRational, I, MINUS_ONE, ONE, ZERO, gr, null_space


class GammaRepError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Monomial matrices: value vals[i] at position (i, perm[i])
# ---------------------------------------------------------------------------

class MonomialMatrix:
    __slots__ = ("n", "perm", "vals")

    def __init__(self, perm, vals):
        self.n = len(perm)
        self.perm = list(perm)
        self.vals = list(vals)

    @staticmethod
    def identity(n: int) -> "MonomialMatrix":
        return MonomialMatrix(list(range(n)), [ONE] * n)

    def compose(self, other: "MonomialMatrix") -> "MonomialMatrix":
        """Matrix product self @ other."""
        perm = [other.perm[self.perm[i]] for i in range(self.n)]
        vals = [self.vals[i] * other.vals[self.perm[i]] for i in range(self.n)]
        return MonomialMatrix(perm, vals)

    def scale(self, c) -> "MonomialMatrix":
        return MonomialMatrix(self.perm, [c * v for v in self.vals])

    def to_exact(self) -> ExactMatrix:
        rows = [[ZERO] * self.n for _ in range(self.n)]
        for i in range(self.n):
            rows[i][self.perm[i]] = self.vals[i]
        return ExactMatrix(rows)

    def entry(self, i: int, j: int):
        return self.vals[i] if self.perm[i] == j else ZERO

    def trace(self):
        t = ZERO
        for i in range(self.n):
            if self.perm[i] == i:
                t = t + self.vals[i]
        return t

    def add_into(self, acc, scale=ONE):
        """Accumulate scale * self into a dense list-of-lists accumulator."""
        for i in range(self.n):
            j = self.perm[i]
            acc[i][j] = acc[i][j] + scale * self.vals[i]


def as_monomial(M: ExactMatrix) -> MonomialMatrix | None:
    """Convert when M has exactly one nonzero per row and column."""
    n = M.rows
    if M.cols != n:
        return None
    perm = [-1] * n
    vals = [ZERO] * n
    seen = set()
    for i in range(n):
        for j in range(n):
            if not M.data[i][j].is_zero():
                if perm[i] != -1:
                    return None
                perm[i] = j
                vals[i] = M.data[i][j]
        if perm[i] == -1 or perm[i] in seen:
            return None
        seen.add(perm[i])
    return MonomialMatrix(perm, vals)


# ---------------------------------------------------------------------------
# The representation object
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaRep:
    """Gamma matrices Gamma_0..Gamma_{D-1} on C^(2^k), k = floor(D/2)."""

    D: int
    k: int
    gammas: tuple[ExactMatrix, ...]
    sig: Signature

    @property
    def size(self) -> int:
        return 1 << self.k

    def eta(self, a: int) -> int:
        return self.sig.eta(a)

    def eta_diag(self) -> list[int]:
        return self.sig.eta_diag()

    def gamma_lower(self, a: int) -> ExactMatrix:
        return self.gammas[a]

    def gamma_upper(self, a: int) -> ExactMatrix:
        g = self.gammas[a]
        return g if self.eta(a) > 0 else g.scale(MINUS_ONE)

    def monomials(self) -> list[MonomialMatrix]:
        return [_monomial_cache(self)[1 << a] for a in range(self.D)]

    def blade_monomial(self, mask: int) -> MonomialMatrix:
        """Product Gamma_{a1}...Gamma_{ak} over the ascending indices of mask."""
        return _monomial_cache(self)[mask]

    def to_json(self):
        return {
            "dim": self.D,
            "k": self.k,
            "eta": self.eta_diag(),
            "matrices": [g.to_json() for g in self.gammas],
        }


_MONOMIAL_CACHES: dict["GammaRep", list[MonomialMatrix]] = {}


def _monomial_cache(rep: GammaRep) -> list[MonomialMatrix]:
    key = rep
    cache = _MONOMIAL_CACHES.get(key)
    if cache is None:
        n = rep.size
        gens = []
        for g in rep.gammas:
            m = as_monomial(g)
            if m is None:
                raise GammaRepError("gamma matrix is not monomial")
            gens.append(m)
        cache = [MonomialMatrix.identity(n)] * (1 << rep.D)
        for mask in range(1, 1 << rep.D):
            low = mask & -mask
            a = low.bit_length() - 1
            rest = mask ^ low
            cache[mask] = gens[a].compose(cache[rest]) if rest else gens[a]
        _MONOMIAL_CACHES[key] = cache
    return cache


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _pauli():
    s0 = ExactMatrix([[ONE, ZERO], [ZERO, ONE]])
    s1 = ExactMatrix([[ZERO, ONE], [ONE, ZERO]])
    s2 = ExactMatrix([[ZERO, I], [-I, ZERO]])  # sign choice, see module docstring
    s3 = ExactMatrix([[ONE, ZERO], [ZERO, -ONE]])
    return s0, s1, s2, s3


def _base_d2() -> list[ExactMatrix]:
    g0 = ExactMatrix([[ZERO, ONE], [ONE, ZERO]])
    g1 = ExactMatrix([[ZERO, ONE], [MINUS_ONE, ZERO]])
    return [g0, g1]


def _weyl_d4() -> list[ExactMatrix]:
    s0, s1, s2, s3 = _pauli()
    sigmas = [s0, s1, s2, s3]
    sbars = [s0, -s1, -s2, -s3]

    def block(s, sb):
        rows = []
        for i in range(2):
            rows.append([ZERO, ZERO] + list(s.data[i]))
        for i in range(2):
            rows.append(list(sb.data[i]) + [ZERO, ZERO])
        return ExactMatrix(rows)

    return [block(sigmas[a], sbars[a]) for a in range(4)]


def odd_step(gammas: list[ExactMatrix]) -> list[ExactMatrix]:
    """Append Gamma_{d+1} = alpha * Gamma_0...Gamma_d to an even-D family."""
    prod = gammas[0]
    for g in gammas[1:]:
        prod = prod.mul(g)
    sq = prod.mul(prod).scalar_multiple_of_identity()
    if sq is None:
        raise GammaRepError("product of gammas did not square to a scalar")
    if sq == ONE:
        alpha = I  # (i P)^2 = -P^2
    elif sq == MINUS_ONE:
        alpha = ONE
    else:
        raise GammaRepError(f"unexpected volume square {sq}")
    k = len(gammas) // 2
    expected = ONE if k % 2 == 0 else I
    if alpha != expected:
        raise GammaRepError("volume-square sign disagrees with the parity rule")
    return gammas + [prod.scale(alpha)]


def even_step(gammas: list[ExactMatrix]) -> list[ExactMatrix]:
    """Double the space: D -> D+2 block construction."""
    n = gammas[0].rows
    zero = ExactMatrix.zeros(n, n)
    ident = ExactMatrix.identity(n)

    def blocks(tl, tr, bl, br):
        rows = []
        for i in range(n):
            rows.append(list(tl.data[i]) + list(tr.data[i]))
        for i in range(n):
            rows.append(list(bl.data[i]) + list(br.data[i]))
        return ExactMatrix(rows)

    out = [blocks(zero, g, g, zero) for g in gammas]
    out.append(blocks(zero, ident, -ident, zero))
    out.append(blocks(ident.scale(I), zero, zero, ident.scale(-I)))
    return out


def _check_invariants(gammas: list[ExactMatrix], D: int):
    n = gammas[0].rows
    ident = ExactMatrix.identity(n)
    sig = Signature(D - 1, 1)
    for a in range(D):
        for b in range(a, D):
            anti = gammas[a].mul(gammas[b]) + gammas[b].mul(gammas[a])
            want = ident.scale(gr(-2 * sig.eta(a))) if a == b else ExactMatrix.zeros(n, n)
            if anti != want:
                raise GammaRepError(f"Clifford relation fails at ({a},{b})")
    for a in range(D):
        adj = gammas[a].adjoint()
        want = gammas[a] if a == 0 else -gammas[a]
        if adj != want:
            raise GammaRepError(f"hermiticity pattern fails at {a}")
        if gammas[a].adjoint().mul(gammas[a]) != ident:
            raise GammaRepError(f"gamma {a} is not unitary")


def build_gamma(D: int) -> GammaRep:
    """Gamma representation for spacetime dimension D, 2 <= D <= 12."""
    if not 2 <= D <= 12:
        raise GammaRepError(f"dimension {D} out of supported range 2..12")
    rep = _build_cache.get(D)
    if rep is not None:
        return rep
    if D == 2:
        gammas = _base_d2()
    elif D == 3:
        gammas = odd_step(_base_d2())
    elif D == 4:
        gammas = _weyl_d4()
    elif D % 2 == 1:
        gammas = odd_step(list(build_gamma(D - 1).gammas))
    else:
        gammas = even_step(list(build_gamma(D - 2).gammas))
    _check_invariants(gammas, D)
    rep = GammaRep(D=D, k=len(gammas[0].data).bit_length() - 1, gammas=tuple(gammas), sig=Signature(D - 1, 1))
    _build_cache[D] = rep
    return rep


_build_cache: dict[int, GammaRep] = {}


# ---------------------------------------------------------------------------
# Derived matrices
# ---------------------------------------------------------------------------

def gamma_anti(rep: GammaRep, indices, upper: bool = False) -> ExactMatrix:
    """Weight-one antisymmetrized product Gamma_{[a1}...Gamma_{an]}.

    For distinct indices this equals the plain ordered product (the
    generators anticommute), signed by the sorting permutation; repeated
    indices give the zero matrix.  `upper` raises every index with eta.
    """
    indices = list(indices)
    for a in indices:
        if not 0 <= a < rep.D:
            raise GammaRepError(f"index {a} out of range for D={rep.D}")
    n = rep.size
    if not indices:
        return ExactMatrix.identity(n)
    sign = perm_sign(indices)
    if sign == 0:
        return ExactMatrix.zeros(n, n)
    mask = 0
    for a in indices:
        mask |= 1 << a
    coeff = gr(sign)
    if upper:
        for a in indices:
            coeff = coeff * gr(rep.eta(a))
    return rep.blade_monomial(mask).to_exact().scale(coeff)


def gamma_anti_permutation_sum(rep: GammaRep, indices, upper: bool = False) -> ExactMatrix:
    """Literal (1/n!) signed permutation sum; oracle for gamma_anti."""
    from itertools import permutations

    indices = list(indices)
    n = rep.size
    acc = ExactMatrix.zeros(n, n)
    count = 0
    pick = rep.gamma_upper if upper else rep.gamma_lower
    for perm in permutations(range(len(indices))):
        sign = perm_sign(perm)
        m = ExactMatrix.identity(n)
        for p in perm:
            m = m.mul(pick(indices[p]))
        acc = acc + m.scale(gr(sign))
        count += 1
    return acc.scale(gr(Fraction(1, count)))


def gamma5(rep: GammaRep) -> ExactMatrix:
    """gamma5 = i gamma^0 gamma^1 gamma^2 gamma^3 (D=4 only)."""
    if rep.D != 4:
        raise GammaRepError("gamma5 is defined for D=4")
    m = rep.gamma_upper(0)
    for a in (1, 2, 3):
        m = m.mul(rep.gamma_upper(a))
    return m.scale(I)


def dirac_conj(rep: GammaRep, A: ExactMatrix) -> ExactMatrix:
    """Dirac conjugate of an operator: Gamma_0^{-1} A^dagger Gamma_0."""
    n = rep.size
    if A.rows != n or A.cols != n:
        raise GammaRepError("operator size does not match the representation")
    g0 = rep.gammas[0]
    return g0.mul(A.adjoint()).mul(g0)  # Gamma_0^{-1} = Gamma_0


def gamma_ab(rep: GammaRep, a: int, b: int) -> ExactMatrix:
    """Gamma_ab = (1/2)[Gamma_a, Gamma_b] (lower indices)."""
    return gamma_anti(rep, [a, b])


# ---------------------------------------------------------------------------
# Commutant (irreducibility certificate)
# ---------------------------------------------------------------------------

def commutant_dim(rep: GammaRep) -> int:
    """Dimension of {X : X Gamma_a = Gamma_a X for all a}.

    This is the null-space dimension of the stacked commutator system.
    Because every generator is monomial, the system splits into orbits of
    matrix positions with a phase constraint per edge; each phase-consistent
    orbit contributes one dimension.  Cross-checked against a dense
    null-space computation in the test suite.
    """
    gens = rep.monomials()
    return _intertwiner_orbit_count(gens, gens, ONE)[0]


def commutant_dim_dense(rep: GammaRep) -> int:
    """Oracle: literal null space of the stacked commutator system."""
    n = rep.size
    rows = []
    for g in rep.gammas:
        # (X G - G X)_{ij} = sum_m X_im G_mj - G_im X_mj
        for i in range(n):
            for j in range(n):
                row = [ZERO] * (n * n)
                for m in range(n):
                    row[i * n + m] = row[i * n + m] + g.data[m][j]
                    row[m * n + j] = row[m * n + j] - g.data[i][m]
                rows.append(row)
    return len(null_space(ExactMatrix(rows)))


def _intertwiner_orbit_count(left_gens, right_gens, eta_sign):
    """Solve B L_a = eta R_a B for monomial generator families.

    Positions (i, j) of B are joined into orbits by (i, j) ->
    (pi_R(i), pi_L(j)) with multiplicative consistency factors; returns
    (number of consistent orbits, a representative solution matrix built
    from the first consistent orbit or None).
    """
    n = left_gens[0].n
    parent = list(range(n * n))
    # potential[p]: B[p] = potential[p] * B[parent[p]]
    potential: list[GaussianRational] = [ONE] * (n * n)
    dead = [False] * (n * n)

    def find_plain(x):
        val = ONE
        while parent[x] != x:
            val = val * potential[x]
            x = parent[x]
        return x, val

    def union(x, y, factor):
        # enforce B[y] = factor * B[x]
        rx, vx = find_plain(x)
        ry, vy = find_plain(y)
        if rx == ry:
            # consistency: vy must equal factor * vx
            if vy != factor * vx:
                dead[rx] = True
            return
        # attach ry under rx: B[ry] = (factor*vx/vy) * B[rx]
        parent[ry] = rx
        potential[ry] = factor * vx / vy
        if dead[ry]:
            dead[rx] = True

    for L, R in zip(left_gens, right_gens):
        for i in range(n):
            for j in range(n):
                # B_{pi_R(i), pi_L(j)} = (L.vals[j] / (eta * R.vals[i])) B_{ij}
                src = i * n + j
                dst = R.perm[i] * n + L.perm[j]
                factor = L.vals[j] / (eta_sign * R.vals[i])
                union(src, dst, factor)

    roots = {}
    for p in range(n * n):
        r, _ = find_plain(p)
        if dead[r]:
            continue
        roots.setdefault(r, []).append(p)
    count = len(roots)
    solution = None
    if count:
        rows = [[ZERO] * n for _ in range(n)]
        root = sorted(roots)[0]
        for p in roots[root]:
            _, val = find_plain(p)
            rows[p // n][p % n] = val
        solution = ExactMatrix(rows)
    return count, solution
