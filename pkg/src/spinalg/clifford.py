"""Blade-level real Clifford algebra over an arbitrary signature.

Conventions (fixed throughout the package):

* generators satisfy v*v = -eta(v,v), so {v_a, v_b} = -2 eta_ab;
* a Signature(r, s) has s "timelike" generators with eta = -1 (squaring to
  +1) occupying indices 0..s-1, and r "spacelike" generators with eta = +1
  (squaring to -1) at indices s..D-1.  Lorentzian mostly-plus is (d, 1)
  with index 0 the timelike direction;
* blades are bitmasks over generator indices, canonically ordered by
  ascending index.

The same sparse container doubles as the exterior algebra: `wedge` is the
metric-free product and `contract` is the degree-lowering bracket
[v_a, -] used by the identity engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    ExactMatrix,
    GaussianRational,
    MINUS_ONE,
    ONE,
    ZERO,
    gr,
)

MAX_DIM = 16


@dataclass(frozen=True)
class Signature:
    """r generators with eta=+1 (square -1), s with eta=-1 (square +1)."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError("signature counts must be non-negative")
        if self.dim > MAX_DIM:
            raise ValueError(f"dimension {self.dim} exceeds MAX_DIM={MAX_DIM}")

    @property
    def dim(self) -> int:
        return self.r + self.s

    def eta(self, a: int) -> int:
        """Diagonal metric entry eta_aa (+1 or -1)."""
        if not 0 <= a < self.dim:
            raise IndexError(f"generator index {a} out of range for D={self.dim}")
        return -1 if a < self.s else 1

    def eta_diag(self) -> list[int]:
        return [self.eta(a) for a in range(self.dim)]

    def generator_square(self, a: int) -> int:
        """v_a * v_a as a scalar: -eta_aa."""
        return -self.eta(a)


def popcount(mask: int) -> int:
    return mask.bit_count()


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenation of ordered blades a and b.

    Counts generator transpositions with the usual bit trick: each set bit
    of b below a higher set bit of a contributes one swap.
    """
    a >>= 1
    swaps = 0
    while a:
        swaps += popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def blade_mul(x: int, y: int, sig: Signature) -> tuple[GaussianRational, int]:
    """Clifford product of two basis blades: (coefficient, result mask).

    The coefficient is +-1: the transposition sign times the squares of the
    repeated generators (v_a v_a = -eta_aa).
    """
    sign = reorder_sign(x, y)
    common = x & y
    for a in blade_indices(common):
        sign *= sig.generator_square(a)
    return (ONE if sign > 0 else MINUS_ONE), x ^ y


def wedge_blades(x: int, y: int) -> tuple[GaussianRational, int]:
    """Exterior product of basis blades; zero coefficient on overlap."""
    if x & y:
        return ZERO, 0
    sign = reorder_sign(x, y)
    return (ONE if sign > 0 else MINUS_ONE), x | y


def perm_sign(seq) -> int:
    """Sign of the permutation sorting seq; 0 on repeated entries."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                return 0
            if seq[i] > seq[j]:
                seq[i], seq[j] = seq[j], seq[i]
                sign = -sign
    return sign


class Multivector:
    """Sparse real Clifford algebra element: {blade mask: coefficient}."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms=None):
        object.__setattr__(self, "sig", sig)
        clean = {}
        if terms:
            for mask, c in terms.items():
                if not isinstance(c, GaussianRational):
                    c = gr(c)
                if not c.is_zero():
                    clean[mask] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def scalar(sig: Signature, c) -> "Multivector":
        return Multivector(sig, {0: c if isinstance(c, GaussianRational) else gr(c)})

    @staticmethod
    def basis_vector(sig: Signature, a: int) -> "Multivector":
        if not 0 <= a < sig.dim:
            raise IndexError(f"generator index {a} out of range")
        return Multivector(sig, {1 << a: ONE})

    @staticmethod
    def blade(sig: Signature, indices) -> "Multivector":
        """Ordered product of distinct generators v_{a1}...v_{ak}."""
        sign = perm_sign(indices)
        if sign == 0:
            raise ValueError("repeated generator in blade")
        return Multivector(sig, {indices_mask(indices): gr(sign)})

    @staticmethod
    def volume(sig: Signature) -> "Multivector":
        """v_* = product of all generators in ascending order."""
        return Multivector(sig, {(1 << sig.dim) - 1: ONE})

    # -- linear structure ----------------------------------------------------

    def _same_sig(self, other: "Multivector"):
        if self.sig != other.sig:
            raise ValueError(f"signature mismatch: {self.sig} vs {other.sig}")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._same_sig(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return Multivector(self.sig, terms)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return Multivector(self.sig, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "Multivector":
        if not isinstance(c, GaussianRational):
            c = gr(c)
        return Multivector(self.sig, {m: c * v for m, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and (self - other).is_zero()

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms)))

    # -- products ------------------------------------------------------------

    def mul(self, other: "Multivector") -> "Multivector":
        """Clifford product, bilinear extension of blade_mul."""
        self._same_sig(other)
        acc: dict[int, GaussianRational] = {}
        for mx, cx in self.terms.items():
            for my, cy in other.terms.items():
                s, m = blade_mul(mx, my, self.sig)
                v = cx * cy * s
                acc[m] = acc.get(m, ZERO) + v
        return Multivector(self.sig, acc)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return self.mul(other)
        return self.scale(other)

    def wedge(self, other: "Multivector") -> "Multivector":
        """Exterior product (mask-disjoint semantics, no metric)."""
        self._same_sig(other)
        acc: dict[int, GaussianRational] = {}
        for mx, cx in self.terms.items():
            for my, cy in other.terms.items():
                if mx & my:
                    continue
                s, m = wedge_blades(mx, my)
                acc[m] = acc.get(m, ZERO) + cx * cy * s
        return Multivector(self.sig, acc)

    # -- involutions and grading ----------------------------------------------

    def grade_part(self, k: int) -> "Multivector":
        return Multivector(
            self.sig, {m: c for m, c in self.terms.items() if popcount(m) == k}
        )

    def grades(self) -> set[int]:
        return {popcount(m) for m in self.terms}

    def grading(self) -> "Multivector":
        """The parity automorphism alpha: negates odd-grade terms."""
        return Multivector(
            self.sig,
            {m: (-c if popcount(m) & 1 else c) for m, c in self.terms.items()},
        )

    def reversal(self) -> "Multivector":
        """Anti-automorphism reversing generator order: sign (-1)^(k(k-1)/2)."""
        out = {}
        for m, c in self.terms.items():
            k = popcount(m)
            out[m] = -c if (k * (k - 1) // 2) & 1 else c
        return Multivector(self.sig, out)

    def scalar_part(self) -> GaussianRational:
        return self.terms.get(0, ZERO)

    # -- rendering -------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            idx = ",".join(str(i) for i in blade_indices(m))
            parts.append(f"{self.terms[m]} * e{{{idx}}}")
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Exterior-algebra isomorphism
# ---------------------------------------------------------------------------
#
# On the canonical orthogonal basis the isomorphism sends the Clifford blade
# v_{a1}..v_{ak} (ascending) to v_{a1}^...^v_{ak}; the coefficient dictionary
# is unchanged, only the product rule differs.  The functions below make the
# retagging explicit so round-trip tests have something to exercise.

def sigma_iso(x: Multivector) -> Multivector:
    """Clifford element -> exterior element (same sparse data, wedge semantics)."""
    return Multivector(x.sig, dict(x.terms))


def sigma_iso_inverse(x: Multivector) -> Multivector:
    return Multivector(x.sig, dict(x.terms))


def contract(a: int, x: Multivector) -> Multivector:
    """The bracket [v_a, -] on exterior elements: grade-lowering contraction.

    [v_a, v_{b1}^...^v_{bk}] = sum_j (-1)^(j-1) eta_{a bj} v_{..no bj..}.
    Extends linearly; odd operator (used with a Koszul sign upstream when
    coefficients carry odd parity).
    """
    sig = x.sig
    if not 0 <= a < sig.dim:
        raise IndexError("contract index out of range")
    acc: dict[int, GaussianRational] = {}
    bit = 1 << a
    for m, c in x.terms.items():
        if not m & bit:
            continue
        below = popcount(m & (bit - 1))
        sign = (-1 if below & 1 else 1) * sig.eta(a)
        v = c * sign
        key = m & ~bit
        acc[key] = acc.get(key, ZERO) + v
    return Multivector(sig, acc)


# ---------------------------------------------------------------------------
# Clifford group machinery
# ---------------------------------------------------------------------------

def mv_inverse(S: Multivector) -> Multivector:
    """Inverse of a product of anisotropic vectors, via S~ / (S S~).

    For S = u_1...u_k the reversal S~ satisfies S S~ = prod(-eta(u_i,u_i)),
    a nonzero scalar; anything whose S S~ is not a nonzero scalar is
    rejected.
    """
    rev = S.reversal()
    prod = S.mul(rev)
    c = prod.scalar_part()
    if prod.grades() - {0} or c.is_zero():
        raise ValueError("element is not invertible by the vector-product formula")
    return rev.scale(c.inverse())


def twisted_adjoint(S: Multivector, u: Multivector) -> Multivector:
    """l(S)u = alpha(S) u S^{-1}; maps grade-1 to grade-1 for Clifford-group S."""
    if u.grades() not in ({1}, set()):
        raise ValueError("twisted adjoint expects a grade-1 argument")
    out = S.grading().mul(u).mul(mv_inverse(S))
    if out.grades() - {1}:
        raise ValueError("twisted adjoint left the grade-1 subspace")
    return out


def eta_inner(u: Multivector, w: Multivector) -> GaussianRational:
    """eta(u, w) for grade-1 arguments, from {u, w} = -2 eta(u, w)."""
    anti = u.mul(w) + w.mul(u)
    if anti.grades() - {0}:
        raise ValueError("inner product defined on grade-1 elements only")
    return anti.scalar_part() * gr(Fraction(-1, 2))


def spin_generator(a: int, b: int, sig: Signature) -> Multivector:
    """v_ab = (1/4)[v_a, v_b], a grade-2 element of the spin Lie algebra."""
    va = Multivector.basis_vector(sig, a)
    vb = Multivector.basis_vector(sig, b)
    quarter = gr(Fraction(1, 4))
    return (va.mul(vb) - vb.mul(va)).scale(quarter)


def spin_generator_matrix(a: int, b: int, sig: Signature) -> ExactMatrix:
    """Matrix of u -> [v_ab, u] on V: entries delta^d_b eta_ac - delta^d_a eta_bc."""
    if a == b:
        raise ValueError("spin generator needs distinct indices")
    D = sig.dim
    rows = [[ZERO] * D for _ in range(D)]
    for c in range(D):
        rows[b][c] = rows[b][c] + gr(sig.eta(a) if a == c else 0)
        rows[a][c] = rows[a][c] - gr(sig.eta(b) if b == c else 0)
    return ExactMatrix(rows)


def spin_generator_action(a: int, b: int, u: Multivector) -> Multivector:
    """[v_ab, u] computed inside the algebra (cross-check for the matrix form)."""
    vab = spin_generator(a, b, u.sig)
    return vab.mul(u) - u.mul(vab)
