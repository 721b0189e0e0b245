"""Supercommutative coefficient algebra and parity-tagged spinors.

Spinor components live in a Grassmann algebra with two kinds of symbolic
generators: odd ones (anticommuting, square zero) and even ones (commuting
polynomial symbols).  Flip and Fierz laws checked over this algebra are
polynomial identities in the components, so passing them proves the law for
every numerical value at once.

The star operation conjugates scalar coefficients (i -> -i), fixes the
generators and reverses odd factors, (ab)^* = b^* a^*.  The paper never
defines conjugation on Grassmann coefficients; this is the minimal
convention making the Majorana constraint solvable, and it is recorded as a
convention of this package, not as source material.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clifford import popcount, reorder_sign
from .conjugation import ConjugationData, ConjugationError
from .exactnum import ExactMatrix, GaussianRational, ONE, ZERO, gr, null_space
from .gammarep import GammaRep, gamma_anti

MAX_ODD = 16
MAX_EVEN = 16


class GeneratorPool:
    """Allocates fresh odd/even generator ids; confine one pool to one thread."""

    def __init__(self):
        self._odd_names: list[str] = []
        self._even_names: list[str] = []

    def odd(self, name: str) -> "SuperElement":
        if len(self._odd_names) >= MAX_ODD:
            raise ValueError(f"odd generator budget ({MAX_ODD}) exhausted")
        idx = len(self._odd_names)
        self._odd_names.append(name)
        return SuperElement({(1 << idx, ()): ONE})

    def even(self, name: str) -> "SuperElement":
        if len(self._even_names) >= MAX_EVEN:
            raise ValueError(f"even generator budget ({MAX_EVEN}) exhausted")
        idx = len(self._even_names)
        self._even_names.append(name)
        return SuperElement({(0, (idx,)): ONE})

    def odd_name(self, idx: int) -> str:
        return self._odd_names[idx]

    def even_name(self, idx: int) -> str:
        return self._even_names[idx]


def _merge_even(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


class SuperElement:
    """Sparse element: {(odd generator bitmask, even multiset): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if not isinstance(c, GaussianRational):
                    c = gr(c)
                if not c.is_zero():
                    clean[key] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SuperElement is immutable")

    @staticmethod
    def const(c) -> "SuperElement":
        return SuperElement({(0, ()): c})

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, ZERO) + c
        return SuperElement(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return SuperElement({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict = {}
        for (o1, e1), c1 in self.terms.items():
            for (o2, e2), c2 in other.terms.items():
                if o1 & o2:
                    continue  # theta^2 = 0
                sign = reorder_sign(o1, o2)
                key = (o1 | o2, _merge_even(e1, e2))
                v = c1 * c2 * sign
                acc[key] = acc.get(key, ZERO) + v
        return SuperElement(acc)

    def __rmul__(self, other):
        # scalars are even: left and right products agree
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    # -- grading ---------------------------------------------------------------

    def parity(self):
        """0, 1, or None for a mixed element (0 for the zero element)."""
        ps = {popcount(o) & 1 for (o, _e) in self.terms}
        if not ps:
            return 0
        if len(ps) > 1:
            return None
        return ps.pop()

    def koszul(self, degree: int) -> "SuperElement":
        """Sign for sliding past `degree` odd form factors: negate odd part."""
        if degree % 2 == 0:
            return self
        return SuperElement(
            {k: (-c if popcount(k[0]) & 1 else c) for k, c in self.terms.items()}
        )

    def star(self) -> "SuperElement":
        """Conjugate coefficients, fix generators, reverse odd factor order."""
        out = {}
        for (o, e), c in self.terms.items():
            m = popcount(o)
            sign = -1 if (m * (m - 1) // 2) & 1 else 1
            out[(o, e)] = c.conj() * sign
        return SuperElement(out)

    conj = star  # matrix-level adjoints reuse the star

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def scalar_value(self) -> GaussianRational:
        if set(self.terms) - {(0, ())}:
            raise ValueError("element has generator content")
        return self.terms.get((0, ()), ZERO)

    def render(self, pool: GeneratorPool | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (o, e) in sorted(self.terms, key=lambda k: (popcount(k[0]), k[0], k[1])):
            c = self.terms[(o, e)]
            factors = []
            for i in range(o.bit_length()):
                if o >> i & 1:
                    factors.append(pool.odd_name(i) if pool else f"th{i}")
            for i in e:
                factors.append(pool.even_name(i) if pool else f"x{i}")
            body = "*".join(factors)
            parts.append(f"({c})" + (f"*{body}" if body else ""))
        return " + ".join(parts)

    __repr__ = render


def _coerce(x):
    if isinstance(x, SuperElement):
        return x
    if isinstance(x, (int, GaussianRational)):
        return SuperElement.const(x if isinstance(x, GaussianRational) else gr(x))
    return NotImplemented


SUPER_ZERO = SuperElement()
SUPER_ONE = SuperElement.const(ONE)


# ---------------------------------------------------------------------------
# Spinors with supercommutative components
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuperSpinor:
    components: tuple[SuperElement, ...]
    parity: int

    def __post_init__(self):
        for c in self.components:
            p = c.parity()
            if p is not None and p != self.parity and not c.is_zero():
                raise ValueError("component parity disagrees with the spinor tag")

    def __len__(self):
        return len(self.components)


def generic_majorana(
    label: str,
    parity: int,
    conj: ConjugationData,
    rep: GammaRep,
    pool: GeneratorPool,
) -> SuperSpinor:
    """A spinor with fresh symbolic components subject only to B psi^* = psi.

    The reality constraint is antilinear, so it is solved over Q on the
    (Re, Im) decomposition; the fixed space has real dimension 2^k and each
    basis vector receives one fresh generator of the requested parity.
    """
    if conj.epsilon != 1:
        raise ConjugationError("generic Majorana spinors need epsilon = +1")
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    n = rep.size
    # phi(x + i y) = B(x - i y); fixed points of the R-linear block map
    # [[ReB, ImB], [ImB, -ReB]] on (x, y).
    blocks = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            b = conj.B.data[i][j]
            blocks[i][j] = gr(b.re)
            blocks[i][n + j] = gr(b.im)
            blocks[n + i][j] = gr(b.im)
            blocks[n + i][n + j] = gr(-b.re)
    for i in range(2 * n):
        blocks[i][i] = blocks[i][i] - ONE
    basis = null_space(ExactMatrix(blocks))
    if len(basis) != n:
        raise ConjugationError(
            f"fixed space of the real structure has dimension {len(basis)}, expected {n}"
        )
    comps = [SUPER_ZERO] * n
    for idx, vec in enumerate(basis):
        g = pool.odd(f"{label}{idx}") if parity else pool.even(f"{label}{idx}")
        for i in range(n):
            x = vec.data[i][0]
            y = vec.data[n + i][0]
            coeff = x + y * gr(0, 1)
            if not coeff.is_zero():
                comps[i] = comps[i] + g * coeff
    return SuperSpinor(tuple(comps), parity)


def generic_dirac(label: str, parity: int, rep: GammaRep, pool: GeneratorPool) -> SuperSpinor:
    """Unconstrained spinor: one fresh complex pair of generators per component."""
    comps = []
    for i in range(rep.size):
        if parity:
            a = pool.odd(f"{label}{i}r")
            b = pool.odd(f"{label}{i}i")
        else:
            a = pool.even(f"{label}{i}r")
            b = pool.even(f"{label}{i}i")
        comps.append(a + b * gr(0, 1))
    return SuperSpinor(tuple(comps), parity)


def spinor_bar(psi: SuperSpinor, rep: GammaRep) -> list[SuperElement]:
    """Dirac adjoint row: (psi^dagger Gamma_0)_beta = sum_a psi_a^* (G0)_{a beta}."""
    g0 = rep.gammas[0]
    n = rep.size
    starred = [c.star() for c in psi.components]
    out = []
    for beta in range(n):
        acc = SUPER_ZERO
        for alpha in range(n):
            e = g0.data[alpha][beta]
            if e.is_zero():
                continue
            acc = acc + starred[alpha] * e
        out.append(acc)
    return out


def apply_matrix(M: ExactMatrix, psi: SuperSpinor) -> SuperSpinor:
    n = len(psi.components)
    comps = []
    for i in range(n):
        acc = SUPER_ZERO
        for j in range(n):
            e = M.data[i][j]
            if e.is_zero():
                continue
            acc = acc + e * psi.components[j]
        comps.append(acc)
    parity = psi.parity
    return SuperSpinor(tuple(comps), parity)


def bilinear(chi: SuperSpinor, indices, psi: SuperSpinor, rep: GammaRep) -> SuperElement:
    """chi-bar Gamma^{a1..aN} psi as a scalar supernumber (upper indices)."""
    M = gamma_anti(rep, list(indices), upper=True)
    bar = spinor_bar(chi, rep)
    acc = SUPER_ZERO
    for b in range(rep.size):
        for d in range(rep.size):
            e = M.data[b][d]
            if e.is_zero():
                continue
            acc = acc + bar[b] * (e * psi.components[d])
    return acc
