"""Mod-8 classification of real Clifford algebras and their even subalgebras,
the mod-2 complex classification, and the census of irreducible pinor/spinor
representations.

The tables are encoded data, but `validate_signature` cross-checks every
encoded entry against structural evidence computed blade-by-blade: total
dimension, the dimension of the center (solved from [x, v_a] = 0 over the
blade basis), and the sign of the squared volume element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clifford import Multivector, Signature, blade_mul, popcount


@dataclass(frozen=True)
class AlgebraKind:
    """A matrix algebra K(2^(N/2)) or a direct sum of two copies of it."""

    field: str  # 'R' | 'C' | 'H'
    n_exponent: int  # matrix size is 2^(N/2) with N = n_exponent
    double: bool = False

    def __post_init__(self):
        if self.field not in ("R", "C", "H"):
            raise ValueError(f"unknown base field {self.field!r}")
        if self.n_exponent % 2:
            raise ValueError("N must be even so the matrix size 2^(N/2) is integral")

    @property
    def matrix_size(self) -> int:
        return 1 << (self.n_exponent // 2)

    @property
    def real_dim(self) -> int:
        per_entry = {"R": 1, "C": 2, "H": 4}[self.field]
        d = per_entry * self.matrix_size**2
        return 2 * d if self.double else d

    @property
    def center_dim(self) -> int:
        """Real dimension of the center: R/H -> 1, C -> 2, doubled twice that."""
        single = 2 if self.field == "C" else 1
        return 2 * single if self.double else single

    def render(self) -> str:
        body = self.field if self.matrix_size == 1 else f"{self.field}({self.matrix_size})"
        return f"{body}+{body}" if self.double else body

    __str__ = render


@dataclass(frozen=True)
class RepCensus:
    """Counts and kind of the irreducible pinor and spinor representations."""

    pinors: int
    spinors: int
    structure: str  # 'real' | 'complex' | 'quaternionic' (spinor rep)
    weyl_eigenvalues: tuple[str, str] | None  # even D only, from v_*^2


# -- Table: full real Clifford algebra, keyed by (r - s) mod 8 ---------------
# entries: (field, N as offset from D, double)
_REAL_FULL = {
    0: ("R", 0, False),
    6: ("R", 0, False),
    2: ("H", -2, False),
    4: ("H", -2, False),
    1: ("C", -1, False),
    5: ("C", -1, False),
    3: ("H", -3, True),
    7: ("R", -1, True),
}

# -- Table: even subalgebra, keyed by (r - s) mod 8 ---------------------------
_REAL_EVEN = {
    1: ("R", -1, False),
    7: ("R", -1, False),
    3: ("H", -3, False),
    5: ("H", -3, False),
    2: ("C", -2, False),
    6: ("C", -2, False),
    4: ("H", -4, True),
    0: ("R", -2, True),
}


def classify_real(sig: Signature) -> tuple[AlgebraKind, AlgebraKind]:
    """(full algebra, even subalgebra) for C(r, s); requires D >= 1."""
    if sig.dim < 1:
        raise ValueError("classification needs at least one generator")
    key = (sig.r - sig.s) % 8
    field, off, double = _REAL_FULL[key]
    full = AlgebraKind(field, sig.dim + off, double)
    field, off, double = _REAL_EVEN[key]
    even = AlgebraKind(field, sig.dim + off, double)
    return full, even


def classify_complex(D: int) -> tuple[AlgebraKind, AlgebraKind]:
    """(full, even) for the complex Clifford algebra over C^D."""
    if D < 1:
        raise ValueError("classification needs at least one generator")
    if D % 2 == 0:
        full = AlgebraKind("C", D, False)
        even = AlgebraKind("C", D - 2, True)
    else:
        full = AlgebraKind("C", D - 1, True)
        even = AlgebraKind("C", D - 1, False)
    return full, even


def volume_square_sign(sig: Signature) -> int:
    """Sign of v_*^2 (+1 or -1), computed from the blade product."""
    full = (1 << sig.dim) - 1
    c, m = blade_mul(full, full, sig)
    assert m == 0
    return 1 if c == 1 else -1


def pinor_count(sig: Signature) -> int:
    return 2 if (sig.r - sig.s) % 4 in (1, 3) else 1


def spinor_count(sig: Signature) -> int:
    return 2 if (sig.r - sig.s) % 4 in (0, 2) else 1


def rep_census(sig: Signature) -> RepCensus:
    mod8 = (sig.r - sig.s) % 8
    if mod8 == 0:
        structure = "real"
    elif mod8 in (1, 7):
        structure = "real"
    elif mod8 in (2, 6):
        structure = "complex"
    else:  # 3, 4, 5
        structure = "quaternionic"
    weyl = None
    if sig.dim % 2 == 0:
        weyl = ("1", "-1") if volume_square_sign(sig) == 1 else ("i", "-i")
    return RepCensus(pinor_count(sig), spinor_count(sig), structure, weyl)


# ---------------------------------------------------------------------------
# Structural validation
# ---------------------------------------------------------------------------

def _blade_is_central(mask: int, D: int) -> bool:
    # v_a v_S = (-1)^(|S| - [a in S]) v_S v_a: the commutator system is
    # diagonal in the blade basis, one parity condition per generator.
    k = popcount(mask)
    for a in range(D):
        swaps = k - (1 if mask >> a & 1 else 0)
        if swaps % 2:
            return False
    return True


def center_dim_structural(sig: Signature, even_part: bool = False) -> int:
    """Dimension of the center, from [x, v_a] = 0 solved over the blade basis.

    For the even subalgebra the commutant condition is taken against the
    grade-2 products v_a v_b, which generate it.
    """
    D = sig.dim
    if not even_part:
        return sum(1 for m in range(1 << D) if _blade_is_central(m, D))
    # Even blades vs grade-2 generators: v_ab v_S = (-1)^t v_S v_ab with
    # t = |S ^ {a}| + |S ^ {b}| counted as above; commutes iff the combined
    # swap parity vanishes for all a < b.
    count = 0
    for m in range(1 << D):
        if popcount(m) % 2:
            continue
        central = True
        for a in range(D):
            for b in range(a + 1, D):
                swaps = (popcount(m) - (1 if m >> a & 1 else 0)) + (
                    popcount(m) - (1 if m >> b & 1 else 0)
                )
                if swaps % 2:
                    central = False
                    break
            if not central:
                break
        if central:
            count += 1
    return count


def dense_center_dim(sig: Signature) -> int:
    """Center dimension by brute force over all blades (oracle for small D)."""
    D = sig.dim
    count = 0
    for m in range(1 << D):
        x = Multivector(sig, {m: 1})
        if all(
            (x.mul(Multivector.basis_vector(sig, a))
             - Multivector.basis_vector(sig, a).mul(x)).is_zero()
            for a in range(D)
        ):
            count += 1
    return count


def validate_signature(sig: Signature) -> dict:
    """Cross-check the encoded table entry for one signature.

    Returns a report dict; raises AssertionError on any mismatch.
    """
    full, even = classify_real(sig)
    D = sig.dim
    report = {"r": sig.r, "s": sig.s, "full": str(full), "even": str(even)}

    assert full.real_dim == 1 << D, (sig, full)
    assert even.real_dim == 1 << (D - 1), (sig, even)

    center = center_dim_structural(sig)
    assert center == full.center_dim, (sig, center, full)
    report["center"] = center
    center_even = center_dim_structural(sig, even_part=True)
    assert center_even == even.center_dim, (sig, center_even, even)

    if D % 2 == 0:
        sign = volume_square_sign(sig)
        assert sign == (-1) ** (((sig.r - sig.s) // 2) % 2), (sig, sign)
        report["volume_square"] = sign

    # Even-subalgebra relations.  Dropping a spacelike generator keeps the
    # metric of the rest (w_a = v_0' v_a squares like v_a), dropping a
    # timelike one flips it, so C_0(r+1, s) = C(r, s) and
    # C_0(r, s+1) = C(s, r); both tables satisfy exactly these.
    if sig.r >= 1 and D >= 2:
        sub_full, _ = classify_real(Signature(sig.r - 1, sig.s))
        assert even == sub_full, (sig, even, sub_full)
    if sig.s >= 1 and D >= 2:
        sub_full, _ = classify_real(Signature(sig.s - 1, sig.r))
        assert even == sub_full, (sig, even, sub_full)
    _, even_swapped = classify_real(Signature(sig.s, sig.r))
    assert even == even_swapped, (sig, even, even_swapped)

    # Complexified dimension count: C(V) tensor C has real dimension 2*2^D,
    # independent of the signature.
    cfull, ceven = classify_complex(D)
    assert cfull.real_dim == 2 * (1 << D)
    assert ceven.real_dim == 2 * (1 << (D - 1))
    return report


def classification_records(max_rs: int = 8) -> list[dict]:
    """Table rows {r, s, full, even, pinors, spinors, structure} for a range."""
    records = []
    for r in range(max_rs + 1):
        for s in range(max_rs + 1):
            if r + s < 1:
                continue
            sig = Signature(r, s)
            full, even = classify_real(sig)
            census = rep_census(sig)
            records.append(
                {
                    "r": r,
                    "s": s,
                    "full": str(full),
                    "even": str(even),
                    "pinors": census.pinors,
                    "spinors": census.spinors,
                    "structure": census.structure,
                    "weyl": list(census.weyl_eigenvalues)
                    if census.weyl_eigenvalues
                    else None,
                }
            )
    return records
