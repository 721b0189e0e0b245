"""Exact scalars and dense linear algebra over the Gaussian rationals Q(i).

Every quantity in this package is a GaussianRational (or a matrix of them),
so identity checks reduce to exact equality -- there are no tolerances
anywhere.  Rank is computed by fraction-free (Bareiss) elimination over the
Gaussian integers after clearing denominators; null spaces come from exact
reduced row echelon form over the field.
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


class GaussianRational:
    """An exact complex scalar re + im*i with rational re, im."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring / field operations ------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero GaussianRational")
        return GaussianRational(self.re / n, -self.im / n)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2, an exact rational."""
        return self.re * self.re + self.im * self.im

    def koszul(self, degree: int) -> "GaussianRational":
        # Plain scalars are Grassmann-even; sliding past forms costs no sign.
        return self

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    # -- JSON wire format: two-element array of rational strings ----------

    def to_json(self):
        return [str(self.re), str(self.im)]

    @staticmethod
    def from_json(obj) -> "GaussianRational":
        re, im = obj
        return GaussianRational(Fraction(re), Fraction(im))


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
MINUS_ONE = GaussianRational(-1)
I = GaussianRational(0, 1)


def gr(re=0, im=0) -> GaussianRational:
    """Shorthand constructor, accepts ints, Fractions or 'p/q' strings."""
    return GaussianRational(re, im)


class ExactMatrix:
    """Dense matrix with exact entries.

    Entries are GaussianRational by default, but every ring operation is
    duck-typed so matrices over other exact coefficient rings (such as the
    supercommutative scalars used for spinor components) work unchanged.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [list(row) for row in data]
        if not data:
            raise ValueError("empty matrix")
        ncols = len(data[0])
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @staticmethod
    def zeros(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix([[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def scalar(n: int, c) -> "ExactMatrix":
        return ExactMatrix(
            [[c if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def column(entries) -> "ExactMatrix":
        return ExactMatrix([[e] for e in entries])

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def __add__(self, other):
        self._check_shape(other)
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other):
        self._check_shape(other)
        return ExactMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __neg__(self):
        return ExactMatrix([[-a for a in row] for row in self.data])

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[c * a for a in row] for row in self.data])

    def __matmul__(self, other):
        return self.mul(other)

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        bdata = other.data
        bcols = other.cols
        out = []
        for arow in self.data:
            acc = [None] * bcols
            for k, a in enumerate(arow):
                if a.is_zero():
                    continue
                for j, b in enumerate(bdata[k]):
                    if b.is_zero():
                        continue
                    p = a * b
                    acc[j] = p if acc[j] is None else acc[j] + p
            out.append([ZERO if v is None else v for v in acc])
        return ExactMatrix(out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def conj(self) -> "ExactMatrix":
        return ExactMatrix([[a.conj() for a in row] for row in self.data])

    def adjoint(self) -> "ExactMatrix":
        """Conjugate transpose."""
        return self.conj().transpose()

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        t = ZERO
        for i in range(self.rows):
            t = t + self.data[i][i]
        return t

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.data for a in row)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.rows, self.cols))

    def scalar_multiple_of_identity(self):
        """Return c when self == c*Id, else None."""
        if self.rows != self.cols:
            return None
        c = self.data[0][0]
        for i in range(self.rows):
            for j in range(self.cols):
                want = c if i == j else ZERO
                if not (self.data[i][j] - want).is_zero():
                    return None
        return c

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def pretty(self) -> str:
        cells = [[str(a) for a in row] for row in self.data]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(
            "[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells
        )

    def to_json(self):
        return [[a.to_json() for a in row] for row in self.data]

    @staticmethod
    def from_json(obj) -> "ExactMatrix":
        return ExactMatrix(
            [[GaussianRational.from_json(a) for a in row] for row in obj]
        )

    def _check_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


# ---------------------------------------------------------------------------
# Fraction-free elimination over the Gaussian integers (for rank)
# ---------------------------------------------------------------------------

def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gi_divexact(a, b):
    # (a / b) in Z[i]; Bareiss guarantees the division is exact.
    n = b[0] * b[0] + b[1] * b[1]
    num = _gi_mul(a, (b[0], -b[1]))
    q0, r0 = divmod(num[0], n)
    q1, r1 = divmod(num[1], n)
    if r0 or r1:
        raise ArithmeticError("non-exact division in fraction-free elimination")
    return (q0, q1)


def _gaussian_integer_rows(A: ExactMatrix):
    rows = []
    for row in A.data:
        den = 1
        for e in row:
            den = den * e.re.denominator // _gcd(den, e.re.denominator)
            den = den * e.im.denominator // _gcd(den, e.im.denominator)
        rows.append(
            [
                (int(e.re * den), int(e.im * den))
                for e in row
            ]
        )
    return rows


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def mat_rank(A: ExactMatrix) -> int:
    """Exact rank over Q(i) via Bareiss fraction-free elimination."""
    M = _gaussian_integer_rows(A)
    nrows, ncols = A.rows, A.cols
    rank = 0
    prev = (1, 0)
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if M[i][c] != (0, 0):
                pivot = i
                break
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        pv = M[r][c]
        for i in range(r + 1, nrows):
            mic = M[i][c]
            if mic == (0, 0):
                # still rescale untouched rows so the Bareiss invariant holds
                for j in range(c + 1, ncols):
                    M[i][j] = _gi_divexact(_gi_mul(pv, M[i][j]), prev)
                continue
            for j in range(c + 1, ncols):
                M[i][j] = _gi_divexact(
                    _gi_sub(_gi_mul(pv, M[i][j]), _gi_mul(mic, M[r][j])), prev
                )
            M[i][c] = (0, 0)
        prev = pv
        r += 1
        rank += 1
        if r == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# Exact reduced row echelon form over Q(i) (for kernels and solves)
# ---------------------------------------------------------------------------

def _rref(rows, ncols):
    """In-place RREF; returns the list of pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def null_space(A: ExactMatrix) -> list[ExactMatrix]:
    """Basis of {v : A v = 0}, as exact column vectors (empty when trivial)."""
    rows = [list(r) for r in A.data]
    pivots = _rref(rows, A.cols)
    pivot_set = set(pivots)
    free = [c for c in range(A.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * A.cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(ExactMatrix.column(v))
    return basis


def solve(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Solve A X = B exactly for invertible square A."""
    if A.rows != A.cols:
        raise ValueError("solve needs a square matrix")
    if B.rows != A.rows:
        raise ValueError("shape mismatch in solve")
    aug = [list(ra) + list(rb) for ra, rb in zip(A.data, B.data)]
    pivots = _rref(aug, A.cols + B.cols)
    if pivots[: A.cols] != list(range(A.cols)):
        raise ValueError("matrix is singular")
    return ExactMatrix([row[A.cols :] for row in aug[: A.rows]])


def inverse(A: ExactMatrix) -> ExactMatrix:
    return solve(A, ExactMatrix.identity(A.rows))
