"""Exact rational matrix kernels.

Everything here works on :class:`fractions.Fraction` entries, so results
are exact.  The matrices involved downstream are small (intersection
matrices of schemes with a handful of classes), which keeps pure Python
arithmetic cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import (
    FormatError,
    JointEigenspaceNotSimple,
    NonIntegralEntries,
    NonIntegralSpectrum,
    NonSquare,
    Singular,
)


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted in exact matrices")
    return Fraction(value)


class RationalMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(_frac(v) for v in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows")
        self._rows = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "RationalMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self._rows]

    def __iter__(self):
        return iter(self._rows)

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in r) for r in self._rows)
        return f"RationalMatrix([{body}])"

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            [a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            [a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([-a for a in r] for r in self._rows)

    def scale(self, c) -> "RationalMatrix":
        c = _frac(c)
        return RationalMatrix([c * a for a in r] for r in self._rows)

    def __mul__(self, c):
        if isinstance(c, RationalMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._rows))
        return RationalMatrix(
            [sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows
        )

    def apply(self, vec: Sequence) -> List[Fraction]:
        return [sum(a * _frac(b) for a, b in zip(r, vec)) for r in self._rows]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for r in self._rows for v in r)

    def permuted(self, row_order: Sequence[int] = None, col_order: Sequence[int] = None) -> "RationalMatrix":
        """Return the matrix whose row ``a`` is old row ``row_order[a]`` (same for columns)."""
        ro = range(self.rows) if row_order is None else row_order
        co = range(self.cols) if col_order is None else col_order
        return RationalMatrix([self._rows[i][j] for j in co] for i in ro)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # text format: one row per line, entries "a" or "a/b"
    def to_text(self) -> str:
        return "".join(" ".join(str(v) for v in r) + "\n" for r in self._rows)

    @classmethod
    def from_text(cls, text: str) -> "RationalMatrix":
        rows = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            row = []
            for col, tok in enumerate(line.split(), start=1):
                row.append(_parse_rational(tok, lineno, col))
            if rows and len(row) != len(rows[0]):
                raise FormatError(f"expected {len(rows[0])} entries, got {len(row)}", lineno)
            rows.append(row)
        if not rows:
            raise FormatError("empty matrix")
        return cls(rows)


def _parse_rational(tok: str, line: int, col: int) -> Fraction:
    num, _, den = tok.partition("/")
    try:
        a = int(num)
        b = int(den) if den else 1
    except ValueError:
        raise FormatError(f"bad rational entry {tok!r}", line, col) from None
    if b <= 0:
        raise FormatError(f"denominator must be positive in {tok!r}", line, col)
    value = Fraction(a, b)
    if value.denominator != b:
        raise FormatError(f"entry {tok!r} not in lowest terms", line, col)
    return value


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c) or (0,))

    @property
    def degree(self) -> int:
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_matrix(self, m: RationalMatrix) -> RationalMatrix:
        n = m.rows
        acc = RationalMatrix.zeros(n, n)
        eye = RationalMatrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + eye.scale(c)
        return acc

    def deflate(self, root: int) -> "IntPolynomial":
        """Divide by (x - root); the root must be exact."""
        out = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        if out.pop() != 0:
            raise ValueError(f"{root} is not a root")
        return IntPolynomial(tuple(reversed(out)))

    def __str__(self):
        terms = []
        for power, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
            else:
                coef = f"{c:+d}"
            terms.append(f"{coef}{mono}")
        s = " ".join(terms) or "0"
        return s[1:] if s.startswith("+") else s


def _require_square_integral(m: RationalMatrix) -> List[List[int]]:
    if not m.is_square:
        raise NonSquare(f"matrix is {m.rows}x{m.cols}")
    if not m.is_integral():
        raise NonIntegralEntries("matrix has non-integral entries")
    return [[int(v) for v in r] for r in m]


def char_poly(m: RationalMatrix) -> IntPolynomial:
    """det(xI - M) for an integral square matrix.

    Berkowitz's algorithm: division free, so every intermediate stays an
    integer and no fraction growth occurs.
    """
    a = _require_square_integral(m)
    n = len(a)
    # vect holds coefficients highest degree first, for det(xI - A_k)
    vect = [1, -a[0][0]]
    for k in range(1, n):
        # A_{k+1} = [[A_k, C], [R, a_kk]]
        r_row = a[k][:k]
        c_col = [a[i][k] for i in range(k)]
        sub = [row[:k] for row in a[:k]]
        # Toeplitz column: 1, -a_kk, -R C, -R A C, -R A^2 C, ...
        col = [1, -a[k][k]]
        v = c_col
        for _ in range(k):
            col.append(-sum(x * y for x, y in zip(r_row, v)))
            v = [sum(x * y for x, y in zip(row, v)) for row in sub]
        # multiply the (k+2)x(k+1) lower triangular Toeplitz matrix by vect
        new = []
        for i in range(k + 2):
            new.append(sum(col[i - j] * vect[j] for j in range(min(i, k) + 1)))
        vect = new
    return IntPolynomial(tuple(reversed(vect)))


def det(m: RationalMatrix) -> Fraction:
    """Determinant by Bareiss elimination (exact, fraction free for integral input)."""
    if not m.is_square:
        raise NonSquare(f"matrix is {m.rows}x{m.cols}")
    a = m.tolist()
    n = len(a)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _eigenvalue_bound(a: List[List[int]]) -> int:
    # Gershgorin: every eigenvalue has modulus at most the max absolute row sum
    return max(sum(abs(v) for v in row) for row in a)


def integer_eigenvalues(m: RationalMatrix) -> List[int]:
    """All eigenvalues with multiplicity, sorted descending.

    Raises :class:`NonIntegralSpectrum` unless every root of the
    characteristic polynomial is an integer.
    """
    a = _require_square_integral(m)
    poly = char_poly(m)
    roots: List[int] = []
    while poly.degree > 0 and poly.coeffs[0] == 0:
        roots.append(0)
        poly = IntPolynomial(poly.coeffs[1:])
    bound = _eigenvalue_bound(a)
    candidate = 1
    while poly.degree > 0 and candidate <= bound:
        progressed = False
        for r in (candidate, -candidate):
            while poly.degree > 0 and poly.coeffs[0] % r == 0 and poly(r) == 0:
                poly = poly.deflate(r)
                roots.append(r)
                progressed = True
        if not progressed:
            candidate += 1
    if poly.degree > 0:
        raise NonIntegralSpectrum(f"characteristic polynomial has non-integral factor {poly}")
    return sorted(roots, reverse=True)


def rat_inverse(m: RationalMatrix) -> RationalMatrix:
    if not m.is_square:
        raise NonSquare(f"matrix is {m.rows}x{m.cols}")
    n = m.rows
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [v / p for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return RationalMatrix(row[n:] for row in a)


def nullspace(m: RationalMatrix) -> List[List[Fraction]]:
    """Basis of the right kernel, from the reduced row echelon form."""
    a = m.tolist()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [v / p for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def common_eigenbasis(family: Sequence[RationalMatrix]) -> List[Tuple[List[Fraction], Tuple[int, ...]]]:
    """Joint eigenvectors of a commuting, simultaneously diagonalizable family.

    Starting from the whole space, each eigenspace is split by family[1],
    then family[2], and so on.  Every joint eigenspace must end up
    one-dimensional.  Returns ``(vector, eigenvalues)`` pairs where
    ``eigenvalues[i]`` is the eigenvalue of ``family[i]``.
    """
    if not family:
        raise ValueError("empty family")
    dim = family[0].rows
    for mat in family:
        if mat.shape != (dim, dim):
            raise NonSquare("family members must be square of equal size")
    # each space is a list of basis vectors (columns)
    spaces = [[[Fraction(int(i == j)) for i in range(dim)] for j in range(dim)]]
    for mat in family[1:] if len(family) > 1 else family:
        if all(len(s) == 1 for s in spaces):
            break
        values = sorted(set(integer_eigenvalues(mat)), reverse=True)
        refined = []
        for basis in spaces:
            if len(basis) == 1:
                refined.append(basis)
                continue
            basis_mat = RationalMatrix(zip(*basis))  # dim x len(basis)
            image = mat @ basis_mat
            found = 0
            for lam in values:
                # coefficients c with (M - lam) V c = 0
                shifted = image - basis_mat.scale(lam)
                kernel = nullspace(shifted)
                if kernel:
                    refined.append([basis_mat.apply(c) for c in kernel])
                    found += len(kernel)
            if found != len(basis):
                raise NonIntegralSpectrum("family is not diagonalizable over the integers")
        spaces = refined
    if any(len(s) != 1 for s in spaces):
        big = max(len(s) for s in spaces)
        raise JointEigenspaceNotSimple(f"a joint eigenspace of dimension {big} remains")
    out = []
    for (vec,) in spaces:
        vec = _normalize(vec)
        lams = []
        for mat in family:
            img = mat.apply(vec)
            piv = next(i for i, v in enumerate(vec) if v != 0)
            lam = img[piv] / vec[piv]
            if any(x != lam * v for x, v in zip(img, vec)):
                raise JointEigenspaceNotSimple("vector is not a joint eigenvector")
            if lam.denominator != 1:
                raise NonIntegralSpectrum(f"eigenvalue {lam}")
            lams.append(int(lam))
        out.append((vec, tuple(lams)))
    return out


def _normalize(vec: List[Fraction]) -> List[Fraction]:
    piv = next(v for v in vec if v != 0)
    return [v / piv for v in vec]
