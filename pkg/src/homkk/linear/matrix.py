"""Exact integer matrices and the normal forms everything else is built on.

:class:`IntMatrix` is an immutable row-major matrix of Python integers. Products
and normal forms are delegated to :mod:`sympy.polys.matrices` over ``ZZ`` so no
intermediate result can overflow. The lattice helpers at the bottom of the module
(:func:`solve_linear`, :func:`kernel_basis`, :func:`hermite_basis`) are the only
places where Smith and Hermite forms are consumed directly.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from homkk.config.dotenv_config import get_env_settings
from homkk.errors import MatrixTooLargeError, ShapeError

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "MATRIX"})

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major.

    Attributes
    ----------
    nrows : int
        Number of rows
    ncols : int
        Number of columns
    entries : tuple[int, ...]
        ``nrows * ncols`` integers in row-major order

    """

    nrows: int
    ncols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            msg = f"negative matrix shape {self.nrows}x{self.ncols}"
            raise ShapeError(msg)
        if len(self.entries) != self.nrows * self.ncols:
            msg = f"{self.nrows}x{self.ncols} matrix needs {self.nrows * self.ncols} entries, got {len(self.entries)}"
            raise ShapeError(msg)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "IntMatrix":
        """Build a matrix from a sequence of rows.

        ``ncols`` is only needed when there are no rows to infer it from.
        """
        materialized = [tuple(int(x) for x in row) for row in rows]
        width = len(materialized[0]) if materialized else (ncols or 0)
        if ncols is not None and materialized and width != ncols:
            msg = f"rows have length {width}, expected {ncols}"
            raise ShapeError(msg)
        for index, row in enumerate(materialized):
            if len(row) != width:
                msg = f"row {index} has length {len(row)}, expected {width}"
                raise ShapeError(msg)
        return cls(len(materialized), width, tuple(x for row in materialized for x in row))

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]], nrows: int) -> "IntMatrix":
        """Build a matrix whose columns are the given vectors of length ``nrows``."""
        cols = [tuple(int(x) for x in col) for col in columns]
        for index, col in enumerate(cols):
            if len(col) != nrows:
                msg = f"column {index} has length {len(col)}, expected {nrows}"
                raise ShapeError(msg)
        return cls(nrows, len(cols), tuple(cols[j][i] for i in range(nrows) for j in range(len(cols))))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], nrows: int | None = None, ncols: int | None = None) -> "IntMatrix":
        """Rectangular diagonal matrix with ``values`` on the main diagonal."""
        r = len(values) if nrows is None else nrows
        c = len(values) if ncols is None else ncols
        return cls(r, c, tuple(values[i] if i == j and i < len(values) else 0 for i in range(r) for j in range(c)))

    @classmethod
    def column_vector(cls, values: Sequence[int]) -> "IntMatrix":
        return cls(len(values), 1, tuple(int(x) for x in values))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.ncols : (i + 1) * self.ncols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.ncols + j] for i in range(self.nrows))

    def rows(self) -> list[Vector]:
        return [self.row(i) for i in range(self.nrows)]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows()]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def to_domain(self) -> DomainMatrix:
        """Convert to a dense sympy ``DomainMatrix`` over ``ZZ``."""
        return DomainMatrix([[ZZ(x) for x in row] for row in self.rows()], self.shape, ZZ)

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> "IntMatrix":
        nrows, ncols = dm.shape
        if nrows == 0 or ncols == 0:
            return cls.zeros(nrows, ncols)
        return cls(nrows, ncols, tuple(int(x) for row in dm.to_list() for x in row))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            msg = f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            raise ShapeError(msg)
        if 0 in (self.nrows, self.ncols, other.ncols):
            return IntMatrix.zeros(self.nrows, other.ncols)
        return IntMatrix.from_domain(self.to_domain().matmul(other.to_domain()))

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            msg = f"shape mismatch {self.shape} vs {other.shape}"
            raise ShapeError(msg)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.nrows, self.ncols, tuple(x + y for x, y in zip(self.entries, other.entries, strict=True)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.nrows, self.ncols, tuple(x - y for x, y in zip(self.entries, other.entries, strict=True)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.nrows, self.ncols, tuple(-x for x in self.entries))

    def scaled(self, k: int) -> "IntMatrix":
        return IntMatrix(self.nrows, self.ncols, tuple(k * x for x in self.entries))

    def apply(self, vector: Sequence[int]) -> Vector:
        """Return ``self @ vector`` for a plain integer vector."""
        if len(vector) != self.ncols:
            msg = f"vector of length {len(vector)} does not fit {self.nrows}x{self.ncols} matrix"
            raise ShapeError(msg)
        return tuple(sum(self.entries[i * self.ncols + j] * vector[j] for j in range(self.ncols)) for i in range(self.nrows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.rows(), self.ncols)

    def select_columns(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_columns([self.column(j) for j in indices], self.nrows)

    def select_rows(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([self.row(i) for i in indices], self.ncols)

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product ``self ⊗ other``."""
        nrows = self.nrows * other.nrows
        ncols = self.ncols * other.ncols
        entries = tuple(
            self[i // other.nrows, j // other.ncols] * other[i % other.nrows, j % other.ncols] for i in range(nrows) for j in range(ncols)
        )
        return IntMatrix(nrows, ncols, entries)

    def vec(self) -> Vector:
        """Column-major flattening, so that ``vec(A @ X @ B) = (B.T ⊗ A) vec(X)``."""
        return tuple(self.entries[i * self.ncols + j] for j in range(self.ncols) for i in range(self.nrows))

    @classmethod
    def unvec(cls, vector: Sequence[int], nrows: int, ncols: int) -> "IntMatrix":
        """Inverse of :meth:`vec`."""
        if len(vector) != nrows * ncols:
            msg = f"vector of length {len(vector)} cannot be reshaped to {nrows}x{ncols}"
            raise ShapeError(msg)
        return cls.from_columns([vector[j * nrows : (j + 1) * nrows] for j in range(ncols)], nrows)


def hstack(nrows: int, *blocks: IntMatrix) -> IntMatrix:
    """Concatenate blocks side by side; ``nrows`` fixes the height when no block is given."""
    columns: list[Vector] = []
    for block in blocks:
        if block.nrows != nrows:
            msg = f"block with {block.nrows} rows in a stack of height {nrows}"
            raise ShapeError(msg)
        columns.extend(block.columns())
    return IntMatrix.from_columns(columns, nrows)


def vstack(ncols: int, *blocks: IntMatrix) -> IntMatrix:
    """Stack blocks on top of each other; ``ncols`` fixes the width when no block is given."""
    rows: list[Vector] = []
    for block in blocks:
        if block.ncols != ncols:
            msg = f"block with {block.ncols} columns in a stack of width {ncols}"
            raise ShapeError(msg)
        rows.extend(block.rows())
    return IntMatrix.from_rows(rows, ncols)


def block_diagonal(*blocks: IntMatrix) -> IntMatrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    rows: list[list[int]] = []
    col_offset = 0
    for block in blocks:
        for row in block.rows():
            rows.append([0] * col_offset + list(row) + [0] * (ncols - col_offset - block.ncols))
        col_offset += block.ncols
    return IntMatrix.from_rows(rows, ncols) if rows else IntMatrix.zeros(nrows, ncols)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a square matrix with determinant ±1."""
    if m.nrows != m.ncols:
        msg = f"cannot invert a {m.nrows}x{m.ncols} matrix"
        raise ShapeError(msg)
    if m.nrows == 0:
        return m
    inverse = m.to_domain().to_field().inv().to_Matrix()
    return IntMatrix.from_rows([[int(inverse[i, j]) for j in range(m.ncols)] for i in range(m.nrows)])


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    The diagonal of ``D`` is non-negative with ``d_1 | d_2 | ...`` and zeros last.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @cached_property
    def diagonal(self) -> Vector:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @cached_property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @cached_property
    def U_inverse(self) -> IntMatrix:  # noqa: N802
        return unimodular_inverse(self.U)


@lru_cache(maxsize=4096)
def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Compute the Smith decomposition of ``m``.

    Parameters
    ----------
    m : IntMatrix
        Any integer matrix, empty shapes included

    Returns
    -------
    SmithDecomposition
        ``U``, ``D``, ``V`` with ``U @ m @ V == D``

    Raises
    ------
    MatrixTooLargeError
        If ``m`` has more entries than ``HOMKK_MAX_MATRIX`` allows

    """
    limit = get_env_settings().max_matrix
    if m.nrows * m.ncols > limit:
        logger.warning("Refusing Smith form of a %sx%s matrix (HOMKK_MAX_MATRIX=%s).", m.nrows, m.ncols, limit)
        msg = f"{m.nrows}x{m.ncols} matrix exceeds HOMKK_MAX_MATRIX={limit}"
        raise MatrixTooLargeError(msg)
    if m.nrows == 0 or m.ncols == 0:
        return SmithDecomposition(IntMatrix.identity(m.nrows), m, IntMatrix.identity(m.ncols))

    smf, s, t = smith_normal_decomp(m.to_domain())
    decomposition = SmithDecomposition(IntMatrix.from_domain(s), IntMatrix.from_domain(smf), IntMatrix.from_domain(t))
    if decomposition.U @ m @ decomposition.V != decomposition.D:
        logger.error("Smith decomposition of a %sx%s matrix does not reproduce D.", m.nrows, m.ncols)
        msg = "Smith decomposition failed its U*M*V == D check"
        raise ArithmeticError(msg)
    logger.debug("Smith form of %sx%s matrix: diagonal %s.", m.nrows, m.ncols, decomposition.diagonal)
    return decomposition


def solve_linear(a: IntMatrix, b: Sequence[int]) -> Vector | None:
    """Solve ``a @ x == b`` over the integers.

    Parameters
    ----------
    a : IntMatrix
        Coefficient matrix
    b : sequence of int
        Right-hand side of length ``a.nrows``

    Returns
    -------
    tuple[int, ...] or None
        One integer solution, or ``None`` when the Smith form certifies that none exists

    Raises
    ------
    ShapeError
        If ``len(b) != a.nrows``

    """
    if len(b) != a.nrows:
        msg = f"right-hand side of length {len(b)} for a matrix with {a.nrows} rows"
        raise ShapeError(msg)
    snf = smith_normal_form(a)
    c = snf.U.apply(b)
    z = [0] * a.ncols
    for i, ci in enumerate(c):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d == 0:
            if ci != 0:
                return None
            continue
        quotient, remainder = divmod(ci, d)
        if remainder:
            return None
        z[i] = quotient
    return snf.V.apply(z)


def solve_matrix(a: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """Solve ``a @ x == b`` column by column; ``None`` if any column has no solution."""
    if b.nrows != a.nrows:
        msg = f"right-hand side with {b.nrows} rows for a matrix with {a.nrows} rows"
        raise ShapeError(msg)
    columns = []
    for col in b.columns():
        x = solve_linear(a, col)
        if x is None:
            return None
        columns.append(x)
    return IntMatrix.from_columns(columns, a.ncols)


def lattice_contains(generators: IntMatrix, vector: Sequence[int]) -> bool:
    """Whether ``vector`` lies in the lattice spanned by the columns of ``generators``."""
    if generators.ncols == 0:
        return not any(vector)
    return solve_linear(generators, vector) is not None


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the integer kernel ``{x : m @ x == 0}``."""
    snf = smith_normal_form(m)
    return snf.V.select_columns(range(snf.rank, m.ncols))


def hermite_basis(m: IntMatrix) -> IntMatrix:
    """Column Hermite basis of the lattice spanned by the columns of ``m``.

    The result has independent columns spanning the same lattice, and depends only
    on that lattice.
    """
    if m.ncols == 0 or m.nrows == 0 or m.is_zero():
        return IntMatrix.zeros(m.nrows, 0)
    basis = IntMatrix.from_domain(hermite_normal_form(m.to_domain()))
    rank = smith_normal_form(m).rank
    if basis.ncols != rank:
        logger.warning("Hermite form returned %s columns for a lattice of rank %s; using Smith basis.", basis.ncols, rank)
        snf = smith_normal_form(m)
        basis = IntMatrix.from_columns(
            [tuple(snf.diagonal[j] * x for x in snf.U_inverse.column(j)) for j in range(rank)],
            m.nrows,
        )
    return basis
