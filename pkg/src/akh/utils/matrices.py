"""
Exact sparse matrices.

All differentials, edge maps and representation matrices are stored as
`SparseExactMatrix`, a thin wrapper around a sparse sympy `DomainMatrix` over
`ZZ` (or `QQ` once a division has been needed). No floating point is involved.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np
import torch
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

Scalar = Union[int, Fraction]
Vector = Dict[int, Fraction]


def _convert(value: Scalar, domain) -> object:
    if domain == ZZ:
        assert Fraction(value).denominator == 1, f"{value} is not an integer"
        return ZZ(int(value))
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_python(value, domain) -> Scalar:
    if domain == ZZ:
        return int(value)
    return Fraction(int(value.numerator), int(value.denominator))


class SparseExactMatrix:
    """Exact matrix with integer or rational entries, stored sparsely.

    Rows index targets and columns index sources, so `A @ B` is "B then A".
    """

    def __init__(self, dm: DomainMatrix):
        assert dm.domain in (ZZ, QQ), f"Unsupported domain {dm.domain}"
        self.dm = dm.to_sparse()

    # Constructors.
    @classmethod
    def from_entries(
        cls,
        entries: Mapping[Tuple[int, int], Scalar],
        shape: Tuple[int, int],
        domain=None,
    ) -> SparseExactMatrix:
        if domain is None:
            integral = all(Fraction(v).denominator == 1 for v in entries.values())
            domain = ZZ if integral else QQ
        rows: Dict[int, Dict[int, object]] = {}
        for (i, j), value in entries.items():
            assert 0 <= i < shape[0] and 0 <= j < shape[1], f"({i}, {j}) outside {shape}"
            if value != 0:
                rows.setdefault(i, {})[j] = _convert(value, domain)
        return cls(DomainMatrix(rows, shape, domain))

    @classmethod
    def zeros(cls, shape: Tuple[int, int], domain=ZZ) -> SparseExactMatrix:
        return cls(DomainMatrix({}, shape, domain))

    @classmethod
    def identity(cls, n: int, domain=ZZ) -> SparseExactMatrix:
        return cls.from_entries({(i, i): 1 for i in range(n)}, (n, n), domain)

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> SparseExactMatrix:
        n = len(values)
        return cls.from_entries({(i, i): v for i, v in enumerate(values)}, (n, n))

    @classmethod
    def from_tensor(cls, tensor: torch.Tensor) -> SparseExactMatrix:
        """Converts an integer torch tensor of shape (rows, cols)."""
        assert tensor.ndim == 2
        assert not torch.is_floating_point(tensor), "Only integer tensors are exact"
        entries = {
            (int(i), int(j)): int(tensor[i, j]) for i, j in tensor.nonzero().tolist()
        }
        return cls.from_entries(entries, tuple(tensor.shape), ZZ)  # pyright: ignore

    @classmethod
    def from_columns(
        cls, columns: Sequence[Mapping[int, Scalar]], n_rows: int
    ) -> SparseExactMatrix:
        entries = {
            (i, j): value for j, col in enumerate(columns) for i, value in col.items()
        }
        return cls.from_entries(entries, (n_rows, len(columns)))

    # Accessors.
    @property
    def shape(self) -> Tuple[int, int]:
        return self.dm.shape

    @property
    def domain(self):
        return self.dm.domain

    def rows(self) -> Mapping[int, Mapping[int, object]]:
        """Raw sparse rows {i: {j: domain element}}."""
        return self.dm.rep

    def entries(self) -> Dict[Tuple[int, int], Scalar]:
        return {
            (i, j): _to_python(v, self.domain)
            for i, row in self.rows().items()
            for j, v in row.items()
        }

    def columns(self) -> Dict[int, Dict[int, Scalar]]:
        cols: Dict[int, Dict[int, Scalar]] = {}
        for (i, j), value in self.entries().items():
            cols.setdefault(j, {})[i] = value
        return cols

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        value = self.rows().get(i, {}).get(j)
        return 0 if value is None else _to_python(value, self.domain)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.rows().values())

    def __repr__(self) -> str:
        return f"SparseExactMatrix(shape={self.shape}, nnz={self.nnz}, domain={self.domain})"

    # Arithmetic.
    def _unified(self, other: SparseExactMatrix):
        a, b = self.dm.unify(other.dm)
        return a.to_sparse(), b.to_sparse()

    def __matmul__(self, other: SparseExactMatrix) -> SparseExactMatrix:
        assert self.shape[1] == other.shape[0], f"{self.shape} @ {other.shape}"
        a, b = self._unified(other)
        return SparseExactMatrix(a.matmul(b))

    def __add__(self, other: SparseExactMatrix) -> SparseExactMatrix:
        assert self.shape == other.shape, f"{self.shape} + {other.shape}"
        a, b = self._unified(other)
        return SparseExactMatrix(a + b)

    def __sub__(self, other: SparseExactMatrix) -> SparseExactMatrix:
        assert self.shape == other.shape, f"{self.shape} - {other.shape}"
        a, b = self._unified(other)
        return SparseExactMatrix(a - b)

    def __neg__(self) -> SparseExactMatrix:
        return SparseExactMatrix(-self.dm)

    def scale(self, factor: Scalar) -> SparseExactMatrix:
        return SparseExactMatrix.from_entries(
            {key: value * factor for key, value in self.entries().items()},
            self.shape,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseExactMatrix) or self.shape != other.shape:
            return False
        return (self - other).is_zero()

    __hash__ = None  # type: ignore

    @property
    def T(self) -> SparseExactMatrix:
        return SparseExactMatrix(self.dm.transpose())

    def is_zero(self) -> bool:
        return self.nnz == 0

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> SparseExactMatrix:
        row_pos = {r: a for a, r in enumerate(rows)}
        col_pos = {c: b for b, c in enumerate(cols)}
        out: Dict[int, Dict[int, object]] = {}
        for r, row in self.rows().items():
            if r not in row_pos:
                continue
            for c, value in row.items():
                if c in col_pos:
                    out.setdefault(row_pos[r], {})[col_pos[c]] = value
        return SparseExactMatrix(DomainMatrix(out, (len(rows), len(cols)), self.domain))

    # Linear algebra.
    def rank(self) -> int:
        if self.is_zero():
            return 0
        return self.dm.convert_to(QQ).rank()

    def rref(self) -> Tuple[Dict[int, Dict[int, Fraction]], Tuple[int, ...]]:
        """Reduced row echelon form over QQ as sparse rows plus pivot columns."""
        if self.is_zero():
            return {}, ()
        reduced, pivots = self.dm.convert_to(QQ).rref()
        rows = {
            i: {j: _to_python(v, QQ) for j, v in row.items()}
            for i, row in reduced.to_sparse().rep.items()
        }
        return rows, tuple(pivots)

    def kernel(self) -> List[Vector]:
        """Basis of the right kernel, one vector per free column, in column order."""
        n_cols = self.shape[1]
        rows, pivots = self.rref()
        pivot_rows = {col: r for r, col in enumerate(pivots)}
        basis = []
        for free in range(n_cols):
            if free in pivot_rows:
                continue
            vector: Vector = {free: Fraction(1)}
            for col, r in pivot_rows.items():
                value = rows.get(r, {}).get(free, 0)
                if value != 0:
                    vector[col] = -value
            basis.append(vector)
        return basis

    def apply(self, vector: Mapping[int, Scalar]) -> Vector:
        """Matrix-vector product on sparse vectors."""
        out: Vector = {}
        for i, row in self.rows().items():
            acc = Fraction(0)
            for j, value in row.items():
                if j in vector:
                    acc += _to_python(value, self.domain) * Fraction(vector[j])
            if acc != 0:
                out[i] = acc
        return out

    def invariant_factors(self) -> List[int]:
        """Nonzero invariant factors of the Smith normal form over ZZ."""
        if self.is_zero():
            return []
        assert self.domain == ZZ, "Smith normal form needs integer entries"
        factors = invariant_factors(self.dm.to_dense())
        return [abs(int(f)) for f in factors if int(f) != 0]

    # Conversions.
    def to_gf2(self) -> np.ndarray:
        assert self.domain == ZZ, "Only integer matrices reduce modulo 2"
        out = np.zeros(self.shape, dtype=np.uint8)
        for (i, j), value in self.entries().items():
            out[i, j] = int(value) & 1
        return out


def block_diagonal(
    blocks: Iterable[SparseExactMatrix], offsets: Sequence[int], size: int
) -> SparseExactMatrix:
    """Places square `blocks` along the diagonal at the given offsets."""
    entries: Dict[Tuple[int, int], Scalar] = {}
    for block, offset in zip(blocks, offsets):
        for (i, j), value in block.entries().items():
            entries[(offset + i, offset + j)] = value
    return SparseExactMatrix.from_entries(entries, (size, size))
