# Copyright 2024 Oliver Berger
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Exact integer linear algebra.

Matrices hold Python integers in :py:mod:`numpy` object arrays, so entries
never overflow.  :py:func:`smith_normal_form` is the workhorse behind every
kernel, cokernel and equation solved elsewhere.
"""
import collections
import logging

import numpy as np
import sympy

from exactcat import codec, core

log = logging.getLogger(__name__)


class DimensionError(core.ExactcatError, ValueError):

    """Matrix shapes do not fit together."""


class MatrixFormatError(core.ExactcatError, ValueError):

    """Matrix text cannot be parsed."""


@codec.register('mat')
class Mat:

    """An immutable integer matrix of arbitrary precision."""

    __slots__ = ('_array', '_key')

    def __init__(self, rows=()):
        rows = [list(row) for row in rows]
        n_cols = len(rows[0]) if rows else 0
        if any(len(row) != n_cols for row in rows):
            raise DimensionError('rows of unequal length')
        self._init(len(rows), n_cols, [x for row in rows for x in row])

    def _init(self, rows, cols, flat):
        flat = tuple(int(x) for x in flat)
        if len(flat) != rows * cols:
            raise DimensionError('{} entries do not fill {}x{}'
                                 .format(len(flat), rows, cols))
        array = np.array(flat, dtype=object).reshape(rows, cols)
        array.flags.writeable = False
        self._array = array
        self._key = (rows, cols, flat)

    @classmethod
    def from_flat(cls, rows, cols, entries):
        mat = cls.__new__(cls)
        mat._init(rows, cols, entries)
        return mat

    @classmethod
    def _wrap(cls, array):
        rows, cols = array.shape
        return cls.from_flat(rows, cols, array.flat)

    @classmethod
    def zeros(cls, rows, cols):
        return cls.from_flat(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, size):
        return cls.from_flat(size, size, [int(i == j) for i in range(size)
                                          for j in range(size)])

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None):
        """A (possibly rectangular) matrix with ``entries`` on the diagonal."""
        entries = list(entries)
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        flat = [0] * (rows * cols)
        for i, value in enumerate(entries):
            flat[i * cols + i] = value
        return cls.from_flat(rows, cols, flat)

    @property
    def rows(self):
        return self._key[0]

    @property
    def cols(self):
        return self._key[1]

    @property
    def shape(self):
        return self._key[:2]

    @property
    def entries(self):
        """Entries in row-major order."""
        return self._key[2]

    def tolist(self):
        return [list(self.entries[r * self.cols:(r + 1) * self.cols])
                for r in range(self.rows)]

    def __getitem__(self, key):
        row, col = key
        if isinstance(row, int) and isinstance(col, int):
            return self._array[row, col]
        if isinstance(row, int):
            row = slice(row, row + 1)
        if isinstance(col, int):
            col = slice(col, col + 1)
        return Mat._wrap(self._array[row, col])

    def rows_at(self, indices):
        return Mat._wrap(self._array[np.array(list(indices), dtype=np.intp), :])

    def cols_at(self, indices):
        return Mat._wrap(self._array[:, np.array(list(indices), dtype=np.intp)])

    @property
    def T(self):     # noqa
        return Mat._wrap(self._array.T)

    def is_zero(self):
        return not any(self.entries)

    def is_square(self):
        return self.rows == self.cols

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError('cannot multiply {}x{} by {}x{}'.format(
                self.rows, self.cols, other.rows, other.cols))
        if not self.cols:
            return Mat.zeros(self.rows, other.cols)
        return Mat._wrap(self._array.dot(other._array))

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError('shape {} differs from {}'
                                 .format(self.shape, other.shape))

    def __add__(self, other):
        self._check_shape(other)
        return Mat._wrap(self._array + other._array)

    def __sub__(self, other):
        self._check_shape(other)
        return Mat._wrap(self._array - other._array)

    def __neg__(self):
        return Mat._wrap(-self._array)

    def __mul__(self, scalar):
        return Mat._wrap(self._array * int(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return 'Mat({}x{}: {})'.format(self.rows, self.cols, self.tolist())

    @classmethod
    def hcat(cls, *mats):
        """Concatenate side by side."""
        if len({mat.rows for mat in mats}) != 1:
            raise DimensionError('hcat needs equal row counts')
        return cls._wrap(np.concatenate([mat._array for mat in mats], axis=1))

    @classmethod
    def vcat(cls, *mats):
        """Stack on top of each other."""
        if len({mat.cols for mat in mats}) != 1:
            raise DimensionError('vcat needs equal column counts')
        return cls._wrap(np.concatenate([mat._array for mat in mats], axis=0))

    @classmethod
    def block(cls, rows):
        return cls.vcat(*(cls.hcat(*row) for row in rows))

    @classmethod
    def block_diag(cls, *mats):
        array = np.zeros((sum(mat.rows for mat in mats),
                          sum(mat.cols for mat in mats)), dtype=object)
        row = col = 0
        for mat in mats:
            array[row:row + mat.rows, col:col + mat.cols] = mat._array
            row += mat.rows
            col += mat.cols
        return cls._wrap(array)

    def determinant(self):
        """Exact determinant."""
        if not self.is_square():
            raise DimensionError('determinant of a non-square matrix')
        if not self.rows:
            return 1
        return int(sympy.Matrix(self.tolist()).det())

    def dumps(self):
        """Write the fixture text format: ``rows cols`` then the entries."""
        lines = ['{} {}'.format(self.rows, self.cols)]
        lines.extend(' '.join(str(x) for x in row) for row in self.tolist())
        return '\n'.join(lines) + '\n'

    @classmethod
    def parse(cls, text):
        tokens = text.split()
        try:
            numbers = [int(token) for token in tokens]
        except ValueError as ex:
            raise MatrixFormatError(str(ex))
        if len(numbers) < 2 or min(numbers[:2]) < 0:
            raise MatrixFormatError('missing "rows cols" header')
        rows, cols = numbers[:2]
        if len(numbers) - 2 != rows * cols:
            raise MatrixFormatError('expected {} entries, found {}'.format(
                rows * cols, len(numbers) - 2))
        return cls.from_flat(rows, cols, numbers[2:])

    @classmethod
    def __json_encode__(cls, data):
        return {'rows': data.rows, 'cols': data.cols,
                'entries': list(data.entries)}

    @classmethod
    def __json_decode__(cls, payload):
        return cls.from_flat(payload['rows'], payload['cols'],
                             payload['entries'])


class SmithDecomposition(collections.namedtuple(
        'SmithDecomposition', 'u d v u_inv v_inv')):

    """``u @ a @ v == d`` with unimodular ``u`` and ``v``.

    The inverses of both transforms are tracked during elimination.
    """

    __slots__ = ()

    @property
    def diagonal(self):
        return tuple(self.d[i, i] for i in range(min(self.d.shape)))

    @property
    def rank(self):
        return sum(1 for x in self.diagonal if x)

    def verify(self, a):
        """Re-check every invariant of the decomposition against ``a``."""
        if self.u @ a @ self.v != self.d:
            return False
        diagonal = self.diagonal
        if self.d != Mat.diagonal(diagonal, *self.d.shape):
            return False
        if any(x < 0 for x in diagonal):
            return False
        nonzero = [x for x in diagonal if x]
        if nonzero != list(diagonal[:len(nonzero)]):
            return False
        if any(b % a for a, b in zip(nonzero, nonzero[1:])):
            return False
        if self.u @ self.u_inv != Mat.identity(a.rows) \
                or self.v @ self.v_inv != Mat.identity(a.cols):
            return False
        return abs(self.u.determinant()) == 1 \
            and abs(self.v.determinant()) == 1


def _identity_rows(size):
    return [[int(i == j) for j in range(size)] for i in range(size)]


def _add_row(rows, target, source, factor):
    rows[target] = [a + factor * b for a, b in zip(rows[target], rows[source])]


def _add_col(rows, target, source, factor):
    for row in rows:
        row[target] += factor * row[source]


def _swap_rows(rows, a, b):
    rows[a], rows[b] = rows[b], rows[a]


def _swap_cols(rows, a, b):
    for row in rows:
        row[a], row[b] = row[b], row[a]


def _pivot(work, t):
    """Smallest nonzero absolute value in the block, lowest (row, col)."""
    candidates = [(abs(value), r, c)
                  for r, row in enumerate(work[t:], t)
                  for c, value in enumerate(row[t:], t) if value]
    if not candidates:
        return None
    _, r, c = min(candidates)
    return r, c


def _indivisible_row(work, t, pivot):
    for r, row in enumerate(work[t + 1:], t + 1):
        if any(value % pivot for value in row[t + 1:]):
            return r
    return None


def smith_normal_form(a):
    """Compute the Smith normal form of ``a`` with both transforms."""
    m, n = a.shape
    work = a.tolist()
    u, u_inv = _identity_rows(m), _identity_rows(m)
    v, v_inv = _identity_rows(n), _identity_rows(n)

    t = 0
    while t < min(m, n):
        pivot = _pivot(work, t)
        if pivot is None:
            break
        while True:
            r, c = pivot
            _swap_rows(work, t, r)
            _swap_rows(u, t, r)
            _swap_cols(u_inv, t, r)
            _swap_cols(work, t, c)
            _swap_cols(v, t, c)
            _swap_rows(v_inv, t, c)
            p = work[t][t]
            clean = True
            for r in range(t + 1, m):
                q = work[r][t] // p
                if q:
                    _add_row(work, r, t, -q)
                    _add_row(u, r, t, -q)
                    _add_col(u_inv, t, r, q)
                clean = clean and not work[r][t]
            for c in range(t + 1, n):
                q = work[t][c] // p
                if q:
                    _add_col(work, c, t, -q)
                    _add_col(v, c, t, -q)
                    _add_row(v_inv, t, c, q)
                clean = clean and not work[t][c]
            if clean:
                r = _indivisible_row(work, t, p)
                if r is None:
                    break
                # pull the offending row up, the next pass shrinks the pivot
                _add_row(work, t, r, 1)
                _add_row(u, t, r, 1)
                _add_col(u_inv, r, t, -1)
            pivot = _pivot(work, t)
        if work[t][t] < 0:
            for rows in (work, v):
                for row in rows:
                    row[t] = -row[t]
            v_inv[t] = [-x for x in v_inv[t]]
        t += 1

    def mat(rows, n_rows, n_cols):
        return Mat.from_flat(n_rows, n_cols, [x for row in rows for x in row])

    return SmithDecomposition(mat(u, m, m), mat(work, m, n), mat(v, n, n),
                              mat(u_inv, m, m), mat(v_inv, n, n))


class Solution(collections.namedtuple('Solution', 'particular kernel')):

    """A particular solution (or ``None``) and a kernel lattice basis.

    ``kernel`` holds the basis vectors as columns.
    """

    __slots__ = ()

    @property
    def solvable(self):
        return self.particular is not None


def solve_integer(a, b):
    """Solve ``a @ x == b`` over the integers."""
    if a.rows != b.rows:
        raise DimensionError('{} rows against {} rows'.format(a.rows, b.rows))
    snf = smith_normal_form(a)
    rank = snf.rank
    kernel = snf.v.cols_at(range(rank, a.cols))
    c = snf.u @ b
    y = [[0] * b.cols for _ in range(a.cols)]
    for col in range(b.cols):
        for i in range(a.rows):
            value = c[i, col]
            if i < rank:
                divisor = snf.d[i, i]
                if value % divisor:
                    return Solution(None, kernel)
                y[i][col] = value // divisor
            elif value:
                return Solution(None, kernel)
    particular = snf.v @ Mat.from_flat(a.cols, b.cols,
                                       [x for row in y for x in row])
    return Solution(particular, kernel)


def kernel_basis(a):
    """Columns spanning the integer kernel of ``a``."""
    snf = smith_normal_form(a)
    return snf.v.cols_at(range(snf.rank, a.cols))
