#!/usr/bin/env python3

"""Exact linear algebra over a prime field GF(q).

All values are immutable. Matrices keep their entries as plain integer
residues internally and hand out `FieldElement` objects on access, so
elimination stays fast enough for brute-force searches over column
subsets.

Classes
-------
.. autosummary::
    FieldElement
    FieldVector
    FieldMatrix
    FieldMismatchError

Routines
--------
.. autosummary::
    is_prime
    next_prime
    inverse
    combine
    rank
    nullspace
    in_span
    vandermonde_generator
    is_mds

----

"""

import functools
import itertools


class FieldMismatchError(ValueError):
    """Raised when operands belong to fields of different orders."""


@functools.lru_cache(maxsize=256)
def is_prime(number):
    """Deterministic primality test by trial division.

    Parameters
    ----------
    number : int

    Returns
    -------
    bool

    Examples
    --------
    >>> [p for p in range(20) if is_prime(p)]
    [2, 3, 5, 7, 11, 13, 17, 19]

    """

    if number < 2:
        return False
    if number < 4:
        return True
    if number % 2 == 0:
        return False
    divisor = 3
    while divisor * divisor <= number:
        if number % divisor == 0:
            return False
        divisor += 2
    return True


def next_prime(number):
    """Return the smallest prime greater than or equal to `number`.

    Examples
    --------
    >>> next_prime(4), next_prime(5), next_prime(12), next_prime(0)
    (5, 5, 13, 2)

    """

    candidate = max(number, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate


def _check_modulus(modulus):
    if not is_prime(modulus):
        raise ValueError("q must be prime; got %d" % modulus)


def _check_same_field(first, second):
    if first != second:
        raise FieldMismatchError("operands live in GF(%d) and GF(%d)" %
                                 (first, second))


def inverse(value, modulus):
    """Multiplicative inverse of an integer residue modulo a prime.

    Raises
    ------
    ZeroDivisionError
        If `value` is congruent to zero.

    Examples
    --------
    >>> inverse(3, 7)
    5

    """

    value %= modulus
    if value == 0:
        raise ZeroDivisionError("zero has no inverse in GF(%d)" % modulus)
    return pow(value, modulus - 2, modulus)


def _residue(value, modulus):
    if isinstance(value, FieldElement):
        _check_same_field(value.modulus, modulus)
        return value.value
    return int(value) % modulus


class FieldElement(object):
    """An element of the prime field GF(q).

    Supports ``+``, ``-``, ``*``, ``/``, unary ``-`` and integer powers
    with other elements of the same field or with plain integers.

    Parameters
    ----------
    value : int
        Any integer; reduced modulo `modulus`.
    modulus : int
        The field order q, which must be prime.

    Raises
    ------
    ValueError
        If `modulus` is not prime.

    Examples
    --------
    >>> FieldElement(3, 7).inv()
    FieldElement(5, 7)
    >>> FieldElement(4, 5) + FieldElement(4, 5)
    FieldElement(3, 5)

    """

    __slots__ = ('value', 'modulus')

    def __init__(self, value, modulus):
        _check_modulus(modulus)
        self.value = int(value) % modulus
        self.modulus = modulus

    def _other(self, other):
        if isinstance(other, FieldElement):
            _check_same_field(self.modulus, other.modulus)
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return None

    def _new(self, value):
        return FieldElement(value, self.modulus)

    def __add__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return self._new(self.value + value)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return self._new(self.value - value)

    def __rsub__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return self._new(value - self.value)

    def __mul__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return self._new(self.value * value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return self._new(self.value * inverse(value, self.modulus))

    def __rtruediv__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return self._new(value * self.inv().value)

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inv() ** (-exponent)
        return self._new(pow(self.value, exponent, self.modulus))

    def inv(self):
        """Return the multiplicative inverse.

        Raises
        ------
        ZeroDivisionError
            If the element is zero.

        """
        return self._new(inverse(self.value, self.modulus))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (self.modulus, self.value) == (other.modulus, other.value)
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return 'FieldElement(%d, %d)' % (self.value, self.modulus)

    def __str__(self):
        return str(self.value)


class FieldVector(object):
    """A vector over GF(q).

    Indexing and iteration yield `FieldElement` objects; the raw
    residues are available as the `values` tuple.

    Parameters
    ----------
    values : iterable
        Integers or `FieldElement` objects (the latter must live in
        GF(`modulus`)).
    modulus : int
        Field order.

    Attributes
    ----------
    values : tuple of int
    modulus : int

    """

    __slots__ = ('values', 'modulus')

    def __init__(self, values, modulus):
        self.values = tuple(_residue(v, modulus) for v in values)
        self.modulus = modulus

    @classmethod
    def zeros(cls, length, modulus):
        """All-zero vector of the given length."""
        return cls([0] * length, modulus)

    @classmethod
    def unit(cls, length, position, modulus):
        """Standard basis vector with a one at 0-based `position`."""
        values = [0] * length
        values[position] = 1
        return cls(values, modulus)

    @property
    def elements(self):
        """The entries as a tuple of `FieldElement`."""
        return tuple(FieldElement(v, self.modulus) for v in self.values)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, index):
        return FieldElement(self.values[index], self.modulus)

    def _peer(self, other):
        if not isinstance(other, FieldVector):
            raise TypeError("expected a FieldVector, got %s" %
                            type(other).__name__)
        _check_same_field(self.modulus, other.modulus)
        if len(other) != len(self):
            raise ValueError("vector lengths differ: %d and %d" %
                             (len(self), len(other)))
        return other.values

    def __add__(self, other):
        return FieldVector((a + b for a, b in zip(self.values,
                                                  self._peer(other))),
                           self.modulus)

    def __sub__(self, other):
        return FieldVector((a - b for a, b in zip(self.values,
                                                  self._peer(other))),
                           self.modulus)

    def __neg__(self):
        return FieldVector((-a for a in self.values), self.modulus)

    def scale(self, factor):
        """Multiply every entry by a scalar (int or `FieldElement`)."""
        factor = _residue(factor, self.modulus)
        return FieldVector((a * factor for a in self.values), self.modulus)

    def dot(self, other):
        """Inner product, returned as a `FieldElement`."""
        total = sum(a * b for a, b in zip(self.values, self._peer(other)))
        return FieldElement(total, self.modulus)

    def support(self):
        """0-based positions of the nonzero entries."""
        return tuple(i for i, v in enumerate(self.values) if v)

    def is_zero(self):
        return not any(self.values)

    def __eq__(self, other):
        if not isinstance(other, FieldVector):
            return NotImplemented
        return (self.modulus, self.values) == (other.modulus, other.values)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.modulus, self.values))

    def __repr__(self):
        return 'FieldVector(%r, %d)' % (list(self.values), self.modulus)


def combine(coefficients, vectors):
    """Linear combination ``sum(c_i * v_i)`` of equal-length vectors.

    Parameters
    ----------
    coefficients : FieldVector or sequence of int
    vectors : sequence of FieldVector
        Must be nonempty and share one modulus and one length.

    Returns
    -------
    FieldVector

    Examples
    --------
    >>> q = 5
    >>> combine([1, 1, 1], [FieldVector([2], q), FieldVector([3], q),
    ...                     FieldVector([4], q)])
    FieldVector([4], 5)

    """

    if not vectors:
        raise ValueError("cannot combine an empty list of vectors")
    modulus = vectors[0].modulus
    if isinstance(coefficients, FieldVector):
        _check_same_field(coefficients.modulus, modulus)
        coefficients = coefficients.values
    coefficients = [_residue(c, modulus) for c in coefficients]
    if len(coefficients) != len(vectors):
        raise ValueError("%d coefficients for %d vectors" %
                         (len(coefficients), len(vectors)))
    length = len(vectors[0])
    totals = [0] * length
    for coefficient, vector in zip(coefficients, vectors):
        _check_same_field(vector.modulus, modulus)
        if len(vector) != length:
            raise ValueError("vector lengths differ: %d and %d" %
                             (length, len(vector)))
        if coefficient:
            for t, value in enumerate(vector.values):
                totals[t] += coefficient * value
    return FieldVector(totals, modulus)


class FieldMatrix(object):
    """A dense matrix over GF(q).

    Parameters
    ----------
    rows : sequence of sequences
        Row-major entries (ints or `FieldElement`).
    modulus : int
        Field order.
    cols : int, optional
        Number of columns. Required when `rows` is empty; otherwise it
        is read off the first row (and checked if given).

    Attributes
    ----------
    rows : int
    cols : int
    modulus : int

    """

    __slots__ = ('rows', 'cols', 'modulus', '_data')

    def __init__(self, rows, modulus, cols=None):
        data = tuple(tuple(_residue(v, modulus) for v in row) for row in rows)
        if cols is None:
            if not data:
                raise ValueError("cols is required for a matrix without rows")
            cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix: expected %d columns, got %d"
                                 % (cols, len(row)))
        self.rows = len(data)
        self.cols = cols
        self.modulus = modulus
        self._data = data

    @classmethod
    def identity(cls, size, modulus):
        return cls([[int(i == j) for j in range(size)] for i in range(size)],
                   modulus, cols=size)

    @classmethod
    def zeros(cls, rows, cols, modulus):
        return cls([[0] * cols for _ in range(rows)], modulus, cols=cols)

    @classmethod
    def units(cls, positions, cols, modulus):
        """Rows ``e_i`` for each 1-based index in `positions`."""
        rows = []
        for position in positions:
            row = [0] * cols
            row[position - 1] = 1
            rows.append(row)
        return cls(rows, modulus, cols=cols)

    @property
    def entries(self):
        """Row-major tuple of `FieldElement`."""
        return tuple(FieldElement(v, self.modulus)
                     for row in self._data for v in row)

    def to_lists(self):
        """Residues as a list of row lists."""
        return [list(row) for row in self._data]

    def row(self, index):
        return FieldVector(self._data[index], self.modulus)

    def __getitem__(self, position):
        i, j = position
        return FieldElement(self._data[i][j], self.modulus)

    def select_columns(self, indices):
        """Submatrix made of the given 0-based columns, in order."""
        indices = list(indices)
        return FieldMatrix([[row[j] for j in indices] for row in self._data],
                           self.modulus, cols=len(indices))

    def stack(self, other):
        """Append the rows of `other` below the rows of this matrix."""
        _check_same_field(self.modulus, other.modulus)
        if other.cols != self.cols:
            raise ValueError("cannot stack %d-column and %d-column matrices"
                             % (self.cols, other.cols))
        return FieldMatrix(self._data + other._data, self.modulus,
                           cols=self.cols)

    def transpose(self):
        return FieldMatrix([[row[j] for row in self._data]
                            for j in range(self.cols)],
                           self.modulus, cols=self.rows)

    def left_multiply(self, vector):
        """Row vector times matrix, ``u . M``."""
        if len(vector) != self.rows:
            raise ValueError("expected a length-%d vector, got %d" %
                             (self.rows, len(vector)))
        _check_same_field(vector.modulus, self.modulus)
        return FieldVector(
            (sum(u * row[j] for u, row in zip(vector.values, self._data))
             for j in range(self.cols)),
            self.modulus)

    def apply(self, vector):
        """Matrix times column vector, ``M . v``."""
        if len(vector) != self.cols:
            raise ValueError("expected a length-%d vector, got %d" %
                             (self.cols, len(vector)))
        _check_same_field(vector.modulus, self.modulus)
        return FieldVector((sum(a * b for a, b in zip(row, vector.values))
                            for row in self._data), self.modulus)

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return ((self.modulus, self.cols, self._data) ==
                (other.modulus, other.cols, other._data))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.modulus, self.cols, self._data))

    def __repr__(self):
        return 'FieldMatrix(%r, %d)' % (self.to_lists(), self.modulus)


def _reduced_echelon(data, cols, modulus):
    """Reduced row echelon form of integer rows; first-nonzero pivoting.

    Returns the nonzero rows of the RREF and the list of pivot columns.

    """

    rows = [list(row) for row in data]
    pivots = []
    rank_so_far = 0
    for col in range(cols):
        if rank_so_far == len(rows):
            break
        pivot = None
        for i in range(rank_so_far, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank_so_far], rows[pivot] = rows[pivot], rows[rank_so_far]
        scale = inverse(rows[rank_so_far][col], modulus)
        lead = [v * scale % modulus for v in rows[rank_so_far]]
        rows[rank_so_far] = lead
        for i, row in enumerate(rows):
            factor = row[col]
            if i != rank_so_far and factor:
                rows[i] = [(a - factor * b) % modulus
                           for a, b in zip(row, lead)]
        pivots.append(col)
        rank_so_far += 1
    return rows[:rank_so_far], pivots


def rank(matrix):
    """Row rank by exact Gaussian elimination.

    Examples
    --------
    >>> rank(FieldMatrix([[1, 1, 1], [2, 2, 2]], 7))
    1
    >>> rank(FieldMatrix.identity(3, 5))
    3

    """

    _, pivots = _reduced_echelon(matrix._data, matrix.cols, matrix.modulus)
    return len(pivots)


def nullspace(matrix):
    """Basis of the right nullspace ``{v : M . v = 0}``.

    The basis has ``cols - rank`` vectors, one per free column of the
    reduced echelon form, each with a one at its free column.

    Examples
    --------
    >>> nullspace(FieldMatrix([[1, 1]], 3))
    [FieldVector([2, 1], 3)]
    >>> nullspace(FieldMatrix.identity(2, 5))
    []

    """

    reduced, pivots = _reduced_echelon(matrix._data, matrix.cols,
                                       matrix.modulus)
    modulus = matrix.modulus
    free = [c for c in range(matrix.cols) if c not in pivots]
    basis = []
    for column in free:
        values = [0] * matrix.cols
        values[column] = 1
        for row, pivot in zip(reduced, pivots):
            values[pivot] = -row[column] % modulus
        basis.append(FieldVector(values, modulus))
    return basis


def in_span(matrix, vector):
    """Whether `vector` lies in the row space of `matrix`."""
    extended = matrix.stack(FieldMatrix([vector.values], vector.modulus,
                                        cols=matrix.cols))
    return rank(extended) == rank(matrix)


def vandermonde_generator(p, k, modulus):
    """Vandermonde generator of a [K, P] MDS code over GF(q).

    Column ``j`` is ``(1, a_j, a_j**2, ..., a_j**(P-1))`` with the
    evaluation points ``a_j = j`` for ``j = 0, ..., K-1``.

    Parameters
    ----------
    p : int
        Number of rows, ``1 <= p <= k``.
    k : int
        Number of columns.
    modulus : int
        Prime field order, at least `k`.

    Returns
    -------
    FieldMatrix

    Raises
    ------
    ValueError
        If q is not prime, q < K, or P is out of range.

    Examples
    --------
    >>> vandermonde_generator(2, 3, 5).to_lists()
    [[1, 1, 1], [0, 1, 2]]

    """

    _check_modulus(modulus)
    if modulus < k:
        raise ValueError("q=%d is smaller than K=%d: not enough distinct "
                         "evaluation points" % (modulus, k))
    if not 1 <= p <= k:
        raise ValueError("P must satisfy 1 <= P <= K; got P=%d, K=%d" %
                         (p, k))
    return FieldMatrix([[pow(point, power, modulus) for point in range(k)]
                        for power in range(p)], modulus)


def is_mds(generator):
    """Whether every P-subset of columns is invertible.

    Brute force over all ``C(K, P)`` column subsets.

    Examples
    --------
    >>> is_mds(FieldMatrix([[1, 0, 1], [0, 1, 0]], 5))
    False
    >>> is_mds(vandermonde_generator(2, 4, 5))
    True

    """

    p, k = generator.rows, generator.cols
    if p > k:
        raise ValueError("a generator needs rows <= cols; got %dx%d" % (p, k))
    for columns in itertools.combinations(range(k), p):
        if rank(generator.select_columns(columns)) != p:
            return False
    return True
