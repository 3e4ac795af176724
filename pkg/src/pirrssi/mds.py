#!/usr/bin/env python3

"""MDS-code scheme.

The user sends the P x K generator G of a [K, P] MDS code with
``P = K - M1 - M2``; the server returns ``Y_i = g_i . [X_1; ...; X_K]``.
The query never depends on ``(W, R, S)``. Because every set of
``M1 + M2 + 1`` columns supports a codeword, some combination of the
answer involves only ``X_W``, ``X_R`` and ``X_S``, and the user
subtracts the known messages.

Classes
-------
.. autosummary::
    MdsQuery
    MdsAnswer
    MdsScheme
    DecodeError

Routines
--------
.. autosummary::
    build_query
    server_answer
    support_vectors
    decode

----

"""

from pirrssi import field
from pirrssi import model
from pirrssi.field import FieldMatrix


class DecodeError(RuntimeError):
    """The query cannot serve the configuration (internal corruption)."""


class MdsQuery(object):
    """Query of the MDS scheme.

    Parameters
    ----------
    k, m1, m2, q : int
    generator : FieldMatrix
        The P x K generator G.

    """

    __slots__ = ('k', 'm1', 'm2', 'q', 'generator')

    def __init__(self, k, m1, m2, q, generator):
        if generator.cols != k or generator.modulus != q:
            raise ValueError("generator must be a matrix over GF(%d) with "
                             "K=%d columns" % (q, k))
        self.k = k
        self.m1 = m1
        self.m2 = m2
        self.q = q
        self.generator = generator

    @property
    def p(self):
        return self.generator.rows

    def _key(self):
        return (self.k, self.m1, self.m2, self.q, self.generator)

    def __eq__(self, other):
        if not isinstance(other, MdsQuery):
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return 'MdsQuery(K=%d, M1=%d, M2=%d, q=%d, G=%r)' % (
            self.k, self.m1, self.m2, self.q, self.generator.to_lists())


class MdsAnswer(model.Answer):
    """Answer of the MDS scheme: ``Y_i = g_i . X`` for each row of G."""


def build_query(k, m1, m2, q):
    """Build the (configuration-independent) MDS query.

    Parameters
    ----------
    k, m1, m2 : int
        ``K > M1 + M2``; zero side-information sizes are accepted.
    q : int
        Prime field order, at least K.

    Returns
    -------
    MdsQuery

    Raises
    ------
    ValueError
        If ``K <= M1 + M2`` or ``q < K``.

    Examples
    --------
    >>> build_query(4, 1, 1, 5).generator.to_lists()
    [[1, 1, 1, 1], [0, 1, 2, 3]]

    """

    p = model.mds_download(k, m1, m2)
    return MdsQuery(k, m1, m2, q, field.vandermonde_generator(p, k, q))


def _check_database(k, q, db):
    if db.k != k:
        raise ValueError("query is for K=%d messages, database has %d" %
                         (k, db.k))
    if db.q != q:
        raise field.FieldMismatchError("query is over GF(%d), database over "
                                       "GF(%d)" % (q, db.q))


def server_answer(query, db):
    """Compute ``Y_i = g_i . [X_1; ...; X_K]`` for every row of G."""
    _check_database(query.k, query.q, db)
    generator = query.generator
    return MdsAnswer([field.combine(generator.row(i), db.messages)
                      for i in range(generator.rows)])


def _check_config(query, cfg):
    if cfg.k != query.k:
        raise ValueError("configuration is for K=%d, query for K=%d" %
                         (cfg.k, query.k))
    if len(cfg.support) != query.k - query.p + 1:
        raise ValueError("|R| + |S| + 1 = %d does not match K - P + 1 = %d"
                         % (len(cfg.support), query.k - query.p + 1))


def support_vectors(query, cfg):
    """Basis of the row combinations ``u`` with ``u . G`` supported on
    ``R | S | {W}``.

    For an MDS generator the basis has exactly one vector: the P - 1
    columns outside the support impose P - 1 independent constraints on
    ``u``.

    """

    _check_config(query, cfg)
    outside = [j for j in range(query.k) if j + 1 not in cfg.support]
    restricted = query.generator.select_columns(outside)
    return field.nullspace(restricted.transpose())


def _side_message(side, index, answer):
    try:
        message = side[index]
    except KeyError:
        raise ValueError("side information lacks message %d" % index)
    if len(message) != answer.n:
        raise ValueError("side message %d has %d symbols, answer has %d" %
                         (index, len(message), answer.n))
    return message


def decode(query, answer, cfg, side):
    """Recover ``X_W`` from the answer and the side information.

    Parameters
    ----------
    query : MdsQuery
    answer : MdsAnswer
    cfg : pirrssi.model.SideInfoConfig
    side : dict
        ``index -> FieldVector`` for every index in ``R | S``.

    Returns
    -------
    FieldVector
        ``X_W``. Wrong side-information values give a wrong result
        without an error.

    Raises
    ------
    DecodeError
        If no unique support vector exists or its coefficient at W is
        zero (possible only when G is not MDS).

    """

    basis = support_vectors(query, cfg)
    if len(basis) != 1:
        raise DecodeError("expected a one-dimensional space of support "
                          "vectors, found dimension %d" % len(basis))
    combination = basis[0]
    coefficients = query.generator.left_multiply(combination)
    lead = coefficients.values[cfg.w - 1]
    if not lead:
        raise DecodeError("support vector has a zero coefficient at W=%d" %
                          cfg.w)
    combination = combination.scale(field.inverse(lead, query.q))
    coefficients = coefficients.scale(field.inverse(lead, query.q))
    result = field.combine(combination, answer.symbols)
    for index in cfg.side_indices:
        result = result - _side_message(side, index, answer).scale(
            coefficients.values[index - 1])
    return result


class MdsScheme(object):
    """The MDS scheme bound to fixed parameters.

    This is the interface the auditor and the network client drive;
    `build_query` accepts and ignores a chooser so both schemes share one
    calling convention.

    """

    name = 'mds'

    def __init__(self, k, m1, m2, q):
        model.check_parameters(k, m1, m2)
        self.k = k
        self.m1 = m1
        self.m2 = m2
        self.q = q
        self._query = build_query(k, m1, m2, q)

    @property
    def download(self):
        """Number of answer vectors P."""
        return self._query.p

    def build_query(self, cfg, chooser=None):
        # pylint: disable=unused-argument
        return self._query

    @staticmethod
    def server_answer(query, db):
        return server_answer(query, db)

    @staticmethod
    def decode(query, answer, cfg, side):
        return decode(query, answer, cfg, side)

    @staticmethod
    def answer_matrix(query):
        """Coefficients of the answer vectors in terms of the messages."""
        return query.generator

    def __repr__(self):
        return 'MdsScheme(K=%d, M1=%d, M2=%d, q=%d)' % (
            self.k, self.m1, self.m2, self.q)


# FieldMatrix is re-exported for callers constructing custom generators
__all__ = ['DecodeError', 'FieldMatrix', 'MdsAnswer', 'MdsQuery',
           'MdsScheme', 'build_query', 'decode', 'server_answer',
           'support_vectors']
