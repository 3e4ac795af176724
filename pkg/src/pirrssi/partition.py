#!/usr/bin/env python3

"""Partition-and-Code scheme.

The user splits ``[K]`` into ``P = ceil(K / (M2 + 1))`` labeled parts,
the first ``P - 1`` of size ``M2 + 1`` and the last holding the rest.
The part containing the demand W holds only indices from ``{W} | R | S``;
the server returns the sum of the messages in every part, and the user
subtracts the known messages from the sum of W's part.

Query construction places indices into K slots (the parts' positions)
and draws all of its randomness through a chooser (see `pirrssi.choice`),
so the exact query distribution can be enumerated:

1. W takes a uniformly chosen slot.
2. Each RSI index, in ascending order, takes a uniformly chosen free
   slot.
3. With ``i*`` the part of W, ``r`` the number of RSI indices in it and
   ``alpha`` its size, a uniformly chosen ``(alpha - r - 1)``-subset of S
   fills the rest of part ``i*``.
4. The remaining indices fill the remaining parts, part by part, each
   part taking a uniformly chosen subset of the still unplaced indices.
5. Indices are sorted within each part.

Averaged over S, every labeled partition with the prescribed part sizes
is produced with probability ``prod(|part|!) / K!`` whatever ``(W, R)``
is; `query_likelihood` returns that value.

Classes
-------
.. autosummary::
    PartitionQuery
    PartitionAnswer
    PartitionScheme
    DecodeError

Routines
--------
.. autosummary::
    part_sizes
    build_query
    server_answer
    decode
    answer_matrix
    demand_part_info
    query_likelihood

----

"""

import fractions
import itertools
import math

from pirrssi import field
from pirrssi import model
from pirrssi.mds import DecodeError


def part_sizes(k, m2):
    """Sizes of the P parts: ``M2 + 1`` each, the last one holding the rest.

    Examples
    --------
    >>> part_sizes(5, 2)
    (3, 2)
    >>> part_sizes(4, 1)
    (2, 2)

    """

    if m2 < 1:
        raise ValueError("the partition scheme needs M2 >= 1; got M2=%d "
                         "(use the MDS scheme)" % m2)
    if k < 1:
        raise ValueError("K must be positive; got K=%d" % k)
    p = model.partition_download(k, m2)
    return (m2 + 1,) * (p - 1) + (k - (p - 1) * (m2 + 1),)


class PartitionQuery(object):
    """A labeled partition of ``[K]`` into parts of prescribed sizes.

    Parameters
    ----------
    k, m1, m2 : int
    parts : sequence of iterable of int
        1-based indices; stored sorted within each part.

    Raises
    ------
    ValueError
        If the parts do not cover ``[K]`` disjointly with the sizes given
        by `part_sizes`.

    """

    __slots__ = ('k', 'm1', 'm2', 'parts')

    def __init__(self, k, m1, m2, parts):
        parts = tuple(tuple(sorted(part)) for part in parts)
        expected = part_sizes(k, m2)
        if len(parts) != len(expected):
            raise ValueError("expected %d parts for K=%d, M2=%d; got %d" %
                             (len(expected), k, m2, len(parts)))
        for position, (part, size) in enumerate(zip(parts, expected), 1):
            if len(part) != size:
                raise ValueError("part %d has %d indices, expected %d" %
                                 (position, len(part), size))
        covered = sorted(itertools.chain.from_iterable(parts))
        for index, value in enumerate(covered, 1):
            if value != index:
                raise ValueError("parts must cover [1, %d] without "
                                 "repetition; index %d is missing or "
                                 "repeated" % (k, min(index, value)))
        self.k = k
        self.m1 = m1
        self.m2 = m2
        self.parts = parts

    @property
    def p(self):
        return len(self.parts)

    @property
    def part_sizes(self):
        return tuple(len(part) for part in self.parts)

    def part_of(self, index):
        """0-based position of the part containing a 1-based index."""
        for position, part in enumerate(self.parts):
            if index in part:
                return position
        raise ValueError("index %d is not in [1, %d]" % (index, self.k))

    def _key(self):
        return (self.k, self.m1, self.m2, self.parts)

    def __eq__(self, other):
        if not isinstance(other, PartitionQuery):
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return self._key() < other._key()

    def __repr__(self):
        return 'PartitionQuery(K=%d, M1=%d, M2=%d, parts=%s)' % (
            self.k, self.m1, self.m2, [list(p) for p in self.parts])

    def __str__(self):
        return '(%s)' % ','.join('{%s}' % ','.join(str(i) for i in part)
                                 for part in self.parts)


class PartitionAnswer(model.Answer):
    """Answer of the partition scheme: one message sum per part."""


def build_query(cfg, k, m2, chooser):
    """Sample a partition query for `cfg`.

    Parameters
    ----------
    cfg : pirrssi.model.SideInfoConfig
    k, m2 : int
        Must agree with `cfg`.
    chooser : object
        `pirrssi.choice.RandomChooser` for sampling, or the replay chooser
        driven by `pirrssi.choice.enumerate_outcomes`.

    Returns
    -------
    PartitionQuery

    Examples
    --------
    >>> from pirrssi.choice import enumerate_outcomes
    >>> cfg = model.SideInfoConfig(3, 3, [1], [2])
    >>> dist = {}
    >>> for query, prob in enumerate_outcomes(
    ...         lambda c: build_query(cfg, 3, 1, c)):
    ...     dist[str(query)] = dist.get(str(query), 0) + prob
    >>> sorted((q, str(p)) for q, p in dist.items())
    [('({1,2},{3})', '1/3'), ('({1,3},{2})', '1/3'), ('({2,3},{1})', '1/3')]

    """

    if cfg.k != k or cfg.m2 != m2:
        raise ValueError("configuration (K=%d, M2=%d) does not match K=%d, "
                         "M2=%d" % (cfg.k, cfg.m2, k, m2))
    sizes = part_sizes(k, m2)
    slot_part = [position for position, size in enumerate(sizes)
                 for _ in range(size)]
    free = list(range(k))
    contents = [[] for _ in sizes]

    def place(index, slot):
        free.remove(slot)
        contents[slot_part[slot]].append(index)

    place(cfg.w, chooser.choose(list(free)))
    for index in sorted(cfg.r):
        place(index, chooser.choose(list(free)))

    demand = next(position for position, part in enumerate(contents)
                  if cfg.w in part)
    ssi_count = sizes[demand] - len(contents[demand])
    for index in chooser.choose(list(itertools.combinations(sorted(cfg.s),
                                                            ssi_count))):
        contents[demand].append(index)

    placed = set(itertools.chain.from_iterable(contents))
    unplaced = [i for i in range(1, k + 1) if i not in placed]
    for position, size in enumerate(sizes):
        vacant = size - len(contents[position])
        if not vacant:
            continue
        chosen = chooser.choose(list(itertools.combinations(unplaced,
                                                            vacant)))
        contents[position].extend(chosen)
        unplaced = [i for i in unplaced if i not in chosen]
    return PartitionQuery(k, cfg.m1, m2, contents)


def _check_database(query, db):
    if db.k != query.k:
        raise ValueError("query is for K=%d messages, database has %d" %
                         (query.k, db.k))


def server_answer(query, db):
    """Sum the messages of every part.

    Examples
    --------
    >>> from pirrssi.field import FieldVector
    >>> db = model.Database([FieldVector([v], 5) for v in (2, 3, 4)], 5)
    >>> query = PartitionQuery(3, 1, 1, [[1, 2], [3]])
    >>> [y.values for y in server_answer(query, db).symbols]
    [(0,), (4,)]

    """

    _check_database(query, db)
    return PartitionAnswer(
        [field.combine([1] * len(part), [db.message(i) for i in part])
         for part in query.parts])


def demand_part_info(query, cfg):
    """Locate W's part and count what it holds.

    Returns
    -------
    (i_star, alpha, r, s) : tuple of int
        1-based position of the part containing W, its size, and how many
        RSI and SSI indices it contains.

    """

    position = query.part_of(cfg.w)
    part = query.parts[position]
    return (position + 1, len(part),
            sum(1 for i in part if i in cfg.r),
            sum(1 for i in part if i in cfg.s))


def decode(query, answer, cfg, side):
    """Recover ``X_W = Y_i* - sum of the other messages of part i*``.

    Raises
    ------
    DecodeError
        If W's part contains an index outside ``{W} | R | S``, i.e. the
        query was not built for `cfg`.
    ValueError
        If a needed side message is missing or has the wrong length.

    """

    if answer.p != query.p:
        raise ValueError("answer has %d vectors, query has %d parts" %
                         (answer.p, query.p))
    position = query.part_of(cfg.w)
    part = query.parts[position]
    foreign = [i for i in part if i != cfg.w and i not in cfg.support]
    if foreign:
        raise DecodeError("part %d of the query holds %s, which lie outside "
                          "{W} | R | S" % (position + 1, foreign))
    result = answer.symbols[position]
    for index in part:
        if index == cfg.w:
            continue
        if index not in side:
            raise ValueError("side information lacks message %d" % index)
        if len(side[index]) != answer.n:
            raise ValueError("side message %d has %d symbols, answer has %d"
                             % (index, len(side[index]), answer.n))
        result = result - side[index]
    return result


def answer_matrix(query, modulus):
    """The P x K 0/1 matrix of part indicators over GF(q)."""
    rows = []
    for part in query.parts:
        row = [0] * query.k
        for index in part:
            row[index - 1] = 1
        rows.append(row)
    return field.FieldMatrix(rows, modulus, cols=query.k)


def query_likelihood(query):
    """``P(Q | W, R)`` averaged over S: ``prod(|part|!) / K!``.

    The value is the same for every ``(W, R)``, which is why the query
    reveals nothing about them.

    Examples
    --------
    >>> str(query_likelihood(PartitionQuery(3, 1, 1, [[1, 2], [3]])))
    '1/3'

    """

    numerator = 1
    for part in query.parts:
        numerator *= math.factorial(len(part))
    return fractions.Fraction(numerator, math.factorial(query.k))


class PartitionScheme(object):
    """The partition scheme bound to fixed parameters.

    Parameters
    ----------
    k, m1, m2 : int
        ``M2 >= 1``.
    q : int
        Field order used for `answer_matrix`; answers use the database's
        own field.

    """

    name = 'partition'

    def __init__(self, k, m1, m2, q):
        model.check_parameters(k, m1, m2)
        part_sizes(k, m2)
        if not field.is_prime(q):
            raise ValueError("q must be prime; got q=%d" % q)
        self.k = k
        self.m1 = m1
        self.m2 = m2
        self.q = q

    @property
    def download(self):
        return model.partition_download(self.k, self.m2)

    def build_query(self, cfg, chooser):
        return build_query(cfg, self.k, self.m2, chooser)

    @staticmethod
    def server_answer(query, db):
        return server_answer(query, db)

    @staticmethod
    def decode(query, answer, cfg, side):
        return decode(query, answer, cfg, side)

    def answer_matrix(self, query):
        return answer_matrix(query, self.q)

    @staticmethod
    def query_likelihood(query):
        return query_likelihood(query)

    def __repr__(self):
        return 'PartitionScheme(K=%d, M1=%d, M2=%d, q=%d)' % (
            self.k, self.m1, self.m2, self.q)
