#!/usr/bin/env python3

"""Problem instances and capacity formulas for single-server PIR-RSSI.

A server stores K messages, each a length-n vector over GF(q). A user
knows the messages indexed by R (reusable side information, whose
identities must stay private) and S (single-use side information, whose
identities may leak) and wants message W. Rates are exact
`fractions.Fraction` values throughout.

Classes
-------
.. autosummary::
    Database
    SideInfoConfig
    Answer

Routines
--------
.. autosummary::
    sample_config
    all_configs
    capacity_conjectured
    achievable_rate
    upper_bound_theorem1
    naive_upper_remark1
    multiserver_conjecture
    multiserver_download_cost
    capacity_psi
    capacity_si
    capacity_status
    regime
    select_scheme
    lemma2_bound
    determining_set_bound
    download_lower_bound
    format_rate

----

"""

import fractions
import itertools
import os
import random
import struct

from pirrssi import field
from pirrssi.field import FieldVector


DATABASE_MAGIC = b'PIRR'
DATABASE_VERSION = 1
# magic, version, K, n, q
_DATABASE_HEADER = struct.Struct('<4sBIII')


def ceil_div(numerator, denominator):
    """Integer ceiling of ``numerator / denominator`` for positive ints."""
    return -(-numerator // denominator)


def check_parameters(k, m1, m2):
    """Validate ``K > M1 + M2`` with nonnegative side-information sizes.

    Raises
    ------
    ValueError
        Naming the violated constraint.

    """

    if m1 < 0 or m2 < 0:
        raise ValueError("M1 and M2 must be nonnegative; got M1=%d, M2=%d"
                         % (m1, m2))
    if k <= m1 + m2:
        raise ValueError("K must exceed M1 + M2; got K=%d, M1=%d, M2=%d"
                         % (k, m1, m2))


def format_rate(rate):
    """Render a rate as ``num/den``, always with a denominator.

    Examples
    --------
    >>> one = fractions.Fraction(1)
    >>> format_rate(one / 3), format_rate(one)
    ('1/3', '1/1')

    """

    return '%d/%d' % (rate.numerator, rate.denominator)


class Database(object):
    """K messages of n symbols over GF(q).

    Parameters
    ----------
    messages : sequence of FieldVector
        The messages ``X_1, ..., X_K`` in order.
    modulus : int
        Field order q (prime).

    Attributes
    ----------
    k : int
    n : int
    q : int
    messages : tuple of FieldVector

    Raises
    ------
    ValueError
        If there are no messages, the messages are empty or of unequal
        lengths, or q is not prime.

    """

    def __init__(self, messages, modulus):
        if not field.is_prime(modulus):
            raise ValueError("q must be prime; got %d" % modulus)
        messages = tuple(messages)
        if not messages:
            raise ValueError("a database needs at least one message (K >= 1)")
        length = len(messages[0])
        if length < 1:
            raise ValueError("messages need at least one symbol (n >= 1)")
        for index, message in enumerate(messages, 1):
            if len(message) != length:
                raise ValueError("message %d has %d symbols, expected %d" %
                                 (index, len(message), length))
            if message.modulus != modulus:
                raise field.FieldMismatchError(
                    "message %d lives in GF(%d), expected GF(%d)" %
                    (index, message.modulus, modulus))
        self.messages = messages
        self.k = len(messages)
        self.n = length
        self.q = modulus

    @classmethod
    def random(cls, k, n, modulus, seed=None):
        """Uniformly random database; deterministic for a fixed seed.

        Parameters
        ----------
        k, n : int
        modulus : int
        seed : int or random.Random, optional

        """

        if k < 1 or n < 1:
            raise ValueError("K and n must be positive; got K=%d, n=%d" %
                             (k, n))
        if not field.is_prime(modulus):
            raise ValueError("q must be prime; got %d" % modulus)
        rng = seed if hasattr(seed, 'randrange') else random.Random(seed)
        return cls([FieldVector([rng.randrange(modulus) for _ in range(n)],
                                modulus) for _ in range(k)], modulus)

    def message(self, index):
        """Message ``X_index`` (1-based)."""
        if not 1 <= index <= self.k:
            raise IndexError("message index %d outside [1, %d]" %
                             (index, self.k))
        return self.messages[index - 1]

    def side_information(self, indices):
        """Mapping ``index -> X_index`` for the given 1-based indices."""
        return dict((index, self.message(index)) for index in indices)

    def to_bytes(self):
        """Serialize to the binary ``PIRR`` database format."""
        header = _DATABASE_HEADER.pack(DATABASE_MAGIC, DATABASE_VERSION,
                                       self.k, self.n, self.q)
        body = struct.pack('<%dI' % (self.k * self.n),
                           *[v for m in self.messages for v in m.values])
        return header + body

    @classmethod
    def from_bytes(cls, data):
        """Parse the binary ``PIRR`` database format.

        Raises
        ------
        ValueError
            On a bad magic number, unsupported version, truncated or
            overlong body, or residues not below q.

        """

        if len(data) < _DATABASE_HEADER.size:
            raise ValueError("database truncated: %d bytes, header needs %d"
                             % (len(data), _DATABASE_HEADER.size))
        magic, version, k, n, modulus = _DATABASE_HEADER.unpack_from(data)
        if magic != DATABASE_MAGIC:
            raise ValueError("not a database file (magic %r)" % magic)
        if version != DATABASE_VERSION:
            raise ValueError("unsupported database version %d" % version)
        if k < 1 or n < 1:
            raise ValueError("database header has K=%d, n=%d; both must be "
                             "positive" % (k, n))
        expected = _DATABASE_HEADER.size + 4 * k * n
        if len(data) != expected:
            raise ValueError("database body has %d bytes, expected %d" %
                             (len(data) - _DATABASE_HEADER.size,
                              expected - _DATABASE_HEADER.size))
        values = struct.unpack_from('<%dI' % (k * n), data,
                                    _DATABASE_HEADER.size)
        if any(v >= modulus for v in values):
            raise ValueError("database holds residues not below q=%d" %
                             modulus)
        return cls([FieldVector(values[i * n:(i + 1) * n], modulus)
                    for i in range(k)], modulus)

    def save(self, path):
        with open(path, 'wb') as fileobj:
            fileobj.write(self.to_bytes())

    @classmethod
    def load(cls, path):
        if not os.path.exists(path):
            raise OSError("database file '%s' does not exist" % path)
        with open(path, 'rb') as fileobj:
            return cls.from_bytes(fileobj.read())

    def __eq__(self, other):
        if not isinstance(other, Database):
            return NotImplemented
        return (self.q, self.messages) == (other.q, other.messages)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return 'Database(K=%d, n=%d, q=%d)' % (self.k, self.n, self.q)


class SideInfoConfig(object):
    """The realization ``(W, R, S)`` held by a user.

    Parameters
    ----------
    k : int
        Number of messages on the server.
    w : int
        Demand index in ``[1, K]``.
    r : iterable of int
        RSI index set (size M1).
    s : iterable of int
        SSI index set (size M2).

    Raises
    ------
    ValueError
        If an index is out of range, R and S overlap, W lies in
        ``R | S``, or ``K <= M1 + M2``.

    Examples
    --------
    >>> cfg = SideInfoConfig(4, 2, [1], [3])
    >>> cfg.m1, cfg.m2, sorted(cfg.support)
    (1, 1, [1, 2, 3])

    """

    __slots__ = ('k', 'w', 'r', 's')

    def __init__(self, k, w, r, s):
        r = frozenset(r)
        s = frozenset(s)
        check_parameters(k, len(r), len(s))
        for index in itertools.chain([w], r, s):
            if not 1 <= index <= k:
                raise ValueError("index %d outside [1, %d]" % (index, k))
        if r & s:
            raise ValueError("R and S must be disjoint; both contain %s" %
                             sorted(r & s))
        if w in r or w in s:
            raise ValueError("W=%d must not belong to R or S" % w)
        self.k = k
        self.w = w
        self.r = r
        self.s = s

    @property
    def m1(self):
        return len(self.r)

    @property
    def m2(self):
        return len(self.s)

    @property
    def side_indices(self):
        """Sorted ``R | S``."""
        return tuple(sorted(self.r | self.s))

    @property
    def support(self):
        """``R | S | {W}``."""
        return self.r | self.s | frozenset([self.w])

    def _key(self):
        return (self.k, self.w, tuple(sorted(self.r)), tuple(sorted(self.s)))

    def __eq__(self, other):
        if not isinstance(other, SideInfoConfig):
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
        return 'SideInfoConfig(k=%d, w=%d, r=%s, s=%s)' % (
            self.k, self.w, sorted(self.r), sorted(self.s))


class Answer(object):
    """Server answer: P vectors ``Y_1, ..., Y_P`` of n symbols each.

    Attributes
    ----------
    symbols : tuple of FieldVector

    """

    def __init__(self, symbols):
        symbols = tuple(symbols)
        if symbols:
            length = len(symbols[0])
            if any(len(y) != length for y in symbols):
                raise ValueError("answer vectors have unequal lengths")
        self.symbols = symbols

    @property
    def p(self):
        return len(self.symbols)

    @property
    def n(self):
        return len(self.symbols[0]) if self.symbols else 0

    @property
    def symbol_count(self):
        """Downloaded field symbols, ``P * n``."""
        return self.p * self.n

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.symbols == other.symbols

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return '%s(P=%d, n=%d)' % (type(self).__name__, self.p, self.n)


def all_configs(k, m1, m2):
    """Every valid ``(W, R, S)`` in lexicographic order of ``(R, S, W)``.

    Under the uniform prior each configuration is equally likely.

    """

    check_parameters(k, m1, m2)
    indices = range(1, k + 1)
    for r in itertools.combinations(indices, m1):
        rest = [i for i in indices if i not in r]
        for s in itertools.combinations(rest, m2):
            for w in rest:
                if w not in s:
                    yield SideInfoConfig(k, w, r, s)


def sample_config(k, m1, m2, chooser):
    """Draw ``(W, R, S)`` from the uniform prior.

    ``(R, S)`` is uniform over disjoint (M1, M2)-subset pairs and W is
    uniform over the remaining indices.

    Parameters
    ----------
    k, m1, m2 : int
    chooser : object
        A chooser from `pirrssi.choice`.

    Returns
    -------
    SideInfoConfig

    """

    check_parameters(k, m1, m2)
    indices = list(range(1, k + 1))
    r = chooser.choose(list(itertools.combinations(indices, m1)))
    rest = [i for i in indices if i not in r]
    s = chooser.choose(list(itertools.combinations(rest, m2)))
    w = chooser.choose([i for i in rest if i not in s])
    return SideInfoConfig(k, w, r, s)


def mds_download(k, m1, m2):
    """Answer vectors downloaded by the MDS scheme, ``K - M1 - M2``."""
    check_parameters(k, m1, m2)
    return k - m1 - m2


def partition_download(k, m2):
    """Partition scheme download, ``ceil(K / (M2 + 1))``."""
    return ceil_div(k, m2 + 1)


def optimal_download(k, m1, m2):
    """``K* = min(K - M1 - M2, ceil(K / (M2 + 1)))``."""
    return min(mds_download(k, m1, m2), partition_download(k, m2))


def capacity_conjectured(k, m1, m2):
    """``1 / min(K - M1 - M2, ceil(K / (M2 + 1)))``.

    Proven to be the capacity when M1 <= 1 or M2 <= 1 and conjectured
    otherwise; see `capacity_status`.

    Examples
    --------
    >>> format_rate(capacity_conjectured(6, 2, 1))
    '1/3'

    """

    return fractions.Fraction(1, optimal_download(k, m1, m2))


def achievable_rate(k, m1, m2):
    """Rate of the better of the two schemes, a capacity lower bound."""
    return capacity_conjectured(k, m1, m2)


def upper_bound_theorem1(k, m1, m2):
    """Converse bound for ``M1 = 1`` or ``M2 = 1``; ``None`` otherwise.

    Returns ``1/min(K-M2-1, ceil(K/(M2+1)))`` when M1 is 1 and
    ``1/min(K-M1-1, ceil(K/2))`` when M2 is 1.

    Examples
    --------
    >>> format_rate(upper_bound_theorem1(7, 2, 1))
    '1/4'
    >>> print(upper_bound_theorem1(6, 2, 2))
    None

    """

    check_parameters(k, m1, m2)
    if m1 < 1 or m2 < 1:
        raise ValueError("the bound needs M1 >= 1 and M2 >= 1; got M1=%d, "
                         "M2=%d" % (m1, m2))
    if m1 == 1:
        return fractions.Fraction(1, min(k - m2 - 1, ceil_div(k, m2 + 1)))
    if m2 == 1:
        return fractions.Fraction(1, min(k - m1 - 1, ceil_div(k, 2)))
    return None


def naive_upper_remark1(k, m1, m2):
    """The loose bound ``1 / ceil((K - M1) / (M2 + 1))``.

    Examples
    --------
    >>> format_rate(naive_upper_remark1(6, 2, 1))
    '1/2'

    """

    check_parameters(k, m1, m2)
    return fractions.Fraction(1, ceil_div(k - m1, m2 + 1))


def multiserver_conjecture(k, m1, m2, servers):
    """Conjectured capacity of N-server PIR-RSSI.

    Returns the capacity ``(1 - 1/N) / (1 - 1/N**K*)``, not the download
    cost; `multiserver_download_cost` is the reciprocal.

    Examples
    --------
    >>> format_rate(multiserver_conjecture(4, 1, 1, 2))
    '2/3'

    """

    check_parameters(k, m1, m2)
    if servers < 2:
        raise ValueError("N must be at least 2; got N=%d" % servers)
    kstar = optimal_download(k, m1, m2)
    one = fractions.Fraction(1)
    return (one - fractions.Fraction(1, servers)) / \
        (one - fractions.Fraction(1, servers ** kstar))


def multiserver_download_cost(k, m1, m2, servers):
    """Normalized download ``(1 - 1/N**K*) / (1 - 1/N)``."""
    return 1 / multiserver_conjecture(k, m1, m2, servers)


def capacity_psi(k, m):
    """Capacity with M private side messages only, ``1/(K - M)``."""
    check_parameters(k, m, 0)
    return fractions.Fraction(1, k - m)


def capacity_si(k, m):
    """Capacity with M non-private side messages only, ``1/ceil(K/(M+1))``."""
    check_parameters(k, 0, m)
    return fractions.Fraction(1, ceil_div(k, m + 1))


def capacity_status(k, m1, m2):
    """``'capacity'`` where the formula is proven, else ``'conjectured'``."""
    check_parameters(k, m1, m2)
    return 'capacity' if m1 <= 1 or m2 <= 1 else 'conjectured'


def regime(k, m1, m2):
    """``'small'`` if ``K - M1 - M2 < ceil(K/(M2+1))``, else ``'large'``.

    In the small regime the SSI helps only if kept private (the MDS
    scheme is optimal); in the large regime the RSI cannot help (the
    partition scheme is optimal).

    """

    if mds_download(k, m1, m2) < partition_download(k, m2):
        return 'small'
    return 'large'


def select_scheme(k, m1, m2):
    """Pick the scheme with the smaller download; ties go to MDS.

    MDS also hides S, so it wins ties.

    Examples
    --------
    >>> select_scheme(6, 2, 1), select_scheme(8, 1, 3)
    ('mds', 'partition')

    """

    if mds_download(k, m1, m2) <= partition_download(k, m2):
        return 'mds'
    return 'partition'


def lemma2_bound(k, m2):
    """``floor(K * M2 / (M2 + 1))``."""
    return k * m2 // (m2 + 1)


def determining_set_bound(k, m1, m2):
    """``max(M1 + M2, floor(K * M2 / (M2 + 1)))``.

    Any valid scheme in the proven regimes admits a determining set no
    larger than this, which forces ``H(A) >= (K - L) B``.

    """

    check_parameters(k, m1, m2)
    return max(m1 + m2, lemma2_bound(k, m2))


def download_lower_bound(k, size):
    """Answer length forced by a determining set of the given size.

    With L messages determining the rest, ``H(A) >= (K - L)`` messages'
    worth of symbols.

    """

    if not 0 <= size <= k:
        raise ValueError("L must lie in [0, K]; got L=%d, K=%d" % (size, k))
    return k - size
