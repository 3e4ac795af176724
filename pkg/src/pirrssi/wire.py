#!/usr/bin/env python3

"""Binary wire format.

Every message travels in a frame: a 4-byte big-endian length followed
by the payload. Payloads start with a tag byte; all integers inside a
payload are little-endian u32, and field elements travel as u32
residues whatever q is.

========  ===============================================================
tag       payload after the tag
========  ===============================================================
``0x01``  MDS query: K, M1, M2, q, P, then the P x K generator row-major
``0x02``  partition query: K, M1, M2, P, then per part its size and its
          sorted 1-based indices
``0x11``  MDS answer: P, n, then P * n symbols
``0x12``  partition answer: same layout as ``0x11``
``0xFF``  error: u16 length, then a UTF-8 message
========  ===============================================================

Classes
-------
.. autosummary::
    WireFormatError

Routines
--------
.. autosummary::
    serialize_query
    deserialize_query
    validate_query
    serialize_answer
    deserialize_answer
    serialize_error
    deserialize_error
    encode_frame
    read_frame
    write_frame

----

"""

import struct

from pirrssi import field
from pirrssi import model
from pirrssi.mds import MdsAnswer, MdsQuery
from pirrssi.partition import PartitionAnswer, PartitionQuery


TAG_MDS_QUERY = 0x01
TAG_PARTITION_QUERY = 0x02
TAG_MDS_ANSWER = 0x11
TAG_PARTITION_ANSWER = 0x12
TAG_ERROR = 0xFF

QUERY_TAGS = (TAG_MDS_QUERY, TAG_PARTITION_QUERY)
ANSWER_TAGS = (TAG_MDS_ANSWER, TAG_PARTITION_ANSWER)

DEFAULT_MAX_FRAME = 16 * 1024 * 1024

_FRAME_HEADER = struct.Struct('!I')
_U32 = struct.Struct('<I')
_U16 = struct.Struct('<H')


class WireFormatError(ValueError):
    """Malformed, truncated or oversized wire data."""


class _Reader(object):
    """Sequential reader naming the field it fails to read."""

    def __init__(self, data):
        self._data = bytes(data)
        self._offset = 0

    def take(self, count, name):
        end = self._offset + count
        if end > len(self._data):
            raise WireFormatError(
                "truncated payload: missing %s at byte %d (need %d bytes, "
                "%d left)" % (name, self._offset, count,
                              len(self._data) - self._offset))
        chunk = self._data[self._offset:end]
        self._offset = end
        return chunk

    @property
    def remaining(self):
        return len(self._data) - self._offset

    def u8(self, name):
        return self.take(1, name)[0]

    def u16(self, name):
        return _U16.unpack(self.take(2, name))[0]

    def u32(self, name):
        return _U32.unpack(self.take(4, name))[0]

    def u32s(self, count, name):
        return struct.unpack('<%dI' % count, self.take(4 * count, name))

    def finish(self):
        if self._offset != len(self._data):
            raise WireFormatError("%d trailing bytes after the payload" %
                                  (len(self._data) - self._offset))


def _u32s(values):
    values = list(values)
    return struct.pack('<%dI' % len(values), *values)


def serialize_query(query):
    """Encode an `MdsQuery` or `PartitionQuery`.

    Examples
    --------
    >>> from pirrssi import mds
    >>> len(serialize_query(mds.build_query(3, 1, 1, 5)))
    33

    """

    if isinstance(query, MdsQuery):
        return (bytes([TAG_MDS_QUERY]) +
                _u32s([query.k, query.m1, query.m2, query.q, query.p]) +
                _u32s(v for row in query.generator.to_lists() for v in row))
    if isinstance(query, PartitionQuery):
        body = [query.k, query.m1, query.m2, query.p]
        for part in query.parts:
            body.append(len(part))
            body.extend(part)
        return bytes([TAG_PARTITION_QUERY]) + _u32s(body)
    raise TypeError("cannot serialize %s" % type(query).__name__)


def _deserialize_mds_query(reader):
    k = reader.u32('K')
    m1 = reader.u32('M1')
    m2 = reader.u32('M2')
    q = reader.u32('q')
    p = reader.u32('P')
    if not field.is_prime(q):
        raise WireFormatError("q=%d is not prime" % q)
    if p > k:
        raise WireFormatError("P=%d exceeds K=%d" % (p, k))
    entries = reader.u32s(p * k, 'generator entries')
    if any(v >= q for v in entries):
        raise WireFormatError("generator entry outside [0, %d)" % q)
    reader.finish()
    generator = field.FieldMatrix(
        [entries[i * k:(i + 1) * k] for i in range(p)], q, cols=k)
    return MdsQuery(k, m1, m2, q, generator)


def _deserialize_partition_query(reader):
    k = reader.u32('K')
    m1 = reader.u32('M1')
    m2 = reader.u32('M2')
    p = reader.u32('P')
    if k < 1 or m2 < 1:
        raise WireFormatError("invalid partition query: K=%d, M2=%d (both "
                              "must be positive)" % (k, m2))
    if p != model.partition_download(k, m2):
        raise WireFormatError("P=%d differs from ceil(K/(M2+1))=%d" %
                              (p, model.partition_download(k, m2)))
    # every index and every part size takes four bytes
    if reader.remaining < 4 * (k + p):
        raise WireFormatError(
            "truncated payload: %d bytes left for the parts of K=%d, P=%d "
            "(need %d)" % (reader.remaining, k, p, 4 * (k + p)))
    parts = []
    for position in range(1, p + 1):
        size = reader.u32('size of part %d' % position)
        if size > k:
            raise WireFormatError("part %d has size %d > K=%d" %
                                  (position, size, k))
        indices = reader.u32s(size, 'indices of part %d' % position)
        if list(indices) != sorted(indices):
            raise WireFormatError("indices of part %d are not sorted" %
                                  position)
        parts.append(indices)
    reader.finish()
    try:
        return PartitionQuery(k, m1, m2, parts)
    except ValueError as exc:
        raise WireFormatError("invalid partition query: %s" % exc)


def deserialize_query(data):
    """Decode a query payload.

    Raises
    ------
    WireFormatError
        Unknown tag, truncation (the message names the missing field),
        trailing bytes or a structurally invalid query. A non-MDS
        generator is accepted here; see `validate_query`.

    """

    reader = _Reader(data)
    tag = reader.u8('tag')
    if tag == TAG_MDS_QUERY:
        return _deserialize_mds_query(reader)
    if tag == TAG_PARTITION_QUERY:
        return _deserialize_partition_query(reader)
    raise WireFormatError("unknown query tag 0x%02X" % tag)


def _is_vandermonde(generator):
    if generator.modulus < generator.cols:
        return False
    return generator == field.vandermonde_generator(
        generator.rows, generator.cols, generator.modulus)


def validate_query(query, exhaustive=False):
    """Semantic checks beyond the wire structure.

    Parameters
    ----------
    query : MdsQuery or PartitionQuery
    exhaustive : bool, optional
        Decide MDS-ness of a generator that differs from the standard
        Vandermonde one with `pirrssi.field.is_mds`, which costs
        ``C(K, P)`` rank computations. Off by default, in which case
        such a generator is only reported as non-standard.

    Returns
    -------
    list of str
        Problems found; empty when the query is sound.

    Examples
    --------
    >>> from pirrssi import mds
    >>> validate_query(mds.build_query(6, 1, 2, 7))
    []

    """

    problems = []
    if isinstance(query, MdsQuery):
        if query.m1 + query.m2 >= query.k:
            problems.append("K=%d does not exceed M1+M2=%d" %
                            (query.k, query.m1 + query.m2))
        elif query.p != query.k - query.m1 - query.m2:
            problems.append("P=%d differs from K-M1-M2=%d" %
                            (query.p, query.k - query.m1 - query.m2))
        if query.p and not _is_vandermonde(query.generator):
            if not exhaustive:
                problems.append("generator is not the Vandermonde generator "
                                "over GF(%d)" % query.q)
            elif not field.is_mds(query.generator):
                problems.append("generator is not MDS")
    elif query.m1 + query.m2 >= query.k:
        problems.append("K=%d does not exceed M1+M2=%d" %
                        (query.k, query.m1 + query.m2))
    return problems


def serialize_answer(answer):
    """Encode an answer: tag, P, n, then the symbols row by row.

    Examples
    --------
    >>> from pirrssi.field import FieldVector
    >>> serialize_answer(PartitionAnswer([FieldVector([0], 5),
    ...                                   FieldVector([4], 5)])).hex()
    '1202000000010000000000000004000000'

    """

    if isinstance(answer, MdsAnswer):
        tag = TAG_MDS_ANSWER
    elif isinstance(answer, PartitionAnswer):
        tag = TAG_PARTITION_ANSWER
    else:
        raise TypeError("cannot serialize %s" % type(answer).__name__)
    return (bytes([tag]) + _u32s([answer.p, answer.n]) +
            _u32s(v for vector in answer.symbols for v in vector.values))


def deserialize_answer(data, modulus, expected_p=None):
    """Decode an answer payload into field vectors over GF(`modulus`).

    Parameters
    ----------
    data : bytes
    modulus : int
    expected_p : int, optional
        Number of answer vectors the query asked for; any other count is
        rejected before the symbols are read.

    Raises
    ------
    WireFormatError
        Unknown tag, truncation, an unexpected vector count, empty
        vectors or symbols not below `modulus`.

    """

    reader = _Reader(data)
    tag = reader.u8('tag')
    if tag == TAG_MDS_ANSWER:
        cls = MdsAnswer
    elif tag == TAG_PARTITION_ANSWER:
        cls = PartitionAnswer
    else:
        raise WireFormatError("unknown answer tag 0x%02X" % tag)
    p = reader.u32('P')
    n = reader.u32('n')
    if expected_p is not None and p != expected_p:
        raise WireFormatError("answer has P=%d vectors, expected %d" %
                              (p, expected_p))
    if n < 1:
        raise WireFormatError("answer vectors need at least one symbol; "
                              "got n=%d" % n)
    symbols = reader.u32s(p * n, 'answer symbols')
    reader.finish()
    if any(v >= modulus for v in symbols):
        raise WireFormatError("answer symbol outside [0, %d)" % modulus)
    return cls([field.FieldVector(symbols[i * n:(i + 1) * n], modulus)
                for i in range(p)])


def serialize_error(message):
    """Encode an error payload, truncating the message to 65535 bytes."""
    encoded = message.encode('utf-8')[:0xFFFF]
    return bytes([TAG_ERROR]) + _U16.pack(len(encoded)) + encoded


def deserialize_error(data):
    reader = _Reader(data)
    tag = reader.u8('tag')
    if tag != TAG_ERROR:
        raise WireFormatError("expected error tag 0xFF, got 0x%02X" % tag)
    length = reader.u16('message length')
    message = reader.take(length, 'message')
    reader.finish()
    return message.decode('utf-8', errors='replace')


def payload_tag(data):
    """Tag byte of a payload."""
    if not data:
        raise WireFormatError("truncated payload: missing tag at byte 0")
    return data[0]


def encode_frame(payload, max_size=DEFAULT_MAX_FRAME):
    if len(payload) > max_size:
        raise WireFormatError("frame of %d bytes exceeds the limit of %d" %
                              (len(payload), max_size))
    return _FRAME_HEADER.pack(len(payload)) + payload


def _recv_exact(sock, count, name):
    chunks = []
    remaining = count
    while remaining > 0:
        chunk = sock.recv(min(remaining, 65536))
        if not chunk:
            raise WireFormatError("connection closed with %d bytes of the "
                                  "%s missing" % (remaining, name))
        chunks.append(chunk)
        remaining -= len(chunk)
    return b''.join(chunks)


def read_frame(sock, max_size=DEFAULT_MAX_FRAME):
    """Read one frame from a connected socket.

    Returns
    -------
    (payload, frame_bytes)
        The payload and the number of bytes read, header included.

    Raises
    ------
    WireFormatError
        On a premature end of stream or a frame larger than `max_size`.
    OSError
        On socket errors.

    """

    length = _FRAME_HEADER.unpack(_recv_exact(sock, 4, 'frame header'))[0]
    if length > max_size:
        raise WireFormatError("frame of %d bytes exceeds the limit of %d" %
                              (length, max_size))
    return _recv_exact(sock, length, 'frame payload'), length + 4


def write_frame(sock, payload, max_size=DEFAULT_MAX_FRAME):
    """Send one frame; returns the number of bytes sent."""
    frame = encode_frame(payload, max_size)
    sock.sendall(frame)
    return len(frame)
