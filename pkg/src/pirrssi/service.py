#!/usr/bin/env python3

"""TCP server and client.

One connection carries one query frame and one reply frame; the server
keeps no state between connections and only ever sees the query, never
``(W, R, S)``. Replies are answer frames, or an error frame (tag
``0xFF``) when the query is malformed or does not fit the database.

Classes
-------
.. autosummary::
    PirServer
    SessionStats
    RemoteError

Routines
--------
.. autosummary::
    answer_query
    parse_endpoint
    serve
    start_background_server
    retrieve

----

"""

import collections
import fractions
import logging
import socket
import socketserver
import threading

from pirrssi import choice
from pirrssi import mds
from pirrssi import partition
from pirrssi import schemes
from pirrssi import util
from pirrssi import wire


logger = logging.getLogger(__name__)

DEFAULT_ENDPOINT = '127.0.0.1:7878'
DEFAULT_TIMEOUT = 30.0


class RemoteError(RuntimeError):
    """The server replied with an error frame."""


class SessionStats(object):
    """Download accounting of one retrieval.

    Attributes
    ----------
    scheme : str
    bytes_up, bytes_down : int
        Bytes sent and received, frame headers included.
    symbols_down : int
        Field symbols received, ``P * n``.
    n : int
        Symbols per message.

    """

    def __init__(self, scheme, bytes_up, bytes_down, symbols_down, n):
        # pylint: disable=too-many-arguments
        self.scheme = scheme
        self.bytes_up = bytes_up
        self.bytes_down = bytes_down
        self.symbols_down = symbols_down
        self.n = n

    @property
    def achieved_rate(self):
        """``n / symbols_down``, the rate in field symbols."""
        return fractions.Fraction(self.n, self.symbols_down)

    def format_text(self):
        return ('bytes_up=%d bytes_down=%d (%s) symbols_down=%d '
                'achieved_rate=%s' % (
                    self.bytes_up, self.bytes_down,
                    util.humansize(self.bytes_down), self.symbols_down,
                    self.achieved_rate))

    def to_dict(self):
        return collections.OrderedDict([
            ('scheme', self.scheme),
            ('bytes_up', self.bytes_up),
            ('bytes_down', self.bytes_down),
            ('symbols_down', self.symbols_down),
            ('n', self.n),
            ('achieved_rate', str(self.achieved_rate)),
        ])

    def __repr__(self):
        return 'SessionStats(%s)' % self.format_text()


def answer_query(db, payload):
    """Compute the reply payload for a query payload.

    Never raises for bad input: malformed or mismatched queries produce
    an error payload.

    """

    try:
        query = wire.deserialize_query(payload)
        if isinstance(query, mds.MdsQuery):
            answer = mds.server_answer(query, db)
        else:
            answer = partition.server_answer(query, db)
        for problem in wire.validate_query(query):
            logger.warning("accepted query with a problem: %s", problem)
    except ValueError as exc:
        logger.warning("rejected query: %s", exc)
        return wire.serialize_error(str(exc))
    return wire.serialize_answer(answer)


class _QueryHandler(socketserver.BaseRequestHandler):
    """Reads one query frame and writes one reply frame."""

    def handle(self):
        server = self.server
        try:
            payload, _ = wire.read_frame(self.request, server.max_frame)
        except wire.WireFormatError as exc:
            logger.warning("%s:%d: %s", self.client_address[0],
                           self.client_address[1], exc)
            reply = wire.serialize_error(str(exc))
        else:
            reply = answer_query(server.db, payload)
            logger.info("%s:%d: query of %d bytes, reply of %d bytes",
                        self.client_address[0], self.client_address[1],
                        len(payload), len(reply))
        try:
            wire.write_frame(self.request, reply, server.max_frame)
        except (OSError, wire.WireFormatError) as exc:
            logger.warning("could not send reply: %s", exc)


class PirServer(socketserver.ThreadingTCPServer):
    """Threaded server answering queries over a read-only database.

    Parameters
    ----------
    address : (str, int)
    db : pirrssi.model.Database
    max_frame : int, optional

    """

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, address, db, max_frame=wire.DEFAULT_MAX_FRAME):
        self.db = db
        self.max_frame = max_frame
        socketserver.ThreadingTCPServer.__init__(self, address,
                                                 _QueryHandler)

    @property
    def endpoint(self):
        """Bound ``host:port``."""
        host, port = self.server_address[:2]
        return '%s:%d' % (host, port)


def parse_endpoint(endpoint):
    """Split ``host:port``.

    Examples
    --------
    >>> parse_endpoint('127.0.0.1:7878')
    ('127.0.0.1', 7878)

    """

    host, sep, port = endpoint.rpartition(':')
    if not sep or not host or not port.isdigit() or int(port) > 65535:
        raise ValueError("malformed endpoint '%s', expected host:port" %
                         endpoint)
    return host.strip('[]'), int(port)


def serve(db, endpoint=DEFAULT_ENDPOINT, max_frame=wire.DEFAULT_MAX_FRAME):
    """Serve until interrupted.

    Raises
    ------
    OSError
        If the endpoint cannot be bound.

    """

    server = PirServer(parse_endpoint(endpoint), db, max_frame)
    logger.info("serving %r on %s", db, server.endpoint)
    try:
        server.serve_forever()
    finally:
        server.server_close()


def start_background_server(db, endpoint='127.0.0.1:0',
                            max_frame=wire.DEFAULT_MAX_FRAME):
    """Start a server on a daemon thread.

    Port 0 binds an ephemeral port; read it from ``server.endpoint``.
    Stop with ``server.shutdown(); server.server_close()``.

    Returns
    -------
    (PirServer, threading.Thread)

    """

    server = PirServer(parse_endpoint(endpoint), db, max_frame)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, thread


def _exchange(endpoint, payload, timeout, max_frame):
    with socket.create_connection(parse_endpoint(endpoint),
                                  timeout=timeout) as sock:
        sent = wire.write_frame(sock, payload, max_frame)
        reply, received = wire.read_frame(sock, max_frame)
    return reply, sent, received


def retrieve(endpoint, cfg, side, scheme='auto', q=None, params=None):
    """Run the full retrieval flow against a server.

    Parameters
    ----------
    endpoint : str
        ``host:port``.
    cfg : pirrssi.model.SideInfoConfig
    side : dict
        ``index -> FieldVector`` for every index in ``R | S``.
    scheme : {'auto', 'mds', 'partition'}, optional
        ``'auto'`` picks the smaller download, MDS on ties.
    q : int, optional
        Field order; inferred from the side messages when omitted.
    params : dict, optional
        ``seed`` for the query randomness, ``timeout`` in seconds and
        ``max_frame`` in bytes.

    Returns
    -------
    (FieldVector, SessionStats)
        The decoded ``X_W``; wrong side information yields a wrong value
        without an error.

    Raises
    ------
    RemoteError
        If the server replies with an error frame.
    OSError
        On network failures.

    """

    if q is None:
        if not side:
            raise ValueError("q cannot be inferred without side "
                             "information; pass q explicitly")
        q = next(iter(side.values())).modulus
    seed = util.read_param(params, 'seed', None)
    timeout = util.read_param(params, 'timeout', DEFAULT_TIMEOUT)
    max_frame = util.read_param(params, 'max_frame', wire.DEFAULT_MAX_FRAME)

    selected = schemes.make_scheme(scheme, cfg.k, cfg.m1, cfg.m2, q)
    query = selected.build_query(cfg, choice.RandomChooser(seed))
    reply, sent, received = _exchange(endpoint, wire.serialize_query(query),
                                      timeout, max_frame)
    if wire.payload_tag(reply) == wire.TAG_ERROR:
        raise RemoteError("server error: %s" % wire.deserialize_error(reply))
    try:
        answer = wire.deserialize_answer(reply, q,
                                         expected_p=selected.download)
    except wire.WireFormatError as exc:
        raise RemoteError("malformed answer from server: %s" % exc)
    message = selected.decode(query, answer, cfg, side)
    stats = SessionStats(selected.name, sent, received, answer.symbol_count,
                         answer.n)
    logger.info("retrieved X_%d with %s: %s", cfg.w, selected.name,
                stats.format_text())
    return message, stats
