#!/usr/bin/env python3

"""Command line interface.

Subcommands:

* ``gen-db``: write a random database file;
* ``capacity``: tabulate capacity formulas and bounds over ranges;
* ``run``: retrieve a message end to end through an in-process server;
* ``audit``: exact privacy audit of a scheme;
* ``probe``: converse probes on the answers a scheme can produce;
* ``serve`` and ``fetch``: server and client over TCP.

Options may also be stored in ``$XDG_CONFIG_HOME/pir-rssi/pir-rssi.conf``
(``~/.config/pir-rssi/pir-rssi.conf`` when the variable is unset), one
section per subcommand. ``PIR_RSSI_BUDGET`` overrides the audit budget
from the config file.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 I/O or network error.

Routines
--------
.. autosummary::
    main

----

"""

import argparse
import collections
import configparser
import fractions
import json
import logging
import sys

from pirrssi import audit
from pirrssi import choice
from pirrssi import field
from pirrssi import model
from pirrssi import schemes
from pirrssi import service
from pirrssi import util
from pirrssi import version
from pirrssi.mds import DecodeError


APPNAME = 'pir-rssi'

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

_DEFAULTS = {
    'n': 1,
    'seed': 0,
    'scheme': 'auto',
    'format': 'text',
    'budget': audit.DEFAULT_BUDGET,
    'verbose': 'auto',
    'endpoint': service.DEFAULT_ENDPOINT,
    'k_range': '3-8',
    'm1_range': '1-3',
    'm2_range': '1-3',
}


class UsageError(ValueError):
    """Invalid or missing option."""


def _add_output_options(parser):
    parser.add_argument(
        '--format', choices=['text', 'json'],
        help="Output format. Default is text.")
    parser.add_argument(
        '--verbose', '-v', choices=['auto', 'on', 'off'], nargs='?',
        const='on',
        help="""Whether to print progress and log messages to stderr.
        Default is 'auto' (on if stderr is a terminal).""")


def _add_instance_options(parser, with_q=True):
    parser.add_argument('--K', dest='k', type=int, metavar='K',
                        help="Number of messages on the server.")
    parser.add_argument('--M1', dest='m1', type=int, metavar='M1',
                        help="Size of the reusable side information.")
    parser.add_argument('--M2', dest='m2', type=int, metavar='M2',
                        help="Size of the single-use side information.")
    if with_q:
        parser.add_argument(
            '--q', dest='q', type=int, metavar='Q',
            help="Prime field order. Default is the smallest prime >= K.")


def _add_scheme_option(parser):
    parser.add_argument(
        '--scheme', choices=list(schemes.SCHEME_CHOICES),
        help="""Scheme to use; 'auto' (the default) picks the smaller
        download and MDS on ties.""")


def _add_config_options(parser):
    parser.add_argument('--W', dest='w', type=int, metavar='W',
                        help="Demand index (1-based).")
    parser.add_argument('--R', dest='r', metavar='LIST',
                        help="RSI indices, e.g. '1,3' or '1-2'.")
    parser.add_argument('--S', dest='s', metavar='LIST',
                        help="SSI indices, e.g. '2,4'.")


def _build_parser():
    description = """Single-server private information retrieval with
    private (reusable) and non-private (single-use) side information:
    schemes, exact privacy audits and a TCP client/server."""
    parser = argparse.ArgumentParser(prog=APPNAME, description=description)
    parser.add_argument('--version', action='version',
                        version=version.__version__)
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    gen_db = subparsers.add_parser('gen-db', help="Write a random database.")
    gen_db.add_argument('--K', dest='k', type=int, metavar='K')
    gen_db.add_argument('--n', dest='n', type=int, metavar='N',
                        help="Symbols per message. Default is 1.")
    gen_db.add_argument('--q', dest='q', type=int, metavar='Q')
    gen_db.add_argument('--seed', type=int)
    gen_db.add_argument('-o', '--output', required=True, metavar='PATH')
    _add_output_options(gen_db)

    capacity = subparsers.add_parser(
        'capacity', help="Tabulate capacities and bounds.")
    capacity.add_argument('--K', dest='k_range', metavar='RANGE',
                          help="Range of K, e.g. '3-8'.")
    capacity.add_argument('--M1', dest='m1_range', metavar='RANGE')
    capacity.add_argument('--M2', dest='m2_range', metavar='RANGE')
    capacity.add_argument(
        '--servers', type=int, metavar='N',
        help="Also show the conjectured capacity with N servers.")
    _add_output_options(capacity)

    run = subparsers.add_parser(
        'run', help="Retrieve a message end to end on loopback.")
    _add_instance_options(run)
    run.add_argument('--n', dest='n', type=int, metavar='N')
    run.add_argument('--seed', type=int)
    _add_scheme_option(run)
    _add_config_options(run)
    run.add_argument(
        '--corrupt-side', action='store_true', default=None,
        help="""Perturb the lowest-indexed side message before decoding.""")
    _add_output_options(run)

    audit_parser = subparsers.add_parser(
        'audit', help="Exact privacy audit of a scheme.")
    _add_instance_options(audit_parser)
    _add_scheme_option(audit_parser)
    audit_parser.add_argument(
        '--budget', type=int,
        help="Maximum randomness-tree leaves. Default is %d." %
        audit.DEFAULT_BUDGET)
    _add_output_options(audit_parser)

    probe = subparsers.add_parser(
        'probe', help="Converse probes on a scheme's answers.")
    _add_instance_options(probe)
    _add_scheme_option(probe)
    probe.add_argument('--budget', type=int)
    _add_output_options(probe)

    serve = subparsers.add_parser('serve', help="Serve a database over TCP.")
    serve.add_argument('--db', required=True, metavar='PATH')
    serve.add_argument('--endpoint', metavar='HOST:PORT')
    _add_output_options(serve)

    fetch = subparsers.add_parser('fetch', help="Retrieve from a server.")
    fetch.add_argument('--endpoint', metavar='HOST:PORT')
    fetch.add_argument(
        '--side-db', required=True, metavar='PATH',
        help="""Database file supplying the side information; only the
        messages indexed by R and S are read from it.""")
    _add_instance_options(fetch, with_q=False)
    fetch.add_argument('--seed', type=int)
    _add_scheme_option(fetch)
    _add_config_options(fetch)
    fetch.add_argument('--stats-only', action='store_true', default=None,
                       help="Print the session statistics only.")
    _add_output_options(fetch)
    return parser


def _require(optreader, name, opttype=int, flag=None):
    value = optreader.opt(name, opttype)
    if value is None:
        raise UsageError("missing required option %s" %
                         (flag or '--%s' % name.upper()))
    return value


def _indices(text):
    if text is None or not str(text).strip():
        return []
    return util.parse_range(text)


def _instance(optreader):
    k = _require(optreader, 'k', flag='--K')
    m1 = _require(optreader, 'm1', flag='--M1')
    m2 = _require(optreader, 'm2', flag='--M2')
    model.check_parameters(k, m1, m2)
    q = optreader.opt('q', int)
    if q is None:
        q = field.next_prime(k)
    return k, m1, m2, q


def _explicit_config(optreader, k, m1, m2):
    """Configuration from --W/--R/--S, or None when --W is absent."""
    w = optreader.opt('w', int)
    if w is None:
        return None
    cfg = model.SideInfoConfig(k, w, _indices(optreader.opt('r')),
                               _indices(optreader.opt('s')))
    if (cfg.m1, cfg.m2) != (m1, m2):
        raise UsageError("--R and --S have sizes %d and %d, expected M1=%d "
                         "and M2=%d" % (cfg.m1, cfg.m2, m1, m2))
    return cfg


def _emit(fmt, text, data):
    if fmt == 'json':
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _theory_note(rate, theory):
    if rate == theory:
        return '(= theory)'
    return '(theory %s)' % model.format_rate(theory)


def _format_config(cfg):
    return 'W=%d R={%s} S={%s}' % (
        cfg.w, ','.join(str(i) for i in sorted(cfg.r)),
        ','.join(str(i) for i in sorted(cfg.s)))


def _retrieval_result(cfg, scheme_name, message, stats, stats_only=False):
    theory = _theory_rate(cfg, scheme_name)
    lines = ['%s' % _format_config(cfg),
             'scheme=%s, rate=%s %s' % (
                 stats.scheme, model.format_rate(stats.achieved_rate),
                 _theory_note(stats.achieved_rate, theory)),
             stats.format_text()]
    data = collections.OrderedDict([
        ('W', cfg.w), ('R', sorted(cfg.r)), ('S', sorted(cfg.s)),
        ('theory_rate', str(theory)),
    ])
    data.update(stats.to_dict())
    if not stats_only:
        lines.insert(2, 'X_%d = %s' % (cfg.w, list(message.values)))
        data['message'] = list(message.values)
    else:
        lines = lines[1:]
    return lines, data


def _theory_rate(cfg, scheme_name):
    if scheme_name == 'mds':
        return fractions.Fraction(1, model.mds_download(cfg.k, cfg.m1,
                                                        cfg.m2))
    return fractions.Fraction(1, model.partition_download(cfg.k, cfg.m2))


def cmd_gen_db(optreader):
    k = _require(optreader, 'k', flag='--K')
    n = _require(optreader, 'n', flag='--n')
    q = optreader.opt('q', int)
    if q is None:
        q = field.next_prime(k)
    path = optreader.opt('output')
    db = model.Database.random(k, n, q, optreader.opt('seed', int))
    db.save(path)
    size = len(db.to_bytes())
    _emit(optreader.opt('format'),
          "wrote %s: K=%d n=%d q=%d (%d bytes)" % (path, k, n, q, size),
          collections.OrderedDict([('path', path), ('K', k), ('n', n),
                                   ('q', q), ('bytes', size)]))
    return EXIT_OK


def _capacity_row(k, m1, m2, servers):
    conjectured = model.capacity_conjectured(k, m1, m2)
    try:
        theorem1 = model.upper_bound_theorem1(k, m1, m2)
    except ValueError:
        theorem1 = None
    remark1 = model.naive_upper_remark1(k, m1, m2)
    row = collections.OrderedDict([
        ('K', k), ('M1', m1), ('M2', m2),
        ('conjectured', model.format_rate(conjectured)),
        ('theorem1', model.format_rate(theorem1)
         if theorem1 is not None else 'n/a'),
        ('remark1', model.format_rate(remark1)),
        ('gap', remark1 > conjectured),
        ('status', model.capacity_status(k, m1, m2)),
        ('regime', model.regime(k, m1, m2)),
        ('scheme', model.select_scheme(k, m1, m2)),
    ])
    if servers is not None:
        row['multiserver'] = model.format_rate(
            model.multiserver_conjecture(k, m1, m2, servers))
    return row


def cmd_capacity(optreader):
    servers = optreader.opt('servers', int)
    rows = []
    for k in util.parse_range(optreader.opt('k_range')):
        for m1 in util.parse_range(optreader.opt('m1_range')):
            for m2 in util.parse_range(optreader.opt('m2_range')):
                if k > m1 + m2:
                    rows.append(_capacity_row(k, m1, m2, servers))
    header = '(K,M1,M2): conjectured | theorem1 | remark1 | gap | status ' \
             '| regime | scheme'
    if servers is not None:
        header += ' | N=%d' % servers
    lines = [header]
    for row in rows:
        cells = [row['conjectured'], row['theorem1'], row['remark1'],
                 'GAP' if row['gap'] else '—', row['status'],
                 row['regime'], row['scheme']]
        if servers is not None:
            cells.append(row['multiserver'])
        lines.append('(%d,%d,%d): %s' % (row['K'], row['M1'], row['M2'],
                                          ' | '.join(cells)))
    _emit(optreader.opt('format'), '\n'.join(lines), rows)
    return EXIT_OK


def _corrupt(side):
    side = dict(side)
    if side:
        index = min(side)
        message = side[index]
        side[index] = message + field.FieldVector([1] * len(message),
                                                  message.modulus)
    return side


def cmd_run(optreader):
    k, m1, m2, q = _instance(optreader)
    n = _require(optreader, 'n', flag='--n')
    chooser = choice.RandomChooser(optreader.opt('seed', int))
    db = model.Database.random(k, n, q, chooser.random)
    cfg = _explicit_config(optreader, k, m1, m2)
    if cfg is None:
        cfg = model.sample_config(k, m1, m2, chooser)
    side = db.side_information(cfg.side_indices)
    if optreader.opt('corrupt_side', bool):
        side = _corrupt(side)
    scheme_name = schemes.resolve_scheme_name(optreader.opt('scheme'), k, m1,
                                              m2)

    server, thread = service.start_background_server(db)
    try:
        message, stats = service.retrieve(
            server.endpoint, cfg, side, scheme_name, q,
            params={'seed': chooser.random.randrange(2 ** 32)})
    finally:
        server.shutdown()
        server.server_close()
        thread.join()

    lines, data = _retrieval_result(cfg, scheme_name, message, stats)
    expected = db.message(cfg.w)
    verified = message == expected
    data['verified'] = verified
    lines.insert(0, 'instance: K=%d M1=%d M2=%d q=%d n=%d' % (k, m1, m2, q,
                                                             n))
    lines.append('verified: %s' % ('OK' if verified else 'MISMATCH'))
    _emit(optreader.opt('format'), '\n'.join(lines), data)
    if not verified:
        sys.stderr.write("error: decoded X_%d differs from the database:\n"
                         "  decoded:  %s\n  expected: %s\n" % (
                             cfg.w, list(message.values),
                             list(expected.values)))
        return EXIT_VERIFY
    return EXIT_OK


def _budget(optreader):
    budget = optreader.opt('budget', int)
    if budget is not None and budget < 1:
        raise UsageError("the budget must be positive; got %d" % budget)
    return budget


def cmd_audit(optreader, print_progress):
    k, m1, m2, q = _instance(optreader)
    scheme = schemes.make_scheme(optreader.opt('scheme'), k, m1, m2, q)
    report = audit.audit_privacy(scheme, budget=_budget(optreader),
                                 progress=print_progress)
    _emit(optreader.opt('format'), report.format_text(), report.to_dict())
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_probe(optreader):
    k, m1, m2, q = _instance(optreader)
    scheme = schemes.make_scheme(optreader.opt('scheme'), k, m1, m2, q)
    report = audit.probe_scheme(scheme, budget=_budget(optreader))
    _emit(optreader.opt('format'), report.format_text(), report.to_dict())
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_serve(optreader):
    db = model.Database.load(optreader.opt('db'))
    endpoint = optreader.opt('endpoint')
    sys.stderr.write("serving K=%d n=%d q=%d on %s\n" % (db.k, db.n, db.q,
                                                         endpoint))
    try:
        service.serve(db, endpoint)
    except KeyboardInterrupt:
        sys.stderr.write("interrupted\n")
    return EXIT_OK


def cmd_fetch(optreader):
    side_db = model.Database.load(optreader.opt('side_db'))
    k = optreader.opt('k', int)
    if k is None:
        k = side_db.k
    m1 = _require(optreader, 'm1', flag='--M1')
    m2 = _require(optreader, 'm2', flag='--M2')
    model.check_parameters(k, m1, m2)
    cfg = _explicit_config(optreader, k, m1, m2)
    chooser = choice.RandomChooser(optreader.opt('seed', int))
    if cfg is None:
        cfg = model.sample_config(k, m1, m2, chooser)
    side = side_db.side_information(cfg.side_indices)
    scheme_name = schemes.resolve_scheme_name(optreader.opt('scheme'), k, m1,
                                              m2)
    message, stats = service.retrieve(
        optreader.opt('endpoint'), cfg, side, scheme_name, side_db.q,
        params={'seed': chooser.random.randrange(2 ** 32)})
    lines, data = _retrieval_result(cfg, scheme_name, message, stats,
                                    stats_only=optreader.opt('stats_only',
                                                             bool))
    _emit(optreader.opt('format'), '\n'.join(lines), data)
    return EXIT_OK


def _configure_logging(print_progress):
    logging.basicConfig(
        level=logging.INFO if print_progress else logging.WARNING,
        format='%(levelname)s: %(name)s: %(message)s')


def main(argv=None):
    """CLI interface."""

    # pylint: disable=too-many-return-statements
    parser = _build_parser()
    cli_args = parser.parse_args(argv)
    command = cli_args.command
    try:
        optreader = util.OptionReader(
            cli_args=cli_args,
            config_files=util.config_files(APPNAME),
            section=command,
            defaults=_DEFAULTS,
            environ={'budget': 'PIR_RSSI_BUDGET'},
        )
    except configparser.Error as err:
        sys.stderr.write("error: malformed config file: %s\n" % err)
        return EXIT_USAGE

    try:
        print_progress = util.progress_enabled(optreader.opt('verbose'))
    except ValueError:
        sys.stderr.write("warning: '%s' is not a valid argument to "
                         "--verbose; using 'auto' instead\n" %
                         optreader.opt('verbose'))
        print_progress = util.progress_enabled('auto')
    _configure_logging(print_progress)

    handlers = {
        'gen-db': cmd_gen_db,
        'capacity': cmd_capacity,
        'run': cmd_run,
        'audit': lambda reader: cmd_audit(reader, print_progress),
        'probe': cmd_probe,
        'serve': cmd_serve,
        'fetch': cmd_fetch,
    }
    try:
        return handlers[command](optreader)
    except choice.BudgetExceededError as err:
        sys.stderr.write("error: %s\n" % err)
        return EXIT_USAGE
    except service.RemoteError as err:
        sys.stderr.write("fatal error: %s\n" % err)
        return EXIT_IO
    except DecodeError as err:
        sys.stderr.write("error: decoding failed: %s\n" % err)
        return EXIT_VERIFY
    except ValueError as err:
        sys.stderr.write("error: %s\n" % err)
        return EXIT_USAGE
    except OSError as err:
        sys.stderr.write("fatal error: %s\n" % err)
        return EXIT_IO


if __name__ == "__main__":
    exit(main())
