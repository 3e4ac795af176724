#!/usr/bin/env python3

"""Exact privacy and recoverability auditing.

A scheme's query distribution is enumerated leaf by leaf through
`pirrssi.choice.enumerate_outcomes`, so every probability here is an
exact `fractions.Fraction` and the privacy verdict is a test of equality
rather than a statistical estimate.

The converse probes work on a single answer matrix, the P x K matrix
of coefficients expressing each answer vector in terms of the messages.

Classes
-------
.. autosummary::
    AuditReport
    DeterminingSetResult
    ProbeReport

Routines
--------
.. autosummary::
    enumerate_query_distribution
    audit_privacy
    recoverable
    check_recoverability
    lemma1_probe
    lemma1_grid
    min_determining_set
    probe_scheme

----

"""

import collections
import fractions
import itertools
import logging
import math

from pirrssi import choice
from pirrssi import field
from pirrssi import model
from pirrssi import util
from pirrssi.choice import BudgetExceededError
from pirrssi.mds import DecodeError


logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2000000
# exhaustive subset search limit for min_determining_set
MAX_SUBSET_SEARCH_K = 16
# rank-probe limit for probe_scheme
MAX_PROBE_K = 12

_ZERO = fractions.Fraction(0)


def _pair(cfg):
    return (cfg.w, tuple(sorted(cfg.r)))


def _format_pair(pair):
    return 'W=%d R={%s}' % (pair[0], ','.join(str(i) for i in pair[1]))


def _format_set(indices):
    return '{%s}' % ','.join(str(i) for i in indices)


def _describe(query):
    parts = getattr(query, 'parts', None)
    if parts is not None:
        return str(query)
    return 'G=%s' % query.generator.to_lists()


def enumerate_query_distribution(scheme, cfg, budget=None):
    """All reachable queries for `cfg` with their exact probabilities.

    Parameters
    ----------
    scheme : MdsScheme or PartitionScheme
    cfg : pirrssi.model.SideInfoConfig
    budget : int, optional
        Maximum number of randomness-tree leaves.

    Returns
    -------
    list of (query, fractions.Fraction)
        Distinct queries in order of first appearance; probabilities sum
        to exactly one.

    Raises
    ------
    pirrssi.choice.BudgetExceededError

    """

    distribution = collections.OrderedDict()
    for query, probability in choice.enumerate_outcomes(
            lambda chooser: scheme.build_query(cfg, chooser), budget):
        distribution[query] = distribution.get(query, _ZERO) + probability
    return list(distribution.items())


def _check_estimate(scheme, configs, budget):
    """Fail fast when ``#configs * leaves(first)`` exceeds the budget."""
    if budget is None or not configs:
        return
    first = choice.count_outcomes(
        lambda chooser: scheme.build_query(configs[0], chooser), budget)
    estimate = first * len(configs)
    logger.debug("%d configurations x %d leaves = %d estimated leaves",
                 len(configs), first, estimate)
    if estimate > budget:
        raise BudgetExceededError(estimate, budget)


def _enumerate_all(scheme, configs, budget, progress):
    """Yield ``(cfg, query, probability)`` over every configuration."""
    bar = util.ProgressBar(len(configs), label='audit') if progress else None
    used = 0
    for cfg in configs:
        remaining = None if budget is None else budget - used
        try:
            outcomes = list(choice.enumerate_outcomes(
                lambda chooser, cfg=cfg: scheme.build_query(cfg, chooser),
                remaining))
        except BudgetExceededError as exc:
            raise BudgetExceededError(used + exc.nodes, budget)
        used += len(outcomes)
        for query, probability in outcomes:
            yield cfg, query, probability
        if bar is not None:
            bar.update()
    if bar is not None:
        bar.finish()
    logger.debug("enumerated %d leaves over %d configurations", used,
                 len(configs))


class AuditReport(object):
    """Outcome of `audit_privacy`.

    Attributes
    ----------
    scheme : str
    k, m1, m2 : int
    configurations : int
        Number of ``(W, R, S)`` configurations.
    leaves : int
        Randomness-tree leaves enumerated.
    queries : list
        Distinct reachable queries.
    query_probability : dict
        ``query -> P(Q)``.
    prior : fractions.Fraction
        ``P(W, R)``, the same for every pair.
    posteriors : dict
        ``query -> {(w, R): P(W=w, R=R | Q)}`` over every pair.
    ssi_prior : fractions.Fraction
    ssi_posteriors : dict
        ``query -> {S: P(S | Q)}`` over every M2-subset.
    worst_deviation, ssi_worst_deviation : fractions.Fraction
    likelihood_consistent : bool or None
        For schemes with a closed-form query likelihood, whether every
        enumerated ``P(Q | W, R)`` matches it; ``None`` otherwise.

    """

    # pylint: disable=too-many-instance-attributes

    def __init__(self, scheme, k, m1, m2):
        self.scheme = scheme
        self.k = k
        self.m1 = m1
        self.m2 = m2
        self.configurations = 0
        self.leaves = 0
        self.queries = []
        self.query_probability = {}
        self.prior = _ZERO
        self.posteriors = {}
        self.ssi_prior = _ZERO
        self.ssi_posteriors = {}
        self.worst_deviation = _ZERO
        self.ssi_worst_deviation = _ZERO
        self.likelihood_consistent = None

    @property
    def passed(self):
        """Privacy of ``(W, R)``: every posterior equals the prior exactly."""
        return self.worst_deviation == 0

    @property
    def verdict(self):
        return 'PASS' if self.passed else 'FAIL'

    @property
    def ssi_private(self):
        return self.ssi_worst_deviation == 0

    def format_text(self, table=True):
        """Line-oriented rendering.

        One row per reachable query gives ``P(Q)``, the range of the
        ``(W, R)`` posterior and the range of the S posterior.

        """

        lines = [
            'audit: scheme=%s K=%d M1=%d M2=%d' % (self.scheme, self.k,
                                                   self.m1, self.m2),
            'configurations: %d, randomness leaves: %d, distinct queries: %d'
            % (self.configurations, self.leaves, len(self.queries)),
            'prior P(W,R) = %s for each of %d pairs; prior P(S) = %s' % (
                self.prior, len(self.posteriors[self.queries[0]])
                if self.queries else 0, self.ssi_prior),
        ]
        if table:
            lines.append('%-28s %-10s %-19s %s' % (
                'query', 'P(Q)', 'P(W,R|Q) min..max', 'P(S|Q) min..max'))
            for query in self.queries:
                wr_values = self.posteriors[query].values()
                s_values = self.ssi_posteriors[query].values()
                lines.append('%-28s %-10s %-19s %s' % (
                    _describe(query), self.query_probability[query],
                    '%s..%s' % (min(wr_values), max(wr_values)),
                    '%s..%s' % (min(s_values), max(s_values))))
        lines.append('worst |P(W,R|Q) - P(W,R)| = %s' % self.worst_deviation)
        lines.append('privacy of (W,R): %s' % self.verdict)
        lines.append('SSI posterior: %s (worst |P(S|Q) - P(S)| = %s)' % (
            'private' if self.ssi_private else 'leaks',
            self.ssi_worst_deviation))
        if self.likelihood_consistent is not None:
            lines.append('closed-form likelihood check: %s' % (
                'OK' if self.likelihood_consistent else 'MISMATCH'))
        return '\n'.join(lines)

    def to_dict(self):
        """Structured form; every probability is a ``'num/den'`` string.

        Keys: ``scheme``, ``K``, ``M1``, ``M2``, ``configurations``,
        ``leaves``, ``verdict`` (``'pass'`` or ``'fail'``), ``prior``,
        ``worst_deviation``, ``ssi_prior``, ``ssi_private``,
        ``ssi_worst_deviation``, ``likelihood_consistent`` and
        ``queries``, a list of objects with ``query``, ``probability``,
        ``posterior`` (pair label to probability) and ``ssi_posterior``
        (set label to probability).

        """

        return collections.OrderedDict([
            ('scheme', self.scheme),
            ('K', self.k),
            ('M1', self.m1),
            ('M2', self.m2),
            ('configurations', self.configurations),
            ('leaves', self.leaves),
            ('verdict', 'pass' if self.passed else 'fail'),
            ('prior', str(self.prior)),
            ('worst_deviation', str(self.worst_deviation)),
            ('ssi_prior', str(self.ssi_prior)),
            ('ssi_private', self.ssi_private),
            ('ssi_worst_deviation', str(self.ssi_worst_deviation)),
            ('likelihood_consistent', self.likelihood_consistent),
            ('queries', [collections.OrderedDict([
                ('query', _describe(query)),
                ('probability', str(self.query_probability[query])),
                ('posterior', collections.OrderedDict(
                    (_format_pair(pair), str(value))
                    for pair, value in sorted(
                        self.posteriors[query].items()))),
                ('ssi_posterior', collections.OrderedDict(
                    (_format_set(s), str(value))
                    for s, value in sorted(
                        self.ssi_posteriors[query].items()))),
            ]) for query in self.queries]),
        ])


def audit_privacy(scheme, budget=DEFAULT_BUDGET, progress=False):
    """Check ``P(W, R | Q) = P(W, R)`` exactly for every reachable query.

    The prior is uniform over ``(W, R, S)``. The S posterior is computed
    as well and reported without affecting the verdict.

    Parameters
    ----------
    scheme : MdsScheme or PartitionScheme
        Carries K, M1 and M2.
    budget : int, optional
        Maximum number of randomness-tree leaves over all configurations;
        ``None`` for no limit.
    progress : bool, optional
        Draw a progress bar on stderr.

    Returns
    -------
    AuditReport

    Raises
    ------
    pirrssi.choice.BudgetExceededError
        When the estimated or actual number of leaves exceeds `budget`.

    """

    # pylint: disable=too-many-locals
    k, m1, m2 = scheme.k, scheme.m1, scheme.m2
    configs = list(model.all_configs(k, m1, m2))
    _check_estimate(scheme, configs, budget)

    pairs = sorted(set(_pair(cfg) for cfg in configs))
    ssi_sets = [tuple(s) for s in itertools.combinations(range(1, k + 1),
                                                         m2)]
    config_prior = fractions.Fraction(1, len(configs))
    ssi_per_pair = math.comb(k - m1 - 1, m2)

    joint = collections.OrderedDict()
    ssi_joint = {}
    likelihood = {}
    report = AuditReport(scheme.name, k, m1, m2)
    report.configurations = len(configs)
    for cfg, query, probability in _enumerate_all(scheme, configs, budget,
                                                  progress):
        report.leaves += 1
        pair = _pair(cfg)
        row = joint.setdefault(query, {})
        row[pair] = row.get(pair, _ZERO) + config_prior * probability
        ssi_row = ssi_joint.setdefault(query, {})
        ssi = tuple(sorted(cfg.s))
        ssi_row[ssi] = ssi_row.get(ssi, _ZERO) + config_prior * probability
        key = (query, pair)
        likelihood[key] = likelihood.get(key, _ZERO) + \
            probability / ssi_per_pair

    report.prior = fractions.Fraction(1, len(pairs))
    report.ssi_prior = fractions.Fraction(1, len(ssi_sets))
    report.queries = list(joint)
    for query, row in joint.items():
        total = sum(row.values())
        report.query_probability[query] = total
        posterior = dict((pair, row.get(pair, _ZERO) / total)
                         for pair in pairs)
        report.posteriors[query] = posterior
        ssi_posterior = dict((s, ssi_joint[query].get(s, _ZERO) / total)
                             for s in ssi_sets)
        report.ssi_posteriors[query] = ssi_posterior
        report.worst_deviation = max(
            [report.worst_deviation] +
            [abs(value - report.prior) for value in posterior.values()])
        report.ssi_worst_deviation = max(
            [report.ssi_worst_deviation] +
            [abs(value - report.ssi_prior)
             for value in ssi_posterior.values()])

    closed_form = getattr(scheme, 'query_likelihood', None)
    if closed_form is not None:
        report.likelihood_consistent = all(
            likelihood.get((query, pair), _ZERO) == closed_form(query)
            for query in report.queries for pair in pairs)

    logger.info("audit %s K=%d M1=%d M2=%d: %s over %d queries",
                scheme.name, k, m1, m2, report.verdict, len(report.queries))
    return report


def recoverable(answer_matrix, cfg):
    """Rank criterion: ``e_W`` lies in the answer rowspace plus
    ``span{e_j : j in R | S}``."""
    known = field.FieldMatrix.units(cfg.side_indices, answer_matrix.cols,
                                    answer_matrix.modulus)
    target = field.FieldVector.unit(answer_matrix.cols, cfg.w - 1,
                                    answer_matrix.modulus)
    return field.in_span(answer_matrix.stack(known), target)


def _all_databases(k, n, modulus):
    for values in itertools.product(range(modulus), repeat=k * n):
        yield model.Database([field.FieldVector(values[i * n:(i + 1) * n],
                                                modulus)
                              for i in range(k)], modulus)


def check_recoverability(scheme, n=1, budget=DEFAULT_BUDGET, params=None):
    """Verify that every configuration and every query leaf can decode.

    For each configuration and each reachable query, checks the rank
    criterion (`recoverable`) and decodes on databases over the scheme's
    field.

    Parameters
    ----------
    scheme : MdsScheme or PartitionScheme
    n : int, optional
        Symbols per message.
    budget : int, optional
        Leaf budget, as in `audit_privacy`.
    params : dict, optional
        ``samples`` (int, default 2): random databases per query;
        ``exhaustive`` (bool, default False): decode on every database of
        ``q**(K n)`` instead; ``seed`` (default 0).

    Returns
    -------
    bool

    """

    samples = util.read_param(params, 'samples', 2)
    exhaustive = util.read_param(params, 'exhaustive', False)
    seed = util.read_param(params, 'seed', 0)
    rng = choice.RandomChooser(seed).random
    configs = list(model.all_configs(scheme.k, scheme.m1, scheme.m2))
    _check_estimate(scheme, configs, budget)

    if exhaustive:
        databases = list(_all_databases(scheme.k, n, scheme.q))
    else:
        databases = None
    for cfg, query, _ in _enumerate_all(scheme, configs, budget, False):
        if not recoverable(scheme.answer_matrix(query), cfg):
            logger.warning("rank criterion fails for %r with %s", cfg,
                           _describe(query))
            return False
        batch = databases if exhaustive else [
            model.Database.random(scheme.k, n, scheme.q, rng)
            for _ in range(samples)]
        for db in batch:
            answer = scheme.server_answer(query, db)
            side = db.side_information(cfg.side_indices)
            try:
                decoded = scheme.decode(query, answer, cfg, side)
            except DecodeError as exc:
                logger.warning("decode fails for %r: %s", cfg, exc)
                return False
            if decoded != db.message(cfg.w):
                logger.warning("decoded message differs from X_%d for %r",
                               cfg.w, cfg)
                return False
    return True


def lemma1_probe(answer_matrix, w_star, r_star, m2):
    """Find an SSI set that lets the answer reveal ``X_W*``.

    Searches the M2-subsets of ``[K] - ({W*} | R*)`` in lexicographic
    order for the first ``S*`` with ``e_W*`` in the answer rowspace plus
    ``span{e_j : j in R* | S*}``.

    Parameters
    ----------
    answer_matrix : pirrssi.field.FieldMatrix
        P x K.
    w_star : int
        1-based.
    r_star : iterable of int
    m2 : int

    Returns
    -------
    tuple of int or None

    Examples
    --------
    >>> from pirrssi.field import FieldMatrix
    >>> lemma1_probe(FieldMatrix([[1, 0, 1, 0], [0, 1, 0, 1]], 5), 1, [2], 1)
    (3,)

    """

    r_star = tuple(sorted(r_star))
    k = answer_matrix.cols
    if w_star in r_star:
        raise ValueError("W*=%d must not belong to R*" % w_star)
    rest = [i for i in range(1, k + 1) if i != w_star and i not in r_star]
    target = field.FieldVector.unit(k, w_star - 1, answer_matrix.modulus)
    for s_star in itertools.combinations(rest, m2):
        known = field.FieldMatrix.units(r_star + s_star, k,
                                        answer_matrix.modulus)
        if field.in_span(answer_matrix.stack(known), target):
            return s_star
    return None


def lemma1_grid(answer_matrix, m1, m2):
    """Run `lemma1_probe` for every ``(W*, R*)`` with ``|R*| = M1``.

    Returns
    -------
    (ok, total, failures)
        Counts of successful and probed pairs, and the failing pairs.

    """

    k = answer_matrix.cols
    ok = 0
    total = 0
    failures = []
    for w_star in range(1, k + 1):
        rest = [i for i in range(1, k + 1) if i != w_star]
        for r_star in itertools.combinations(rest, m1):
            total += 1
            if lemma1_probe(answer_matrix, w_star, r_star, m2) is not None:
                ok += 1
            else:
                failures.append((w_star, r_star))
    return ok, total, failures


DeterminingSetResult = collections.namedtuple(
    'DeterminingSetResult', ['size', 'witness', 'bound', 'bound_ok'])
DeterminingSetResult.__doc__ = """Smallest determining set of an answer matrix.

Attributes
----------
size : int
    L, the number of messages that, with the answer, determine all others.
witness : tuple of int
    The lexicographically first determining set of that size.
bound : int
    ``max(M1 + M2, floor(K M2 / (M2 + 1)))``.
bound_ok : bool
    ``size <= bound``.

"""


def min_determining_set(answer_matrix, m1, m2):
    """Smallest I with the answer rowspace plus ``span{e_i : i in I}``
    equal to the whole space.

    No set smaller than ``K - rank`` can fill the space, so the search
    starts there.

    Raises
    ------
    ValueError
        If ``K > 16``.

    Examples
    --------
    >>> from pirrssi.field import FieldMatrix
    >>> min_determining_set(FieldMatrix.identity(3, 5), 1, 1)
    DeterminingSetResult(size=0, witness=(), bound=2, bound_ok=True)

    """

    k = answer_matrix.cols
    if k > MAX_SUBSET_SEARCH_K:
        raise ValueError("K=%d is too large for an exhaustive subset search "
                         "(limit %d)" % (k, MAX_SUBSET_SEARCH_K))
    bound = max(m1 + m2, model.lemma2_bound(k, m2))
    for size in range(k - field.rank(answer_matrix), k + 1):
        for subset in itertools.combinations(range(1, k + 1), size):
            known = field.FieldMatrix.units(subset, k, answer_matrix.modulus)
            if field.rank(answer_matrix.stack(known)) == k:
                return DeterminingSetResult(size, subset, bound,
                                            size <= bound)
    raise AssertionError("the full unit basis always determines everything")


class ProbeReport(object):
    """Lemma-1 grid and determining-set results over reachable queries.

    Attributes
    ----------
    scheme : str
    k, m1, m2 : int
    queries : int
        Distinct reachable queries probed.
    pairs_ok, pairs_total : int
        Summed over all queries.
    determining : DeterminingSetResult
        The largest minimum determining set found.

    """

    def __init__(self, scheme, k, m1, m2, queries, pairs_ok, pairs_total,
                 determining):
        # pylint: disable=too-many-arguments
        self.scheme = scheme
        self.k = k
        self.m1 = m1
        self.m2 = m2
        self.queries = queries
        self.pairs_ok = pairs_ok
        self.pairs_total = pairs_total
        self.determining = determining

    @property
    def passed(self):
        return (self.pairs_ok == self.pairs_total and
                self.determining.bound_ok)

    def format_text(self):
        if self.queries == 1:
            lemma1 = 'Lemma1: %d/%d pairs OK' % (self.pairs_ok,
                                                 self.pairs_total)
        else:
            lemma1 = 'Lemma1: %d/%d pairs OK over %d queries' % (
                self.pairs_ok, self.pairs_total, self.queries)
        size = self.determining.size
        lemma2 = model.lemma2_bound(self.k, self.m2)
        if size == self.m1 + self.m2:
            note = ' (=M1+M2)'
        elif size == lemma2:
            note = ' (=⌊K·M2/(M2+1)⌋)'
        else:
            note = ''
        return '%s; L=%d%s; bound ⌊K·M2/(M2+1)⌋=%d %s' % (
            lemma1, size, note, lemma2,
            'OK' if self.determining.bound_ok else 'VIOLATED')

    def to_dict(self):
        return collections.OrderedDict([
            ('scheme', self.scheme),
            ('K', self.k),
            ('M1', self.m1),
            ('M2', self.m2),
            ('queries', self.queries),
            ('pairs_ok', self.pairs_ok),
            ('pairs_total', self.pairs_total),
            ('L', self.determining.size),
            ('witness', list(self.determining.witness)),
            ('bound', self.determining.bound),
            ('bound_ok', self.determining.bound_ok),
            ('passed', self.passed),
        ])


def probe_scheme(scheme, budget=DEFAULT_BUDGET):
    """Run the converse probes on every query the scheme can emit.

    Raises
    ------
    ValueError
        If ``K > 12``.
    pirrssi.choice.BudgetExceededError

    """

    if scheme.k > MAX_PROBE_K:
        raise ValueError("K=%d is too large for the rank probes (limit %d)"
                         % (scheme.k, MAX_PROBE_K))
    configs = list(model.all_configs(scheme.k, scheme.m1, scheme.m2))
    _check_estimate(scheme, configs, budget)
    queries = collections.OrderedDict()
    for _, query, _ in _enumerate_all(scheme, configs, budget, False):
        queries[query] = None

    pairs_ok = 0
    pairs_total = 0
    largest = None
    for query in queries:
        matrix = scheme.answer_matrix(query)
        ok, total, failures = lemma1_grid(matrix, scheme.m1, scheme.m2)
        pairs_ok += ok
        pairs_total += total
        for w_star, r_star in failures:
            logger.warning("Lemma 1 fails at W*=%d R*=%s for %s", w_star,
                           list(r_star), _describe(query))
        determining = min_determining_set(matrix, scheme.m1, scheme.m2)
        if largest is None or determining.size > largest.size:
            largest = determining
    return ProbeReport(scheme.name, scheme.k, scheme.m1, scheme.m2,
                       len(queries), pairs_ok, pairs_total, largest)
