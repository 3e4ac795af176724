#!/usr/bin/env python3

"""Explicit randomness for query construction.

Every randomized procedure in this package draws its randomness through
a *chooser*: an object with a single ``choose(options)`` method that
returns one element of a finite sequence, uniformly at random. The same
procedure can therefore be run in two modes:

* sampling, with a seeded `RandomChooser`;
* enumeration, with `enumerate_outcomes`, which replays the procedure
  along every path of its choice tree and attaches the exact
  probability (a `fractions.Fraction`) of each leaf.

Classes
-------
.. autosummary::
    RandomChooser
    BudgetExceededError

Routines
--------
.. autosummary::
    enumerate_outcomes
    count_outcomes

----

"""

import fractions
import random


class BudgetExceededError(RuntimeError):
    """Raised when a choice tree has more leaves than allowed.

    Attributes
    ----------
    nodes : int
        Number of leaves reached (or estimated) when the budget tripped.
    budget : int

    """

    def __init__(self, nodes, budget):
        super(BudgetExceededError, self).__init__(
            "instance too large: %d randomness-tree leaves exceed the "
            "budget of %d" % (nodes, budget))
        self.nodes = nodes
        self.budget = budget


class RandomChooser(object):
    """Uniform chooser backed by a seedable `random.Random`.

    Parameters
    ----------
    seed : int, optional
        Seed for the underlying generator. ``None`` seeds from the
        operating system.

    Attributes
    ----------
    random : random.Random

    Examples
    --------
    >>> first = RandomChooser(7).choose(range(100))
    >>> first == RandomChooser(7).choose(range(100))
    True

    """

    # pylint: disable=too-few-public-methods

    def __init__(self, seed=None):
        self.random = random.Random(seed)

    def choose(self, options):
        options = list(options)
        if not options:
            raise ValueError("no options to choose from")
        return options[self.random.randrange(len(options))]


class _ReplayChooser(object):
    """Follows a fixed prefix of branch indices, then takes branch 0."""

    # pylint: disable=too-few-public-methods

    def __init__(self, prefix):
        self._prefix = prefix
        self.path = []  # (branch index, branch count) per choice node

    def choose(self, options):
        options = list(options)
        if not options:
            raise ValueError("no options to choose from")
        depth = len(self.path)
        index = self._prefix[depth] if depth < len(self._prefix) else 0
        self.path.append((index, len(options)))
        return options[index]


def enumerate_outcomes(procedure, budget=None):
    """Enumerate every leaf of a procedure's choice tree.

    Leaves are visited depth first in lexicographic order of branch
    indices, so the output order is deterministic.

    Parameters
    ----------
    procedure : callable
        Called as ``procedure(chooser)``. It must be deterministic given
        the choices it receives.
    budget : int, optional
        Maximum number of leaves. ``None`` means unlimited.

    Yields
    ------
    (outcome, probability)
        The procedure's return value and the exact probability of the
        path that produced it. Distinct paths may yield equal outcomes.

    Raises
    ------
    BudgetExceededError
        When more than `budget` leaves are visited.

    Examples
    --------
    >>> def two_coins(chooser):
    ...     return chooser.choose('HT') + chooser.choose('HT')
    >>> [(o, str(p)) for o, p in enumerate_outcomes(two_coins)]
    [('HH', '1/4'), ('HT', '1/4'), ('TH', '1/4'), ('TT', '1/4')]

    """

    stack = [()]
    leaves = 0
    while stack:
        prefix = stack.pop()
        chooser = _ReplayChooser(prefix)
        outcome = procedure(chooser)
        leaves += 1
        if budget is not None and leaves > budget:
            raise BudgetExceededError(leaves, budget)
        probability = fractions.Fraction(1)
        for _, width in chooser.path:
            probability /= width
        branches = [index for index, _ in chooser.path]
        # shallow siblings go on the stack first so the deepest,
        # lowest-numbered sibling is popped next
        for depth in range(len(prefix), len(chooser.path)):
            width = chooser.path[depth][1]
            for alternative in range(width - 1, 0, -1):
                stack.append(tuple(branches[:depth]) + (alternative,))
        yield outcome, probability


def count_outcomes(procedure, budget=None):
    """Number of leaves in a procedure's choice tree."""
    return sum(1 for _ in enumerate_outcomes(procedure, budget))
