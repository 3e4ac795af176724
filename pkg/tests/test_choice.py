#!/usr/bin/env python3

import fractions
import unittest

from pirrssi.choice import *


def _die_then_coin(chooser):
    face = chooser.choose(range(1, 4))
    if face == 3:
        return (face,)
    return (face, chooser.choose('HT'))


class TestChoice(unittest.TestCase):

    def test_enumerate_uneven_tree(self):
        outcomes = list(enumerate_outcomes(_die_then_coin))
        self.assertEqual([o for o, _ in outcomes],
                         [(1, 'H'), (1, 'T'), (2, 'H'), (2, 'T'), (3,)])
        probabilities = dict(outcomes)
        self.assertEqual(probabilities[(3,)], fractions.Fraction(1, 3))
        self.assertEqual(probabilities[(2, 'T')], fractions.Fraction(1, 6))
        self.assertEqual(sum(p for _, p in outcomes), 1)

    def test_count_and_budget(self):
        self.assertEqual(count_outcomes(_die_then_coin), 5)
        self.assertEqual(count_outcomes(_die_then_coin, budget=5), 5)
        with self.assertRaises(BudgetExceededError) as context:
            count_outcomes(_die_then_coin, budget=4)
        self.assertEqual(context.exception.budget, 4)
        self.assertIn('instance too large', str(context.exception))

    def test_deterministic_procedure(self):
        outcomes = list(enumerate_outcomes(lambda chooser: 'fixed'))
        self.assertEqual(outcomes, [('fixed', 1)])

    def test_random_chooser(self):
        first = [RandomChooser(11).choose(range(1000)) for _ in range(3)]
        self.assertEqual(len(set(first)), 1)
        chooser = RandomChooser(0)
        draws = [chooser.choose('abc') for _ in range(300)]
        self.assertEqual(set(draws), set('abc'))
        with self.assertRaises(ValueError):
            chooser.choose([])


if __name__ == '__main__':
    unittest.main()
