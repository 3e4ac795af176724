#!/usr/bin/env python3

import itertools
import unittest

from pirrssi.field import *


class TestFieldElement(unittest.TestCase):

    def test_arithmetic(self):
        a = FieldElement(3, 7)
        b = FieldElement(5, 7)
        self.assertEqual(a + b, FieldElement(1, 7))
        self.assertEqual(a - b, FieldElement(5, 7))
        self.assertEqual(a * b, FieldElement(1, 7))
        self.assertEqual(a / b, FieldElement(2, 7))
        self.assertEqual(-a, FieldElement(4, 7))
        self.assertEqual(a ** 6, FieldElement(1, 7))
        self.assertEqual(a ** -1, b)
        self.assertEqual(2 + a, 5)
        self.assertEqual(1 - a, FieldElement(5, 7))
        self.assertEqual(int(FieldElement(-1, 7)), 6)

    def test_inverse(self):
        primes = [number for number in range(2, 102) if is_prime(number)]
        self.assertEqual(len(primes), 26)
        for q in primes:
            for value in range(1, q):
                self.assertEqual(FieldElement(value, q).inv() * value, 1)
        with self.assertRaises(ZeroDivisionError):
            FieldElement(0, 5).inv()
        with self.assertRaises(ZeroDivisionError):
            FieldElement(1, 5) / 0

    def test_nonprime_modulus(self):
        with self.assertRaises(ValueError):
            FieldElement(1, 6)
        with self.assertRaises(ValueError):
            vandermonde_generator(2, 4, 4)

    def test_field_mismatch(self):
        with self.assertRaises(FieldMismatchError):
            FieldElement(1, 5) + FieldElement(1, 7)
        with self.assertRaises(FieldMismatchError):
            FieldVector([1, 2], 5) + FieldVector([1, 2], 7)
        # FieldMismatchError is a ValueError
        with self.assertRaises(ValueError):
            FieldVector([1], 5).dot(FieldVector([1], 3))

    def test_primes(self):
        self.assertFalse(is_prime(0))
        self.assertFalse(is_prime(1))
        self.assertTrue(is_prime(2))
        self.assertFalse(is_prime(91))
        self.assertTrue(is_prime(97))
        self.assertEqual(next_prime(8), 11)
        self.assertEqual(next_prime(11), 11)
        self.assertEqual(next_prime(14), 17)


class TestFieldVector(unittest.TestCase):

    def test_operations(self):
        u = FieldVector([1, 2, 3], 5)
        v = FieldVector([4, 4, 4], 5)
        self.assertEqual(u + v, FieldVector([0, 1, 2], 5))
        self.assertEqual(u - v, FieldVector([2, 3, 4], 5))
        self.assertEqual(-u, FieldVector([4, 3, 2], 5))
        self.assertEqual(u.scale(2), FieldVector([2, 4, 1], 5))
        self.assertEqual(u.dot(v), FieldElement(4, 5))
        self.assertEqual(FieldVector([0, 3, 0], 5).support(), (1,))
        self.assertTrue(FieldVector.zeros(3, 5).is_zero())
        self.assertEqual(FieldVector.unit(3, 2, 5).values, (0, 0, 1))
        self.assertEqual(u[1], FieldElement(2, 5))
        self.assertEqual(len(u), 3)

    def test_length_mismatch(self):
        with self.assertRaises(ValueError):
            FieldVector([1, 2], 5) + FieldVector([1, 2, 3], 5)
        with self.assertRaises(TypeError):
            FieldVector([1, 2], 5) + [1, 2]

    def test_combine(self):
        vectors = [FieldVector([1, 0], 7), FieldVector([0, 1], 7),
                   FieldVector([1, 1], 7)]
        self.assertEqual(combine([2, 3, 1], vectors), FieldVector([3, 4], 7))
        self.assertEqual(combine(FieldVector([0, 0, 0], 7), vectors),
                         FieldVector([0, 0], 7))
        with self.assertRaises(ValueError):
            combine([1, 1], vectors)
        with self.assertRaises(ValueError):
            combine([], [])


class TestFieldMatrix(unittest.TestCase):

    def test_construction(self):
        with self.assertRaises(ValueError):
            FieldMatrix([[1, 2], [3]], 5)
        with self.assertRaises(ValueError):
            FieldMatrix([], 5)
        empty = FieldMatrix([], 5, cols=3)
        self.assertEqual((empty.rows, empty.cols), (0, 3))
        self.assertEqual(rank(empty), 0)
        self.assertEqual(len(nullspace(empty)), 3)
        units = FieldMatrix.units([1, 3], 4, 5)
        self.assertEqual(units.to_lists(), [[1, 0, 0, 0], [0, 0, 1, 0]])

    def test_products(self):
        m = FieldMatrix([[1, 2, 3], [0, 1, 4]], 5)
        self.assertEqual(m.transpose().to_lists(), [[1, 0], [2, 1], [3, 4]])
        self.assertEqual(m.apply(FieldVector([1, 1, 1], 5)),
                         FieldVector([1, 0], 5))
        self.assertEqual(m.left_multiply(FieldVector([1, 1], 5)),
                         FieldVector([1, 3, 2], 5))
        self.assertEqual(m.select_columns([2, 0]).to_lists(),
                         [[3, 1], [4, 0]])
        self.assertEqual(m[1, 2], FieldElement(4, 5))
        with self.assertRaises(ValueError):
            m.apply(FieldVector([1, 1], 5))

    def test_rank_and_nullspace(self):
        q = 7
        m = FieldMatrix([[1, 2, 3, 4], [2, 4, 6, 1], [3, 6, 2, 5]], q)
        basis = nullspace(m)
        self.assertEqual(rank(m) + len(basis), m.cols)
        for vector in basis:
            self.assertTrue(m.apply(vector).is_zero())
        self.assertEqual(rank(FieldMatrix.zeros(3, 3, q)), 0)
        self.assertEqual(rank(FieldMatrix.identity(4, q)), 4)

    def test_in_span(self):
        m = FieldMatrix([[1, 1, 0], [0, 1, 1]], 3)
        self.assertTrue(in_span(m, FieldVector([1, 2, 1], 3)))
        self.assertFalse(in_span(m, FieldVector([1, 0, 0], 3)))
        self.assertTrue(in_span(m, FieldVector([1, 0, 2], 3)))

    def test_vandermonde_is_mds(self):
        for q in (5, 7, 11):
            for k in range(1, q + 1):
                for p in range(1, k + 1):
                    self.assertTrue(is_mds(vandermonde_generator(p, k, q)),
                                    msg='P=%d K=%d q=%d' % (p, k, q))
        for k in range(1, 13):
            q = next_prime(k)
            for p in range(1, k + 1):
                self.assertTrue(is_mds(vandermonde_generator(p, k, q)),
                                msg='P=%d K=%d q=%d' % (p, k, q))
        with self.assertRaises(ValueError):
            vandermonde_generator(2, 6, 5)
        with self.assertRaises(ValueError):
            vandermonde_generator(0, 3, 5)
        with self.assertRaises(ValueError):
            vandermonde_generator(4, 3, 5)

    def test_rank_matches_brute_force(self):
        # GF(2): a 2x3 matrix has rank equal to the dimension of its span
        q = 2
        for entries in itertools.product(range(q), repeat=6):
            m = FieldMatrix([entries[:3], entries[3:]], q)
            span = set()
            for a, b in itertools.product(range(q), repeat=2):
                span.add(tuple((a * x + b * y) % q
                               for x, y in zip(entries[:3], entries[3:])))
            self.assertEqual(q ** rank(m), len(span))


if __name__ == '__main__':
    unittest.main()
