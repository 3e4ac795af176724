#!/usr/bin/env python3

import unittest

from pirrssi import field
from pirrssi import model
from pirrssi.audit import recoverable
from pirrssi.choice import RandomChooser
from pirrssi.field import FieldMatrix, FieldVector
from pirrssi.mds import *


class TestMds(unittest.TestCase):

    def test_query_shape(self):
        query = build_query(6, 2, 1, 7)
        self.assertEqual((query.p, query.k), (3, 6))
        self.assertTrue(field.is_mds(query.generator))
        with self.assertRaises(ValueError):
            build_query(4, 2, 2, 5)
        with self.assertRaises(ValueError):
            build_query(6, 1, 1, 5)

    def test_query_ignores_configuration(self):
        scheme = MdsScheme(5, 1, 1, 5)
        queries = set(scheme.build_query(cfg)
                      for cfg in model.all_configs(5, 1, 1))
        self.assertEqual(len(queries), 1)

    def test_support_vector(self):
        query = build_query(5, 1, 1, 5)
        cfg = model.SideInfoConfig(5, 2, [4], [1])
        basis = support_vectors(query, cfg)
        self.assertEqual(len(basis), 1)
        combined = query.generator.left_multiply(basis[0])
        self.assertEqual(set(combined.support()), set([0, 1, 3]))

        query = build_query(4, 1, 1, 5)
        cfg = model.SideInfoConfig(4, 4, [1], [2])
        self.assertEqual(support_vectors(query, cfg), [FieldVector([3, 1], 5)])

    def test_decode_everywhere(self):
        for k, m1, m2, n in [(3, 1, 1, 1), (4, 1, 1, 2), (5, 1, 2, 3),
                             (6, 2, 1, 2), (6, 0, 3, 1), (5, 2, 0, 1)]:
            q = field.next_prime(k)
            db = model.Database.random(k, n, q, seed=k * 10 + m1)
            scheme = MdsScheme(k, m1, m2, q)
            query = scheme.build_query(None)
            answer = scheme.server_answer(query, db)
            self.assertEqual(answer.symbol_count, (k - m1 - m2) * n)
            for cfg in model.all_configs(k, m1, m2):
                side = db.side_information(cfg.side_indices)
                self.assertEqual(scheme.decode(query, answer, cfg, side),
                                 db.message(cfg.w),
                                 msg='K=%d M1=%d M2=%d %r' %
                                 (k, m1, m2, cfg))

    def test_rank_criterion_everywhere(self):
        for k in range(2, 9):
            q = field.next_prime(k)
            for m1 in range(0, k):
                for m2 in range(0, k - m1):
                    query = build_query(k, m1, m2, q)
                    matrix = MdsScheme(k, m1, m2, q).answer_matrix(query)
                    for cfg in model.all_configs(k, m1, m2):
                        self.assertTrue(recoverable(matrix, cfg),
                                        msg=repr(cfg))
                        self.assertEqual(len(support_vectors(query, cfg)),
                                         1, msg=repr(cfg))

    def test_decode_random_databases(self):
        chooser = RandomChooser(11)
        for k in range(3, 9):
            q = field.next_prime(k)
            for m1 in range(1, k - 1):
                for m2 in range(1, k - m1):
                    scheme = MdsScheme(k, m1, m2, q)
                    query = scheme.build_query(None)
                    for _ in range(100):
                        db = model.Database.random(k, 2, q, chooser.random)
                        cfg = model.sample_config(k, m1, m2, chooser)
                        answer = scheme.server_answer(query, db)
                        side = db.side_information(cfg.side_indices)
                        self.assertEqual(
                            scheme.decode(query, answer, cfg, side),
                            db.message(cfg.w), msg=repr(cfg))

    def test_larger_field(self):
        db = model.Database.random(4, 3, 101, seed=5)
        query = build_query(4, 1, 1, 101)
        answer = server_answer(query, db)
        cfg = model.SideInfoConfig(4, 3, [1], [4])
        side = db.side_information(cfg.side_indices)
        self.assertEqual(decode(query, answer, cfg, side), db.message(3))

    def test_wrong_side_information(self):
        db = model.Database([FieldVector([v], 5) for v in (1, 2, 3, 4)], 5)
        query = build_query(4, 1, 1, 5)
        answer = server_answer(query, db)
        cfg = model.SideInfoConfig(4, 1, [2], [3])
        side = db.side_information(cfg.side_indices)
        side[2] = side[2] + FieldVector([1], 5)
        # a wrong side message gives a wrong result, not an error
        self.assertNotEqual(decode(query, answer, cfg, side), db.message(1))
        del side[3]
        with self.assertRaises(ValueError):
            decode(query, answer, cfg, side)

    def test_mismatches(self):
        db = model.Database.random(4, 1, 7, seed=0)
        with self.assertRaises(field.FieldMismatchError):
            server_answer(build_query(4, 1, 1, 5), db)
        with self.assertRaises(ValueError):
            server_answer(build_query(5, 1, 1, 7), db)
        query = build_query(4, 1, 1, 7)
        answer = server_answer(query, db)
        with self.assertRaises(ValueError):
            decode(query, answer, model.SideInfoConfig(4, 1, [2], []), {})

    def test_non_mds_generator(self):
        # columns 3 and 4 are equal: a combination that cancels X_4
        # cancels X_3 as well
        generator = FieldMatrix([[1, 0, 1, 1], [0, 1, 1, 1]], 5)
        query = MdsQuery(4, 1, 1, 5, generator)
        db = model.Database.random(4, 1, 5, seed=0)
        answer = server_answer(query, db)
        cfg = model.SideInfoConfig(4, 3, [1], [2])
        with self.assertRaises(DecodeError):
            decode(query, answer, cfg, db.side_information([1, 2]))


if __name__ == '__main__':
    unittest.main()
