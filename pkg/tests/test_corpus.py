#!/usr/bin/env python3
"""
Unit tests for the counterexample corpus
"""

import re
import unittest

from tests.helpers import clear_config_env

from dagger_trace.common.config import Config
from dagger_trace.corpus import CASES, CaseReport, CorpusSummary, run_all, run_case


class TestCorpus(unittest.TestCase):
    """Every recorded counterexample reproduces."""

    def setUp(self):
        clear_config_env()
        self.config = Config()

    def test_each_case_passes(self):
        for case_id in sorted(CASES):
            with self.subTest(case=case_id):
                report = run_case(case_id, self.config)
                self.assertTrue(report.passed, f"{report.message}: {report.observed}")
                self.assertEqual(report.observed, CASES[case_id].expected)

    def test_anchors_name_their_section(self):
        """Each anchor is an appendix label with the titled result it reproduces."""
        label = re.compile(r'^Appendix [A-D], (Definition|Remark|Lemma|Counterexample) "[^"]+"$')
        for case in CASES.values():
            with self.subTest(case=case.id):
                self.assertRegex(case.anchor, label)
        counterexamples = [c.anchor for c in CASES.values() if c.anchor.startswith('Appendix D')]
        self.assertEqual(len(counterexamples), len(set(counterexamples)))
        self.assertEqual(CASES['C05'].anchor, 'Appendix D, Counterexample "Non maxed-out row"')

    def test_case_ids_are_case_insensitive(self):
        self.assertEqual(run_case('c09', self.config).id, 'C09')

    def test_unknown_case(self):
        with self.assertRaises(ValueError):
            run_case('C99', self.config)

    def test_run_all(self):
        """The summary counts every case and reports success."""
        summary = run_all(self.config)
        self.assertTrue(summary.ok)
        self.assertEqual(summary.passed, len(CASES))
        data = summary.as_dict()
        self.assertEqual(data['failed'], 0)
        self.assertEqual([c['id'] for c in data['cases']], sorted(CASES))

    def test_summary_with_failure(self):
        """One failed report makes the summary fail."""
        summary = CorpusSummary([
            CaseReport('C01', 'a', True, {}, {}),
            CaseReport('C02', 'b', False, {'x': 1}, {'x': 2}, "mismatch on x"),
        ])
        self.assertFalse(summary.ok)
        self.assertEqual((summary.passed, summary.failed), (1, 1))


if __name__ == '__main__':
    unittest.main()
