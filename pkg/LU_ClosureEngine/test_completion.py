"""闭包 F̄ 与连通分支测试"""
import os
import sys
import unittest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from LU_ClosureEngine.completion import (
    CaseLabel,
    EndpointFlag,
    LimitStatus,
    accumulation_points,
    complete,
    component_of,
    components,
    excluded_points,
    has_dense_interval,
    is_discrete,
)
from LU_ClosureEngine.family_core import CardinalValue, PointRef, parse_family, print_family


class TestComplete(unittest.TestCase):
    """测试新聚点计数"""

    def test_new_point_counts(self):
        cases = {
            "zeta": 2,
            "omega +merged omega*": 1,
            "zeta +merged zeta": 3,
            "zeta +split zeta": 4,
            "omega +absorbed fin(1) +absorbed omega*": 0,
            "fin(5)": 0,
            "omega + fin(2)": 1,
        }
        for text, expected in cases.items():
            with self.subTest(family=text):
                self.assertEqual(accumulation_points(parse_family(text)),
                                 CardinalValue.finite(expected))

    def test_limit_statuses(self):
        c = complete(parse_family("omega +merged omega*"))
        statuses = sorted(lp.status.value for lp in c.limit_points)
        self.assertEqual(statuses, [LimitStatus.MERGED.value, LimitStatus.NEW.value])

        c = complete(parse_family("omega +absorbed fin(1)"))
        (limit,) = c.limit_points
        self.assertEqual(limit.status, LimitStatus.ABSORBED)
        self.assertEqual(limit.absorbed_into, PointRef(1, 0))

    def test_uncountable_and_repeated(self):
        tight = complete(parse_family("eta(tight)"))
        self.assertEqual(tight.new_points, CardinalValue.at_least_continuum())
        self.assertTrue(has_dense_interval(tight))
        self.assertFalse(has_dense_interval(complete(parse_family("eta(gapped)"))))
        self.assertEqual(accumulation_points(parse_family("(zeta)^omega")), CardinalValue.aleph0())

    def test_cardinality(self):
        self.assertEqual(complete(parse_family("fin(4)")).cardinality, CardinalValue.finite(4))
        self.assertEqual(complete(parse_family("omega")).cardinality, CardinalValue.aleph0())

    def test_countable_closure_as_family(self):
        closed = complete(parse_family("zeta")).as_family_when_countable()
        self.assertEqual(print_family(closed), "fin(1) +absorbed zeta +absorbed fin(1)")
        self.assertIsNone(complete(parse_family("eta(gapped)")).as_family_when_countable())

    def test_closure_of_closure_adds_nothing(self):
        for text in ("zeta", "omega +merged omega*", "omega + fin(2)", "zeta +split zeta"):
            with self.subTest(family=text):
                closed = complete(parse_family(text)).as_family_when_countable()
                self.assertEqual(accumulation_points(closed), CardinalValue.finite(0))


class TestComponents(unittest.TestCase):
    """测试离散区间的情形标注"""

    def test_isolated_absorbed_singleton(self):
        f = parse_family("omega +absorbed fin(1) +absorbed omega*")
        comp = component_of(f, PointRef(1, 0))
        self.assertEqual(comp.case_label, CaseLabel.III)
        self.assertEqual(comp.flag_of(PointRef(1, 0)), EndpointFlag.EXCLUDED)
        self.assertEqual(excluded_points(f), [PointRef(1, 0)])

    def test_one_sided_singleton(self):
        f = parse_family("fin(1) +absorbed omega*")
        self.assertEqual(component_of(f, PointRef(0, 0)).case_label, CaseLabel.II)

    def test_closed_run(self):
        f = parse_family("omega + fin(3)")
        labels = [c.case_label for c in components(f)]
        self.assertEqual(labels, [CaseLabel.IV, CaseLabel.IV])
        self.assertEqual(excluded_points(f), [])

    def test_touched_run(self):
        f = parse_family("zeta +absorbed fin(3) +absorbed zeta")
        comp = component_of(f, PointRef(1, 1))
        self.assertEqual(comp.case_label, CaseLabel.V)
        self.assertEqual(excluded_points(f), [PointRef(1, 0), PointRef(1, 2)])

    def test_eta_points(self):
        (tight,) = components(parse_family("eta(tight)"))
        self.assertTrue(tight.eta_class)
        self.assertEqual(tight.case_label, CaseLabel.III)
        (gapped,) = components(parse_family("eta(gapped)"))
        self.assertEqual(gapped.case_label, CaseLabel.I)

    def test_discreteness(self):
        self.assertTrue(is_discrete(parse_family("zeta +split zeta")))
        self.assertFalse(is_discrete(parse_family("omega +absorbed fin(1)")))
        self.assertFalse(is_discrete(parse_family("eta(tight)")))


def run_tests():
    """运行所有测试"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    suite.addTests(loader.loadTestsFromTestCase(TestComplete))
    suite.addTests(loader.loadTestsFromTestCase(TestComponents))
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    print("=" * 70)
    print("F̄ 闭包计算 - 单元测试")
    print("=" * 70)
    success = run_tests()
    print("=" * 70)
    print("✓ 所有测试通过！" if success else "✗ 部分测试失败，请检查错误信息")
    print("=" * 70)
    sys.exit(0 if success else 1)
