"""基数族 P-闭包测试"""
import os
import sys
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from LU_ClosureEngine.errors import CardFamilyError
from LU_ClosureEngine.index_sets import PeriodicSet
from LU_ClosureEngine.p_closure_toy import (
    TOP,
    CardFamily,
    check_additivity,
    check_exchange,
    check_not_finite_character,
    cl_p,
    cl_p_d,
    cl_p_dr,
    has_minimal_generating_set_dP,
    is_hausdorff,
    is_open,
    is_t0,
    minimal_generating_sets_dr,
    open_sets_intersect,
    parse_card_family,
)

I = CardFamily.universe()
EMPTY = CardFamily.empty()


@st.composite
def card_families(draw):
    """I 的随机子集：有限集，或按余数给出的无限集"""
    top = draw(st.booleans())
    if draw(st.booleans()):
        ints = PeriodicSet.finite(draw(st.sets(st.integers(1, 40), max_size=6)))
    else:
        modulus = draw(st.integers(1, 5))
        residues = draw(st.sets(st.integers(0, modulus - 1), min_size=1))
        ints = PeriodicSet.arithmetic(modulus, residues)
    return CardFamily(ints, top)


@st.composite
def cofinite_families(draw):
    missing = draw(st.sets(st.integers(1, 30), max_size=5))
    return CardFamily(PeriodicSet.cofinite(missing), draw(st.booleans()))


class TestClosureRules(unittest.TestCase):
    """测试 Cl_P / Cl^{d,r}_P 的闭包规则"""

    def test_examples(self):
        self.assertEqual(cl_p(CardFamily.of([3, 5])), CardFamily.of([3, 5]))
        self.assertEqual(cl_p(CardFamily(PeriodicSet.arithmetic(2, [0]))), I)
        self.assertEqual(cl_p(EMPTY), EMPTY)
        self.assertEqual(cl_p_dr(CardFamily.of([7])), I)
        self.assertEqual(cl_p_dr(EMPTY), EMPTY)
        self.assertEqual(cl_p_dr(I), I)

    @settings(max_examples=100, deadline=None)
    @given(card_families())
    def test_rules_on_random_inputs(self, s):
        expected = s if s.is_finite() else I
        self.assertEqual(cl_p(s), expected)
        self.assertEqual(cl_p_d(s), expected)
        self.assertEqual(cl_p_dr(s), EMPTY if s.is_empty() else I)

    @settings(max_examples=100, deadline=None)
    @given(card_families(), card_families())
    def test_operator_laws(self, a, b):
        for closure in (cl_p, cl_p_dr):
            self.assertTrue(a.issubset(closure(a)))
            self.assertEqual(closure(closure(a)), closure(a))
            self.assertTrue(closure(a).issubset(closure(a.union(b))))
        self.assertTrue(check_additivity(cl_p_d, a, b))

    @settings(max_examples=50, deadline=None)
    @given(card_families())
    def test_no_finite_character(self, s):
        self.assertTrue(check_not_finite_character(cl_p, s))


class TestGeneratingSets(unittest.TestCase):
    """测试极小生成集"""

    def test_dp_generating_sets(self):
        self.assertFalse(has_minimal_generating_set_dP(I))
        self.assertTrue(has_minimal_generating_set_dP(CardFamily.of([1, 2, 3])))
        self.assertTrue(has_minimal_generating_set_dP(EMPTY))
        with self.assertRaises(CardFamilyError):
            has_minimal_generating_set_dP(CardFamily(PeriodicSet.arithmetic(2, [0])))

    def test_dr_singletons(self):
        singletons = minimal_generating_sets_dr(I, 4)
        self.assertEqual(singletons, [CardFamily.of([n]) for n in (1, 2, 3, 4)])
        for g in singletons:
            self.assertEqual(cl_p_dr(g), I)
        self.assertEqual(minimal_generating_sets_dr(EMPTY), [EMPTY])
        with self.assertRaises(CardFamilyError):
            minimal_generating_sets_dr(CardFamily.of([1]))


class TestTopology(unittest.TestCase):
    """测试开集、T0 与 Hausdorff"""

    def test_open_sets(self):
        self.assertTrue(is_open(EMPTY))
        self.assertTrue(is_open(I))
        self.assertTrue(is_open(CardFamily.of([4]).complement()))
        self.assertFalse(is_open(CardFamily.of([4])))
        self.assertFalse(is_open(CardFamily(PeriodicSet.arithmetic(2, [1]), True)))

    def test_intersections(self):
        self.assertTrue(open_sets_intersect(CardFamily.of([1]).complement(),
                                            CardFamily.of([2]).complement()))
        self.assertTrue(open_sets_intersect(EMPTY, I))
        with self.assertRaises(CardFamilyError):
            open_sets_intersect(CardFamily.of([1]), I)

    @settings(max_examples=50, deadline=None)
    @given(cofinite_families(), cofinite_families())
    def test_cofinite_pairs_intersect(self, u1, u2):
        self.assertTrue(open_sets_intersect(u1, u2))

    def test_separation_axioms(self):
        sample = [1, 2, 3, 10, TOP]
        self.assertTrue(is_t0(cl_p_d, sample))
        self.assertFalse(is_hausdorff(cl_p_d, sample))
        self.assertFalse(is_t0(cl_p_dr, sample))
        self.assertFalse(is_hausdorff(cl_p_dr, sample))

    def test_exchange_observations(self):
        s = CardFamily.of([2, 4])
        for t1, t2 in ((1, 3), (3, 3), (TOP, 5)):
            self.assertTrue(check_exchange(cl_p_d, s, t1, t2))
            self.assertTrue(check_exchange(cl_p_dr, EMPTY, t1, t2))


class TestParsing(unittest.TestCase):
    """测试 I 子集的文本格式"""

    def test_forms(self):
        self.assertEqual(parse_card_family("all"), I)
        self.assertEqual(parse_card_family("I"), I)
        self.assertEqual(parse_card_family("empty"), EMPTY)
        self.assertEqual(parse_card_family("3,5,omega"), CardFamily.of([3, 5, TOP]))
        self.assertEqual(parse_card_family("mod:2:0"), CardFamily(PeriodicSet.arithmetic(2, [0])))
        self.assertEqual(parse_card_family("mod:2:0+omega"),
                         CardFamily(PeriodicSet.arithmetic(2, [0]), True))
        cofinite = parse_card_family("cofinite:1,2")
        self.assertTrue(is_open(cofinite))
        self.assertNotIn(2, cofinite)
        self.assertIn(TOP, cofinite)

    def test_errors(self):
        for text in ("x", "0", "mod:0:1", "mod:2", "cofinite:a"):
            with self.subTest(text=text):
                with self.assertRaises(CardFamilyError):
                    parse_card_family(text)


def run_tests():
    """运行所有测试"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for case in (TestClosureRules, TestGeneratingSets, TestTopology, TestParsing):
        suite.addTests(loader.loadTestsFromTestCase(case))
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    print("=" * 70)
    print("基数族 P-闭包 - 单元测试")
    print("=" * 70)
    success = run_tests()
    print("=" * 70)
    print("✓ 所有测试通过！" if success else "✗ 部分测试失败，请检查错误信息")
    print("=" * 70)
    sys.exit(0 if success else 1)
