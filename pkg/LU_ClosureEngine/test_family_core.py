"""族描述 DSL、基数与二进有理数标签测试"""
import os
import sys
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

# 添加项目根目录到路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from LU_ClosureEngine.errors import FamilySyntaxError, FamilyValidationError
from LU_ClosureEngine.family_core import (
    Annotation,
    Block,
    BlockKind,
    CardinalValue,
    FamilyDesc,
    Junction,
    PointRef,
    allowed_annotations,
    canonicalize,
    concatenate,
    element_count,
    eta_points,
    is_eta_cut_tag,
    is_eta_point_tag,
    parse_family,
    point_in_family,
    print_family,
)

BLOCK_CHOICES = [
    Block.fin(1), Block.fin(2), Block.fin(3), Block.fin(4),
    Block.omega(), Block.omega_star(), Block.zeta(),
    Block.eta("gapped"), Block.eta("tight"),
]


@st.composite
def families(draw, max_blocks: int = 4):
    """随机的非重复族：块随机，接合注解取自允许集合"""
    blocks = draw(st.lists(st.sampled_from(BLOCK_CHOICES), min_size=1, max_size=max_blocks))
    junctions = [Junction(draw(st.sampled_from(allowed_annotations(left, right))))
                 for left, right in zip(blocks, blocks[1:])]
    return FamilyDesc(tuple(blocks), tuple(junctions))


class TestParseFamily(unittest.TestCase):
    """测试 DSL 解析"""

    def test_split_zetas(self):
        f = parse_family("zeta +split zeta")
        self.assertEqual(len(f.blocks), 2)
        self.assertEqual(f.annotation(0), Annotation.SPLIT)
        self.assertEqual(print_family(f), "zeta +split zeta")

    def test_default_annotations(self):
        self.assertEqual(parse_family("omega + omega*").annotation(0), Annotation.SPLIT)
        self.assertEqual(parse_family("omega + fin(2)").annotation(0), Annotation.SEPARATE)
        self.assertIsNone(parse_family("fin(3) + omega").annotation(0))
        self.assertEqual(print_family(parse_family("fin(3) + omega")), "fin(3) + omega")

    def test_repeated_schema(self):
        f = parse_family("(zeta)^omega")
        self.assertTrue(f.repeated)
        self.assertEqual(print_family(f), "(zeta)^omega")

    def test_repeated_needs_open_sides(self):
        with self.assertRaises(FamilyValidationError):
            parse_family("(fin(1))^omega")

    def test_fin_zero_rejected(self):
        with self.assertRaises(FamilyValidationError):
            parse_family("fin(0)")

    def test_annotation_not_applicable(self):
        with self.assertRaises(FamilyValidationError):
            parse_family("zeta +merged fin(1)")
        with self.assertRaises(FamilyValidationError):
            parse_family("fin(1) +split fin(1)")

    def test_syntax_errors(self):
        for text in ("zeta +", "eta", "fin(x)", "zeta zeta", ""):
            with self.subTest(text=text):
                with self.assertRaises(FamilySyntaxError):
                    parse_family(text)

    def test_eta_requires_mode(self):
        with self.assertRaises(FamilyValidationError):
            Block(BlockKind.ETA)

    @settings(max_examples=100, deadline=None)
    @given(families())
    def test_printed_text_parses_back(self, f):
        self.assertEqual(parse_family(print_family(f)), f)


class TestFamilyStructure(unittest.TestCase):
    """测试规范化、计数与拼接"""

    def test_canonicalize_merges_fins(self):
        f = canonicalize(parse_family("fin(2) + fin(3) + omega"))
        self.assertEqual(print_family(f), "fin(5) + omega")

    def test_element_count(self):
        self.assertEqual(element_count(parse_family("fin(2) + fin(3)")), CardinalValue.finite(5))
        self.assertEqual(element_count(parse_family("zeta")), CardinalValue.aleph0())

    def test_concatenate_uses_default(self):
        joined = concatenate(parse_family("omega"), parse_family("omega*"))
        self.assertEqual(print_family(joined), "omega +split omega*")
        with self.assertRaises(FamilyValidationError):
            concatenate(parse_family("(zeta)^omega"), parse_family("zeta"))

    def test_point_membership(self):
        f = parse_family("fin(2) + omega* +separate eta(gapped)")
        self.assertTrue(point_in_family(f, PointRef(0, 1)))
        self.assertFalse(point_in_family(f, PointRef(0, 2)))
        self.assertTrue(point_in_family(f, PointRef(1, -3)))
        self.assertFalse(point_in_family(f, PointRef(1, 1)))
        self.assertTrue(point_in_family(f, PointRef(2, Fraction(3, 8))))
        self.assertFalse(point_in_family(f, PointRef(2, Fraction(1, 4))))
        self.assertFalse(point_in_family(f, PointRef(0, 0, copy=1)))


class TestCardinalsAndTags(unittest.TestCase):
    """测试符号基数与 Eta 标签"""

    def test_cardinal_order_and_sum(self):
        three, omega = CardinalValue.finite(3), CardinalValue.aleph0()
        continuum = CardinalValue.at_least_continuum()
        self.assertLess(three, omega)
        self.assertLess(omega, continuum)
        self.assertEqual(three + CardinalValue.finite(4), CardinalValue.finite(7))
        self.assertEqual(three + omega, omega)
        self.assertEqual(omega + continuum, continuum)

    def test_cardinal_parse(self):
        self.assertEqual(CardinalValue.parse("12"), CardinalValue.finite(12))
        self.assertEqual(CardinalValue.parse("aleph0"), CardinalValue.aleph0())
        self.assertEqual(CardinalValue.parse("continuum"), CardinalValue.at_least_continuum())
        with self.assertRaises(FamilyValidationError):
            CardinalValue.parse("many")

    def test_cardinal_dict(self):
        value = CardinalValue.at_least_continuum("kappa")
        self.assertEqual(CardinalValue.from_dict(value.to_dict()), value)
        self.assertEqual(str(value), ">=max(2^omega,kappa)")

    def test_eta_tags(self):
        self.assertTrue(is_eta_point_tag(Fraction(1, 2)))
        self.assertTrue(is_eta_point_tag(Fraction(5, 8)))
        self.assertFalse(is_eta_point_tag(Fraction(1, 4)))
        self.assertFalse(is_eta_point_tag(Fraction(1, 3)))
        self.assertTrue(is_eta_cut_tag(Fraction(1, 4)))
        self.assertTrue(is_eta_cut_tag(Fraction(3, 16)))
        self.assertFalse(is_eta_cut_tag(Fraction(1, 2)))
        self.assertEqual(len(eta_points(3)), 1 + 4)


def run_tests():
    """运行所有测试"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    suite.addTests(loader.loadTestsFromTestCase(TestParseFamily))
    suite.addTests(loader.loadTestsFromTestCase(TestFamilyStructure))
    suite.addTests(loader.loadTestsFromTestCase(TestCardinalsAndTags))
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    print("=" * 70)
    print("LU 族描述 - 单元测试")
    print("=" * 70)
    success = run_tests()
    print("=" * 70)
    print("✓ 所有测试通过！" if success else "✗ 部分测试失败，请检查错误信息")
    print("=" * 70)
    sys.exit(0 if success else 1)
