"""e-谱与见证族构造测试"""
import os
import sys
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from LU_ClosureEngine.errors import UnsupportedCardinalError
from LU_ClosureEngine.family_core import CardinalValue, parse_family, print_family
from LU_ClosureEngine.genset import CutPos, enumerate_cuts
from LU_ClosureEngine.spectrum import (
    SpectrumValue,
    construct_family_with_spectrum,
    continuum_recipe,
    cut_adjustment,
    e_spectrum,
    spectrum_additive,
    spectrum_catalog,
)
from LU_ClosureEngine.test_family_core import families


class TestESpectrum(unittest.TestCase):
    """测试 e-谱计算"""

    def test_finite_spectra(self):
        cases = {
            "fin(3)": 0,
            "zeta": 2,
            "omega +merged omega*": 1,
            "omega +absorbed fin(1) +absorbed omega*": 1,
            "zeta +absorbed fin(1) +absorbed zeta": 3,
            "omega +absorbed fin(2) +absorbed omega*": 2,
        }
        for text, expected in cases.items():
            with self.subTest(family=text):
                spectrum = e_spectrum(parse_family(text))
                self.assertTrue(spectrum.exact)
                self.assertEqual(spectrum.value, CardinalValue.finite(expected))

    def test_absorbed_limits_counted_once(self):
        spectrum = e_spectrum(parse_family("omega +absorbed fin(1) +absorbed omega*"))
        self.assertTrue(spectrum.notes)

    def test_infinite_spectra(self):
        self.assertEqual(e_spectrum(parse_family("(zeta)^omega")).value, CardinalValue.aleph0())
        gapped = e_spectrum(parse_family("eta(gapped)"))
        self.assertTrue(gapped.exact)
        self.assertEqual(gapped.value, CardinalValue.at_least_continuum())

    def test_no_least_set_gives_lower_bound(self):
        tight = e_spectrum(parse_family("eta(tight)"), lambda_tag="kappa")
        self.assertFalse(tight.exact)
        self.assertEqual(str(tight.value), ">=max(2^omega,kappa)")
        self.assertIn("lower bound", tight.text())

    def test_inexact_finite_value_rejected(self):
        with self.assertRaises(ValueError):
            SpectrumValue(CardinalValue.finite(3), exact=False)


class TestConstruction(unittest.TestCase):
    """测试目标谱的见证族"""

    def test_catalog_rows_match(self):
        mus = [CardinalValue.finite(n) for n in range(13)] + [CardinalValue.aleph0()]
        rows = spectrum_catalog(mus)
        self.assertEqual(len(rows), 14)
        for row in rows:
            with self.subTest(mu=str(row.mu)):
                self.assertTrue(row.matches, row.to_dict())

    def test_witness_shapes(self):
        self.assertEqual(print_family(construct_family_with_spectrum(CardinalValue.finite(0))), "fin(1)")
        self.assertEqual(print_family(construct_family_with_spectrum(CardinalValue.finite(1))), "omega")
        self.assertEqual(print_family(construct_family_with_spectrum(CardinalValue.finite(4))),
                         "zeta +split zeta")
        self.assertEqual(print_family(construct_family_with_spectrum(CardinalValue.finite(3))),
                         "zeta +separate omega")

    def test_continuum_not_constructible(self):
        with self.assertRaises(UnsupportedCardinalError):
            construct_family_with_spectrum(CardinalValue.at_least_continuum())
        recipe = continuum_recipe("kappa")
        self.assertFalse(e_spectrum(recipe, "kappa").exact)


class TestAdditivity(unittest.TestCase):
    """测试切分可加性与重复计数修正"""

    def test_adjustments(self):
        self.assertEqual(cut_adjustment(parse_family("omega +merged omega*"), CutPos(1)), 1)
        self.assertEqual(cut_adjustment(parse_family("zeta +split zeta"), CutPos(1)), 0)
        self.assertEqual(cut_adjustment(parse_family("omega +absorbed fin(1)"), CutPos(1)), 0)
        f = parse_family("zeta +absorbed fin(1) +absorbed zeta")
        self.assertEqual(cut_adjustment(f, CutPos(1)), 1)
        self.assertEqual(cut_adjustment(f, CutPos(2)), 1)
        self.assertEqual(cut_adjustment(parse_family("zeta"), CutPos(0, 0)), 0)

    def test_additive_examples(self):
        for text in ("omega +merged omega*", "zeta +split zeta", "omega +absorbed fin(3)",
                     "zeta +absorbed fin(3) +absorbed zeta", "fin(2) +absorbed zeta"):
            f = parse_family(text)
            for cut in enumerate_cuts(f):
                with self.subTest(family=text, cut=cut.text()):
                    self.assertTrue(spectrum_additive(f, cut))

    @settings(max_examples=50, deadline=None)
    @given(families(), st.data())
    def test_additive_on_random_cuts(self, f, data):
        cuts = enumerate_cuts(f)
        if not cuts:
            return
        cut = data.draw(st.sampled_from(cuts))
        self.assertTrue(spectrum_additive(f, cut))


def run_tests():
    """运行所有测试"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    suite.addTests(loader.loadTestsFromTestCase(TestESpectrum))
    suite.addTests(loader.loadTestsFromTestCase(TestConstruction))
    suite.addTests(loader.loadTestsFromTestCase(TestAdditivity))
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    print("=" * 70)
    print("e-谱 - 单元测试")
    print("=" * 70)
    success = run_tests()
    print("=" * 70)
    print("✓ 所有测试通过！" if success else "✗ 部分测试失败，请检查错误信息")
    print("=" * 70)
    sys.exit(0 if success else 1)
