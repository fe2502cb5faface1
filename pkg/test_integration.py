"""LU闭包引擎集成测试（命令行与报告层）"""
import io
import json
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import patch

# 添加项目根目录到路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from csv_logger import CSVLogger
from main import EXIT_OK, EXIT_ORACLE_MISMATCH, EXIT_USAGE, EXIT_VALIDATION, main
from models import Report, validate_report
from report_adapter import EngineReportAdapter, log_report_details, render_text
from LU_ClosureEngine.errors import ReportValidationError
from LU_ClosureEngine.oracle import CheckRow


def run_cli(*argv):
    """运行 main() 并返回 (退出码, stdout)"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue()


class TestAnalyzeReports(unittest.TestCase):
    """测试 analyze 报告内容"""

    def setUp(self):
        self.adapter = EngineReportAdapter(depth=32, seed=0)

    def test_two_split_zetas(self):
        data = self.adapter.analyze("zeta +split zeta").to_dict()
        self.assertTrue(data['genset']['exists_least'])
        self.assertEqual(data['spectrum']['value'], {'kind': 'finite', 'n': 4})
        self.assertTrue(data['spectrum']['exact'])
        validate_report(data)

    def test_tight_eta_lower_bound(self):
        data = self.adapter.analyze("eta(tight)").to_dict()
        self.assertFalse(data['genset']['exists_least'])
        self.assertFalse(data['spectrum']['exact'])
        self.assertEqual(data['spectrum']['value']['kind'], 'at_least_continuum')
        self.assertTrue(data['completion']['dense_interval'])
        validate_report(data)

    def test_finite_family_is_closed(self):
        data = self.adapter.analyze("fin(3)").to_dict()
        self.assertEqual(data['completion']['new_points'], {'kind': 'finite', 'n': 0})
        self.assertEqual(data['spectrum']['value'], {'kind': 'finite', 'n': 0})
        self.assertEqual(data['genset']['excluded'], [])
        validate_report(data)

    def test_absorbed_point_excluded(self):
        data = self.adapter.analyze("omega +absorbed fin(1) +absorbed omega*").to_dict()
        self.assertEqual(data['genset']['excluded'], ["b1[0]"])
        self.assertEqual(data['genset']['witness'], {"b1[0]": ["lower", "upper"]})

    def test_report_round_trip(self):
        report = self.adapter.analyze("omega +merged omega*", with_oracle=True)
        self.assertEqual(Report.from_dict(report.to_dict()), report)

    def test_depth_bounds(self):
        with self.assertRaises(ValueError):
            EngineReportAdapter(depth=4)
        with self.assertRaises(ValueError):
            EngineReportAdapter(depth=300)


class TestSchemaValidation(unittest.TestCase):
    """测试报告 schema 校验"""

    def test_missing_fields_rejected(self):
        with self.assertRaises(ReportValidationError):
            validate_report({'command': 'analyze'})

    def test_unknown_cardinal_kind_rejected(self):
        data = EngineReportAdapter().spectrum("zeta").to_dict()
        data['spectrum']['value'] = {'kind': 'huge'}
        with self.assertRaises(ReportValidationError):
            validate_report(data)

    def test_every_command_validates(self):
        adapter = EngineReportAdapter()
        reports = [
            adapter.closure("zeta +merged zeta"),
            adapter.genset("eta(gapped)"),
            adapter.spectrum("(zeta)^omega"),
            adapter.catalog(),
            adapter.signature('uniformize', arities=[2, 2, 2]),
            adapter.card_family('hausdorff-demo'),
        ]
        for report in reports:
            with self.subTest(command=report.command):
                validate_report(report.to_dict())


class TestCommandLine(unittest.TestCase):
    """测试命令行退出码与输出"""

    def test_analyze_json(self):
        code, out = run_cli('analyze', 'zeta')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data['family'], 'zeta')
        self.assertEqual(data['spectrum']['value'], {'kind': 'finite', 'n': 2})

    def test_output_is_deterministic(self):
        first = run_cli('analyze', 'zeta +merged zeta', '--seed', '7')
        second = run_cli('analyze', 'zeta +merged zeta', '--seed', '7')
        self.assertEqual(first, second)

    def test_text_format(self):
        code, out = run_cli('spectrum', 'zeta +split zeta', '--format', 'text')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('e-spectrum', out)
        self.assertIn('4', out)

    def test_parse_errors_exit_2(self):
        for expr in ('zeta +', 'fin(0)', 'omega +split omega'):
            with self.subTest(expr=expr):
                code, out = run_cli('analyze', expr)
                self.assertEqual(code, EXIT_VALIDATION)
                self.assertEqual(out, '')

    def test_usage_errors_exit_1(self):
        self.assertEqual(run_cli('bogus')[0], EXIT_USAGE)
        self.assertEqual(run_cli('oracle', 'verify', 'zeta', '--depth', '4')[0], EXIT_USAGE)
        self.assertEqual(run_cli('analyze', 'zeta', '--format', 'xml')[0], EXIT_USAGE)
        self.assertEqual(run_cli('sig', 'supp', '/nonexistent/profile.txt')[0], EXIT_USAGE)

    def test_oracle_verify_passes(self):
        code, out = run_cli('oracle', 'verify', 'zeta', '--depth', '32')
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertTrue(data['oracle']['passed'])
        self.assertIn('probe_size', [row['check'] for row in data['oracle']['rows']])

    def test_oracle_verify_tight_mixed_family(self):
        for expr in ('eta(tight) + zeta', 'fin(1) + eta(tight)'):
            with self.subTest(expr=expr):
                code, out = run_cli('oracle', 'verify', expr, '--depth', '32')
                self.assertEqual(code, EXIT_OK)
                self.assertTrue(json.loads(out)['oracle']['passed'])

    def test_large_fin_genset_is_compact(self):
        code, out = run_cli('genset', 'fin(3000000)')
        self.assertEqual(code, EXIT_OK)
        self.assertLess(len(out), 2000)
        genset = json.loads(out)['genset']
        self.assertEqual(genset['required'], ['b0[0]', 'b0[2999999]', 'b0[all other points]'])
        self.assertEqual(genset['excluded'], [])

    def test_oracle_mismatch_exit_3(self):
        forced = [CheckRow('closure_agreement', False, 'forced')]
        with patch('report_adapter.verify_family', return_value=forced):
            code, out = run_cli('oracle', 'verify', 'fin(2)')
        self.assertEqual(code, EXIT_ORACLE_MISMATCH)
        self.assertFalse(json.loads(out)['oracle']['passed'])

    def test_catalog(self):
        code, out = run_cli('catalog')
        self.assertEqual(code, EXIT_OK)
        rows = json.loads(out)['catalog']
        self.assertEqual(len(rows), 10)
        self.assertEqual(rows[0]['family'], 'fin(1)')
        self.assertEqual(rows[4]['family'], 'zeta +split zeta')
        self.assertEqual(rows[-1]['mu'], 'aleph0')
        self.assertTrue(all(row['matches'] for row in rows))


class TestSignatureAndToyCommands(unittest.TestCase):
    """测试 sig / ptoy 子命令"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.small = os.path.join(self.tmp.name, 'small.txt')
        self.large = os.path.join(self.tmp.name, 'large.txt')
        with open(self.small, 'w', encoding='utf-8') as f:
            f.write("# arity: nonempty, empty\n1: 2, aleph0\n")
        with open(self.large, 'w', encoding='utf-8') as f:
            f.write("1: 3, aleph0\n")

    def tearDown(self):
        self.tmp.cleanup()

    def test_uniformize(self):
        code, out = run_cli('sig', 'uniformize', '2', '2', '2')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['result']['schedule'], [2, 3, 4])

    def test_supp_and_domination(self):
        code, out = run_cli('sig', 'supp', self.small)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['result']['supp'], [1])

        code, out = run_cli('sig', 'dom', self.small, self.large)
        result = json.loads(out)['result']
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(result['dominates'])
        self.assertFalse(result['infinitely_dominates'])
        self.assertFalse(result['equivalent'])

        code, out = run_cli('sig', 'similar', self.small, self.large)
        self.assertFalse(json.loads(out)['result']['language_similar'])

    def test_bad_profile_exit_2(self):
        bad = os.path.join(self.tmp.name, 'bad.txt')
        with open(bad, 'w', encoding='utf-8') as f:
            f.write("1 2 3\n")
        self.assertEqual(run_cli('sig', 'supp', bad)[0], EXIT_VALIDATION)

    def test_ptoy(self):
        code, out = run_cli('ptoy', 'clp', 'mod:2:0')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['result']['closure'], 'I')

        code, out = run_cli('ptoy', 'hausdorff-demo')
        result = json.loads(out)['result']
        self.assertTrue(result['cl_p_d']['t0'])
        self.assertFalse(result['cl_p_d']['hausdorff'])
        self.assertFalse(result['cl_p_dr']['t0'])
        self.assertTrue(result['open_sets_intersect'])

        self.assertEqual(run_cli('ptoy', 'clp', 'mod:0:1')[0], EXIT_VALIDATION)


class TestCSVJournal(unittest.TestCase):
    """测试CSV记录"""

    def test_catalog_rows_logged(self):
        report = EngineReportAdapter().catalog()
        with tempfile.TemporaryDirectory() as tmp:
            with CSVLogger(base_dir=tmp) as journal:
                self.assertEqual(journal.log_report(report), 10)
                rows = journal.read_rows('catalog')
            self.assertEqual(len(rows), 10)
            self.assertEqual(rows[0]['item'], '0')
            self.assertEqual(rows[0]['passed'], 'True')

    def test_report_without_rows(self):
        report = EngineReportAdapter().spectrum("zeta")
        with tempfile.TemporaryDirectory() as tmp:
            with CSVLogger(base_dir=tmp) as journal:
                self.assertEqual(journal.log_report(report), 0)


class TestReportLogging(unittest.TestCase):
    """测试报告日志与文本渲染"""

    def test_log_report_details(self):
        report = EngineReportAdapter().analyze("zeta", with_oracle=True)
        with self.assertLogs('report_adapter', level='INFO') as logs:
            log_report_details(report)
        joined = "\n".join(logs.output)
        self.assertIn("e-spectrum: 2", joined)
        self.assertIn("✓ passed", joined)

    def test_render_catalog(self):
        text = render_text(EngineReportAdapter().catalog())
        self.assertIn("zeta +split zeta", text)
        self.assertNotIn("✗", text)


def run_tests():
    """运行所有测试"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestAnalyzeReports))
    suite.addTests(loader.loadTestsFromTestCase(TestSchemaValidation))
    suite.addTests(loader.loadTestsFromTestCase(TestCommandLine))
    suite.addTests(loader.loadTestsFromTestCase(TestSignatureAndToyCommands))
    suite.addTests(loader.loadTestsFromTestCase(TestCSVJournal))
    suite.addTests(loader.loadTestsFromTestCase(TestReportLogging))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    print("=" * 70)
    print("LU闭包引擎 - 集成测试")
    print("=" * 70)
    print()

    success = run_tests()

    print()
    print("=" * 70)
    if success:
        print("✓ 所有测试通过！")
    else:
        print("✗ 部分测试失败，请检查错误信息")
    print("=" * 70)

    sys.exit(0 if success else 1)
