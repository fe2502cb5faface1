"""引擎报告适配器模块"""
import logging
from typing import Iterable, List, Optional, Sequence

from config import (
    CATALOG_MU_RANGE,
    DEFAULT_DEPTH,
    DEFAULT_SEED,
    ISOLATION_MAX_PROBE,
    MAX_DEPTH,
    MIN_DEPTH,
    ORACLE_RANDOM_TRIALS,
    ORACLE_SAMPLE_POINTS,
    REALIZATION_CAPACITY,
)
from models import (
    CompletionSummary,
    GenSetSummary,
    OracleSummary,
    Report,
    SpectrumSummary,
)
from LU_ClosureEngine.completion import complete, components, has_dense_interval, is_discrete
from LU_ClosureEngine.family_core import CardinalValue, FamilyDesc, parse_family
from LU_ClosureEngine.genset import least_generating_set, minimality_witness
from LU_ClosureEngine.oracle import (
    CheckRow,
    isolating_pattern,
    realize,
    sample_points,
    verify_family,
)
from LU_ClosureEngine.spectrum import e_spectrum, spectrum_catalog
from LU_ClosureEngine import lu_signatures as sig
from LU_ClosureEngine import p_closure_toy as ptoy

logger = logging.getLogger(__name__)


class EngineReportAdapter:
    """符号引擎与报告层之间的适配层"""

    def __init__(self, depth: int = DEFAULT_DEPTH, seed: int = DEFAULT_SEED,
                 lambda_tag: Optional[str] = None, capacity: int = REALIZATION_CAPACITY):
        """
        初始化适配器

        Args:
            depth: 预言机探针深度，须在 [MIN_DEPTH, MAX_DEPTH] 内
            seed: 键布局随机种子
            lambda_tag: 语言基数标签，写入连续统下界
            capacity: 每个实现预先计算的下标个数

        Raises:
            ValueError: depth 越界或 capacity 小于 depth
        """
        if not MIN_DEPTH <= depth <= MAX_DEPTH:
            raise ValueError(f"depth must be in [{MIN_DEPTH}, {MAX_DEPTH}], got {depth}")
        if capacity < depth:
            raise ValueError(f"capacity {capacity} is smaller than depth {depth}")
        self.depth = depth
        self.seed = seed
        self.lambda_tag = lambda_tag
        self.capacity = capacity
        logger.debug(f"Adapter ready: depth={depth}, seed={seed}, capacity={capacity}")

    # ------------------------------------------------------------------
    # 各段摘要
    # ------------------------------------------------------------------

    def parse(self, expr: str) -> FamilyDesc:
        """解析族描述；语法/语义错误原样抛出"""
        f = parse_family(expr)
        logger.debug(f"Parsed family: {f.text()}")
        return f

    def completion_summary(self, f: FamilyDesc) -> CompletionSummary:
        c = complete(f)
        closure_family = c.as_family_when_countable()
        return CompletionSummary(
            new_points=c.new_points.to_dict(),
            cardinality=c.cardinality.to_dict(),
            limits=[lp.text() for lp in c.limit_points],
            components=[comp.text() for comp in components(f)],
            dense_interval=has_dense_interval(c),
            discrete=is_discrete(f),
            closure_family=closure_family.text() if closure_family is not None else None,
        )

    def genset_summary(self, f: FamilyDesc) -> GenSetSummary:
        gs = least_generating_set(f)
        if gs is None:
            return GenSetSummary(exists_least=False)
        return GenSetSummary(
            exists_least=True,
            required=gs.required_points(),
            excluded=gs.excluded_points(),
            witness=minimality_witness(f),
        )

    def spectrum_summary(self, f: FamilyDesc) -> SpectrumSummary:
        value = e_spectrum(f, self.lambda_tag)
        if not value.exact:
            logger.warning(f"Spectrum of {f.text()} is only a lower bound: {value.text()}")
        return SpectrumSummary(
            value=value.value.to_dict(),
            exact=value.exact,
            text=value.text(),
            notes=list(value.notes),
        )

    def oracle_summary(self, f: FamilyDesc) -> OracleSummary:
        rows = verify_family(f, self.depth, self.seed, trials=ORACLE_RANDOM_TRIALS,
                             capacity=self.capacity)
        rows.append(self._probe_size_row(f))
        return OracleSummary(self.depth, self.seed, [row.to_dict() for row in rows])

    def _probe_size_row(self, f: FamilyDesc) -> CheckRow:
        """孤立模式的探针大小不超过 ISOLATION_MAX_PROBE"""
        r = realize(f, self.seed, self.capacity)
        largest = 0
        for p in sample_points(r, ORACLE_SAMPLE_POINTS):
            pattern = isolating_pattern(r, p, self.capacity)
            if pattern is not None:
                largest = max(largest, len(pattern.probe))
        return CheckRow("probe_size", largest <= ISOLATION_MAX_PROBE,
                        f"largest isolating probe {largest}")

    # ------------------------------------------------------------------
    # 命令
    # ------------------------------------------------------------------

    def analyze(self, expr: str, with_oracle: bool = False) -> Report:
        """完备化 + 最小生成集 + e-谱（可选预言机核对）"""
        f = self.parse(expr)
        report = Report(
            command='analyze',
            family=f.text(),
            seed=self.seed,
            completion=self.completion_summary(f),
            genset=self.genset_summary(f),
            spectrum=self.spectrum_summary(f),
        )
        if with_oracle:
            report.oracle = self.oracle_summary(f)
        return report

    def closure(self, expr: str) -> Report:
        f = self.parse(expr)
        return Report(command='closure', family=f.text(), completion=self.completion_summary(f))

    def genset(self, expr: str) -> Report:
        f = self.parse(expr)
        return Report(command='genset', family=f.text(), genset=self.genset_summary(f))

    def spectrum(self, expr: str) -> Report:
        f = self.parse(expr)
        return Report(command='spectrum', family=f.text(), spectrum=self.spectrum_summary(f))

    def oracle(self, expr: str) -> Report:
        f = self.parse(expr)
        return Report(command='oracle', family=f.text(), seed=self.seed,
                      oracle=self.oracle_summary(f))

    def catalog(self, mus: Optional[Iterable[CardinalValue]] = None) -> Report:
        """μ ↦ 见证族 ↦ 计算所得的谱"""
        if mus is None:
            mus = [CardinalValue.finite(n) for n in CATALOG_MU_RANGE] + [CardinalValue.aleph0()]
        rows = spectrum_catalog(mus)
        return Report(command='catalog', catalog=[row.to_dict() for row in rows])

    # ------------------------------------------------------------------
    # 签名演算
    # ------------------------------------------------------------------

    def signature(self, action: str, profiles: Sequence[sig.SignatureProfile] = (),
                  arities: Sequence[int] = ()) -> Report:
        """
        sig 子命令

        Args:
            action: supp / dom / similar / iilu / uniformize
            profiles: 已解析的轮廓（dom / similar 需要两个）
            arities: uniformize 的元数列表
        """
        if action == 'uniformize':
            result = {'arities': list(arities), 'schedule': sig.uniformize(arities)}
        elif action == 'supp':
            p = profiles[0]
            result = {'profile': p.describe(), 'supp': sorted(sig.supp(p))}
        elif action == 'iilu':
            p = profiles[0]
            expanded = sig.iilu_expand(p)
            result = {'profile': p.describe(), 'is_iilu': sig.is_iilu(p),
                      'expanded': expanded.describe()}
        elif action == 'dom':
            p1, p2 = profiles[0], profiles[1]
            dominated = sig.dominates(p1, p2)
            result = {
                'dominates': dominated,
                'infinitely_dominates': sig.infinitely_dominates(p1, p2) if dominated else False,
                'equivalent': sig.domination_equivalent(p1, p2),
            }
        elif action == 'similar':
            result = {'language_similar': sig.language_similar(profiles[0], profiles[1])}
        else:
            raise ValueError(f"unknown sig action: {action}")
        return Report(command=f'sig {action}', result=result)

    # ------------------------------------------------------------------
    # 基数族 P-闭包
    # ------------------------------------------------------------------

    def card_family(self, action: str, text: Optional[str] = None) -> Report:
        """
        ptoy 子命令

        Args:
            action: clp / clpdr / genset / hausdorff-demo
            text: I 子集的文本（hausdorff-demo 不需要）
        """
        if action == 'hausdorff-demo':
            sample = [1, 2, 3, 10, ptoy.TOP]
            u1 = ptoy.CardFamily.of([1]).complement()
            u2 = ptoy.CardFamily.of([2]).complement()
            result = {
                'sample': [str(p) for p in sample],
                'cl_p_d': {'t0': ptoy.is_t0(ptoy.cl_p_d, sample),
                           'hausdorff': ptoy.is_hausdorff(ptoy.cl_p_d, sample)},
                'cl_p_dr': {'t0': ptoy.is_t0(ptoy.cl_p_dr, sample),
                            'hausdorff': ptoy.is_hausdorff(ptoy.cl_p_dr, sample)},
                'open_sets': [u1.describe(), u2.describe()],
                'open_sets_intersect': ptoy.open_sets_intersect(u1, u2),
            }
            return Report(command='ptoy hausdorff-demo', result=result)

        s = ptoy.parse_card_family(text)
        if action == 'clp':
            result = {'input': s.describe(), 'closure': ptoy.cl_p(s).describe()}
        elif action == 'clpdr':
            result = {'input': s.describe(), 'closure': ptoy.cl_p_dr(s).describe()}
        elif action == 'genset':
            closed = ptoy.cl_p_d(s)
            result = {
                'input': s.describe(),
                'closure': closed.describe(),
                'has_minimal_generating_set_dP': ptoy.has_minimal_generating_set_dP(closed),
                'minimal_generating_sets_dr': [
                    g.describe() for g in ptoy.minimal_generating_sets_dr(ptoy.cl_p_dr(s), 4)],
            }
        else:
            raise ValueError(f"unknown ptoy action: {action}")
        return Report(command=f'ptoy {action}', result=result)


# ============================================================================
# 输出
# ============================================================================

def render_text(report: Report) -> str:
    """把报告渲染为可读文本表格（--format text）"""
    lines: List[str] = [f"command: {report.command}"]
    if report.family is not None:
        lines.append(f"family:  {report.family}")
    if report.completion is not None:
        c = report.completion
        lines.append("-- completion")
        lines.append(f"  new points:     {_cardinal_text(c.new_points)}")
        lines.append(f"  |closure|:      {_cardinal_text(c.cardinality)}")
        lines.append(f"  dense interval: {c.dense_interval}")
        lines.extend(f"  limit: {text}" for text in c.limits)
        lines.extend(f"  {text}" for text in c.components)
    if report.genset is not None:
        g = report.genset
        lines.append("-- least generating set")
        lines.append(f"  exists: {g.exists_least}")
        if g.exists_least:
            lines.append(f"  required: {', '.join(g.required) or '-'}")
            lines.append(f"  excluded: {', '.join(g.excluded) or '-'}")
    if report.spectrum is not None:
        lines.append("-- e-spectrum")
        lines.append(f"  {report.spectrum.text}")
        lines.extend(f"  note: {note}" for note in report.spectrum.notes)
    if report.oracle is not None:
        o = report.oracle
        lines.append(f"-- oracle (depth {o.depth}, seed {o.seed})")
        for row in o.rows:
            mark = "✓" if row['passed'] else "✗"
            detail = f"  {row['detail']}" if row.get('detail') else ""
            lines.append(f"  {mark} {row['check']:<20s}{detail}")
    if report.catalog is not None:
        lines.append(f"{'mu':>8s}  {'spectrum':<12s}  family")
        for row in report.catalog:
            spectrum = _cardinal_text(row['spectrum']['value'])
            mark = "" if row['matches'] else "  ✗"
            lines.append(f"{row['mu']:>8s}  {spectrum:<12s}  {row['family']}{mark}")
    if report.result is not None:
        for key in sorted(report.result):
            lines.append(f"  {key}: {report.result[key]}")
    return "\n".join(lines)


def _cardinal_text(data: dict) -> str:
    return str(CardinalValue.from_dict(data))


def log_report_details(report: Report):
    """
    输出报告的详细信息

    Args:
        report: 报告对象
    """
    logger.info("=" * 60)
    logger.info(f"📋 {report.command} report")
    if report.family is not None:
        logger.info(f"Family: {report.family}")
    if report.completion is not None:
        logger.info(f"New points: {_cardinal_text(report.completion.new_points)}, "
                    f"|closure| = {_cardinal_text(report.completion.cardinality)}")
    if report.genset is not None:
        logger.info(f"Least generating set exists: {report.genset.exists_least}")
    if report.spectrum is not None:
        logger.info(f"e-spectrum: {report.spectrum.text}")
    if report.oracle is not None:
        status = "✓ passed" if report.oracle.passed else "✗ mismatch"
        logger.info(f"Oracle: {status} ({len(report.oracle.rows)} checks)")
    if report.catalog is not None:
        matched = sum(1 for row in report.catalog if row['matches'])
        logger.info(f"Catalog: {matched}/{len(report.catalog)} rows match")
    logger.info("=" * 60)

