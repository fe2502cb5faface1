"""
e-谱计算与目标谱的见证族构造

e-Sp = |Cl_E(𝒯_F) ∖ 最小生成集|：新聚点个数加上被排除的原有点个数。
没有最小生成集时只给出下界 ≥ max(2^ω, λ)。
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from .completion import EndpointFlag, complete
from .errors import UnsupportedCardinalError
from .family_core import (
    Annotation,
    Block,
    CardinalTag,
    CardinalValue,
    FamilyDesc,
    Junction,
    PointRef,
    block_sides,
    first_point,
    last_point,
)
from .genset import CutPos, least_generating_set, split_at_cut

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectrumValue:
    """
    e-谱值

    Attributes:
        value: 符号基数
        exact: False 表示只是下界（仅与 ≥2^ω 同时出现）
        notes: 记账说明（吸收/合并极限的去重等）
    """
    value: CardinalValue
    exact: bool = True
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.exact and self.value.tag != CardinalTag.CONTINUUM:
            raise ValueError("only continuum-sized spectra may be lower bounds")

    def text(self) -> str:
        return str(self.value) if self.exact else f"{self.value} (lower bound)"

    def to_dict(self) -> dict:
        return {"value": self.value.to_dict(), "exact": self.exact, "notes": list(self.notes)}


def e_spectrum(f: FamilyDesc, lambda_tag: Optional[str] = None) -> SpectrumValue:
    """
    计算族 F 对应 E-组合的 e-谱

    Args:
        f: 族描述
        lambda_tag: 语言基数参数 λ 的符号标记，只出现在连续统大小的结果中

    Returns:
        SpectrumValue
    """
    gs = least_generating_set(f)
    if gs is None:
        return SpectrumValue(CardinalValue.at_least_continuum(lambda_tag), exact=False,
                             notes=("no least generating set; only the lower bound is known",))

    if f.has_eta():
        # 可数族的闭包不超过 2^ω，而 Eta 块的切分已给出 2^ω 个新点
        return SpectrumValue(CardinalValue.at_least_continuum(lambda_tag), exact=True,
                             notes=("dense block cuts give 2^omega new points",))

    if f.repeated:
        return SpectrumValue(CardinalValue.aleph0())

    completion = complete(f)
    excluded = gs.excluded_refs()
    notes = []
    absorbed = [lp for lp in completion.limit_points if lp.absorbed_into is not None]
    if absorbed:
        notes.append(f"{len(absorbed)} limit(s) coincide with original points and are "
                     f"counted once, as excluded points")
    value = CardinalValue.finite(completion.new_points.n + len(excluded))
    logger.debug(f"e_spectrum({f.text()}) = {completion.new_points.n} new + "
                 f"{len(excluded)} excluded")
    return SpectrumValue(value, True, tuple(notes))


# ============================================================================
# 见证族构造
# ============================================================================

def _zeta_chain(count: int) -> Tuple[List[Block], List[Junction]]:
    blocks = [Block.zeta() for _ in range(count)]
    junctions = [Junction(Annotation.SPLIT) for _ in range(count - 1)]
    return blocks, junctions


def construct_family_with_spectrum(mu: CardinalValue) -> FamilyDesc:
    """
    构造 e-谱恰为 μ 的族

    0 → fin(1)；偶数 n → n/2 个 split 相接的 zeta；
    奇数 n → (n-1)/2 个 zeta 再以 separate 接一个 omega；ℵ₀ → (zeta)^omega。

    Raises:
        UnsupportedCardinalError: μ ≥ 2^ω（见 continuum_recipe）
    """
    if mu.tag == CardinalTag.CONTINUUM:
        raise UnsupportedCardinalError(
            "continuum spectra are only bounded from below; use continuum_recipe")
    label = f"spectrum {mu}"
    if mu.tag == CardinalTag.ALEPH0:
        return FamilyDesc((Block.zeta(),), repeated=True, label=label)

    n = mu.n
    if n == 0:
        return FamilyDesc((Block.fin(1),), label=label)
    blocks, junctions = _zeta_chain(n // 2)
    if n % 2:
        if blocks:
            junctions.append(Junction(Annotation.SEPARATE))
        blocks.append(Block.omega())
    return FamilyDesc(tuple(blocks), tuple(junctions), label=label)


def continuum_recipe(lambda_tag: Optional[str] = None) -> FamilyDesc:
    """谱下界为 max(2^ω, λ) 的见证族：eta(tight)"""
    label = "continuum lower bound" if lambda_tag is None else f"continuum lower bound, lambda={lambda_tag}"
    return FamilyDesc((Block.eta("tight"),), label=label)


@dataclass(frozen=True)
class CatalogRow:
    """谱目录的一行"""
    mu: CardinalValue
    family_text: str
    spectrum: SpectrumValue

    @property
    def matches(self) -> bool:
        return self.spectrum.exact and self.spectrum.value == self.mu

    def to_dict(self) -> dict:
        return {
            "mu": str(self.mu),
            "family": self.family_text,
            "spectrum": self.spectrum.to_dict(),
            "matches": self.matches,
        }


def spectrum_catalog(mus: Iterable[CardinalValue]) -> List[CatalogRow]:
    """对每个目标 μ 给出见证族及其计算所得的谱"""
    rows = []
    for mu in mus:
        f = construct_family_with_spectrum(mu)
        row = CatalogRow(mu, f.text(), e_spectrum(f))
        if not row.matches:
            logger.warning(f"Catalog row mu={mu}: witness {row.family_text} "
                           f"has spectrum {row.spectrum.text()}")
        rows.append(row)
    return rows


# ============================================================================
# 切分可加性
# ============================================================================

def _absorbed_point_at_junction(f: FamilyDesc, j: int) -> PointRef:
    """第 j 个接合处被吸收的点（闭端一侧的端点）"""
    right = f.blocks[j + 1]
    if not block_sides(right)[0]:
        return PointRef(j + 1, first_point(right))
    return PointRef(j, last_point(f.blocks[j]))


def cut_adjustment(f: FamilyDesc, c: CutPos) -> int:
    """
    两半分别计数时被重复计入的闭包对象个数

    merged 接合：两半各计一次同一个极限；absorbed 接合：被吸收的点
    在它所在的半边里已被排除，而在另一半边里对应的极限被计为新点。
    块内切分不产生重复。
    """
    if c.position is not None:
        return 0
    j = c.block_index - 1
    annotation = f.annotation(j)
    if annotation == Annotation.MERGED:
        return 1
    if annotation != Annotation.ABSORBED:
        return 0

    lower, upper = split_at_cut(f, c)
    point = _absorbed_point_at_junction(f, j)
    if point.block_index <= j:
        half, ref = lower, point
    else:
        half, ref = upper, PointRef(point.block_index - c.block_index, point.offset)
    gs = least_generating_set(half)
    if gs is not None and gs.status_of(ref) == EndpointFlag.EXCLUDED:
        return 1
    return 0


def spectrum_additive(f: FamilyDesc, c: CutPos) -> bool:
    """
    e-Sp(F) = e-Sp(F⁻) + e-Sp(F⁺) − cut_adjustment(F, c)

    只在整体与两半都有最小生成集时比较；否则视为满足。
    """
    whole = e_spectrum(f)
    lower, upper = split_at_cut(f, c)
    lo, hi = e_spectrum(lower), e_spectrum(upper)
    if not (whole.exact and lo.exact and hi.exact):
        return True
    if not whole.value.is_finite():
        return whole.value == lo.value + hi.value
    if not (lo.value.is_finite() and hi.value.is_finite()):
        return False
    expected = lo.value.n + hi.value.n - cut_adjustment(f, c)
    if expected != whole.value.n:
        logger.warning(f"Spectrum additivity off for {f.text()} at {c.text()}: "
                       f"{whole.value.n} vs {lo.value.n}+{hi.value.n}-adjustment")
    return expected == whole.value.n

