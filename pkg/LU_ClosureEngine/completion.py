"""
闭包 F̄ = F ∪ {聚点} 的符号计算

每个开放端产生一个极限；相邻开放端的 merged 接合使两个极限重合，
absorbed 接合使极限落在相邻的闭端点上。Eta 块内部的切分极限只用
"连续统"标记表示，不逐个枚举。
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from .family_core import (
    Annotation,
    Block,
    BlockKind,
    CardinalValue,
    EtaMode,
    FamilyDesc,
    Junction,
    PointRef,
    block_sides,
    canonicalize,
    element_count,
    first_point,
    last_point,
)

logger = logging.getLogger(__name__)


class LimitSide(str, Enum):
    UPPER = "upper"
    LOWER = "lower"


class LimitStatus(str, Enum):
    NEW = "new"
    ABSORBED = "absorbed"
    MERGED = "merged"


class CaseLabel(str, Enum):
    I = "i"
    II = "ii"
    III = "iii"
    IV = "iv"
    V = "v"


class EndpointFlag(str, Enum):
    REQUIRED = "required"
    EXCLUDED = "excluded"


# 极限挂靠位置：块的左端 / 右端 / Eta 内部 / 重复模式的总上确界
END_LEFT = "left"
END_RIGHT = "right"
END_INTERIOR = "interior"
END_SUPREMUM = "supremum"


@dataclass(frozen=True)
class LimitPoint:
    """
    F 的一个极限（∪F′ 或 ∩F′）

    Attributes:
        side: upper 表示递增链的并，lower 表示递减链的交
        attached_to: (块下标, 端) ；重复模式总上确界为 (-1, "supremum")
        status: new / absorbed / merged
        absorbed_into: 被吸收到的 F 中元素
        merged_with: 与之重合的另一个极限的挂靠位置
        per_copy: 重复模式中每个副本各有一个
        per_point: Eta(gapped) 中每个点各有一个（计数 ℵ₀）
    """
    side: LimitSide
    attached_to: Tuple[int, str]
    status: LimitStatus = LimitStatus.NEW
    absorbed_into: Optional[PointRef] = None
    merged_with: Optional[Tuple[int, str]] = None
    per_copy: bool = False
    per_point: bool = False

    def text(self) -> str:
        block, end = self.attached_to
        where = "sup of all copies" if end == END_SUPREMUM else f"block {block} {end}"
        if self.status == LimitStatus.ABSORBED:
            return f"{self.side.value} limit at {where} = {self.absorbed_into.text()}"
        if self.status == LimitStatus.MERGED:
            return f"{self.side.value} limit at {where} merged with block {self.merged_with[0]} {self.merged_with[1]}"
        marks = " (per copy)" if self.per_copy else ""
        marks += " (per point, aleph0 many)" if self.per_point else ""
        return f"{self.side.value} limit at {where}{marks}"


@dataclass(frozen=True)
class EtaCutMass:
    """Eta 块内部连续统个切分极限的符号标记"""
    block_index: int
    mode: EtaMode


@dataclass(frozen=True)
class CompletionDesc:
    """闭包 F̄ 的符号描述"""
    base: FamilyDesc
    limit_points: Tuple[LimitPoint, ...]
    eta_cut_mass: Tuple[EtaCutMass, ...]
    new_points: CardinalValue
    cardinality: CardinalValue

    def new_limits(self) -> List[LimitPoint]:
        return [lp for lp in self.limit_points if lp.status == LimitStatus.NEW]

    def as_family_when_countable(self) -> Optional[FamilyDesc]:
        """
        把可数且全离散的 F̄ 写回为族描述：每个新极限变为一个被吸收的 fin(1)

        Returns:
            F̄ 对应的 FamilyDesc；含 Eta 块或为重复模式时返回 None
        """
        f = self.base
        if f.repeated or f.has_eta():
            return None

        blocks: List[Block] = []
        junctions: List[Junction] = []

        def push(block: Block, annotation: Optional[Annotation]):
            if blocks:
                junctions.append(Junction(annotation))
            blocks.append(block)

        first_left_open = block_sides(f.blocks[0])[0]
        if first_left_open:
            push(Block.fin(1), None)
            push(f.blocks[0], Annotation.ABSORBED)
        else:
            push(f.blocks[0], None)

        for i, junction in enumerate(f.junctions):
            left, right = f.blocks[i], f.blocks[i + 1]
            left_open = block_sides(left)[1]
            right_open = block_sides(right)[0]
            ann = junction.annotation
            if ann is None or ann == Annotation.ABSORBED:
                push(right, ann)
            elif ann == Annotation.MERGED:
                push(Block.fin(1), Annotation.ABSORBED)
                push(right, Annotation.ABSORBED)
            elif ann == Annotation.SPLIT:
                push(Block.fin(2), Annotation.ABSORBED)
                push(right, Annotation.ABSORBED)
            elif left_open and not right_open:
                # separate：新极限是右侧首点的直接前驱
                push(Block.fin(1), Annotation.ABSORBED)
                push(right, None)
            else:
                push(Block.fin(1), None)
                push(right, Annotation.ABSORBED)

        if block_sides(f.blocks[-1])[1]:
            push(Block.fin(1), Annotation.ABSORBED)

        closed = FamilyDesc(tuple(blocks), tuple(junctions), label=f"closure of {f.text()}")
        return canonicalize(closed)


# ============================================================================
# 闭包
# ============================================================================

def _lower_limit(f: FamilyDesc, i: int, per_copy: bool) -> LimitPoint:
    """块 i 左端（开放）的下极限"""
    if i == 0:
        return LimitPoint(LimitSide.LOWER, (i, END_LEFT), per_copy=per_copy)
    ann = f.annotation(i - 1)
    if ann == Annotation.MERGED:
        return LimitPoint(LimitSide.LOWER, (i, END_LEFT), LimitStatus.MERGED,
                          merged_with=(i - 1, END_RIGHT), per_copy=per_copy)
    if ann == Annotation.ABSORBED:
        target = PointRef(i - 1, last_point(f.blocks[i - 1]))
        return LimitPoint(LimitSide.LOWER, (i, END_LEFT), LimitStatus.ABSORBED,
                          absorbed_into=target, per_copy=per_copy)
    return LimitPoint(LimitSide.LOWER, (i, END_LEFT), per_copy=per_copy)


def _upper_limit(f: FamilyDesc, i: int, per_copy: bool) -> LimitPoint:
    """块 i 右端（开放）的上极限"""
    if i == len(f.blocks) - 1:
        return LimitPoint(LimitSide.UPPER, (i, END_RIGHT), per_copy=per_copy)
    ann = f.annotation(i)
    if ann == Annotation.ABSORBED:
        target = PointRef(i + 1, first_point(f.blocks[i + 1]))
        return LimitPoint(LimitSide.UPPER, (i, END_RIGHT), LimitStatus.ABSORBED,
                          absorbed_into=target, per_copy=per_copy)
    return LimitPoint(LimitSide.UPPER, (i, END_RIGHT), per_copy=per_copy)


def complete(f: FamilyDesc) -> CompletionDesc:
    """
    计算 F̄

    Args:
        f: 族描述

    Returns:
        CompletionDesc：每个聚点恰好出现一次，Eta 内部切分以连续统标记表示
    """
    per_copy = f.repeated
    limits: List[LimitPoint] = []
    masses: List[EtaCutMass] = []

    for i, block in enumerate(f.blocks):
        left_open, right_open = block_sides(block)
        if left_open:
            limits.append(_lower_limit(f, i, per_copy))
        if block.kind == BlockKind.ETA:
            masses.append(EtaCutMass(i, block.mode))
            if block.mode == EtaMode.GAPPED:
                limits.append(LimitPoint(LimitSide.LOWER, (i, END_INTERIOR),
                                         per_copy=per_copy, per_point=True))
                limits.append(LimitPoint(LimitSide.UPPER, (i, END_INTERIOR),
                                         per_copy=per_copy, per_point=True))
        if right_open:
            limits.append(_upper_limit(f, i, per_copy))

    if f.repeated:
        limits.append(LimitPoint(LimitSide.UPPER, (-1, END_SUPREMUM)))

    if masses:
        new_points = CardinalValue.at_least_continuum()
    elif f.repeated:
        new_points = CardinalValue.aleph0()
    else:
        new_points = CardinalValue.finite(
            sum(1 for lp in limits if lp.status == LimitStatus.NEW))

    if masses:
        cardinality = CardinalValue.at_least_continuum()
    elif f.is_finite:
        cardinality = element_count(f)
    else:
        cardinality = CardinalValue.aleph0()

    logger.debug(f"complete({f.text()}): {len(limits)} limit descriptors, new points {new_points}")
    return CompletionDesc(f, tuple(limits), tuple(masses), new_points, cardinality)


def accumulation_points(f: FamilyDesc) -> CardinalValue:
    """F̄ ∖ F 的元素个数"""
    return complete(f).new_points


def has_dense_interval(c: CompletionDesc) -> bool:
    """F̄ 是否含无限稠密区间：当且仅当存在 Eta(tight) 块"""
    return any(mass.mode == EtaMode.TIGHT for mass in c.eta_cut_mass)


def is_discrete(f: FamilyDesc) -> bool:
    """F 中没有元素是其余元素的聚点"""
    if f.has_tight_eta():
        return False
    return all(j.annotation != Annotation.ABSORBED for j in f.junctions)


# ============================================================================
# 连通分支
# ============================================================================

@dataclass(frozen=True)
class ComponentInfo:
    """
    关于 ·′ / ·⁻¹ 的连通分支（离散区间）

    Attributes:
        blocks: 组成分支的块下标
        first / last: 存在时的左右端点
        size: 分支大小
        case_label: 情形 (i)–(v)
        endpoint_flags: 各存在端点的标记
        eta_class: True 表示 Eta 块中"每个点自成单点分支"的符号类
        per_copy: 重复模式中每个副本各有一个
    """
    blocks: Tuple[int, ...]
    first: Optional[PointRef]
    last: Optional[PointRef]
    size: CardinalValue
    case_label: CaseLabel
    endpoint_flags: Tuple[Tuple[PointRef, EndpointFlag], ...] = ()
    eta_class: bool = False
    per_copy: bool = False

    def flag_of(self, p: PointRef) -> Optional[EndpointFlag]:
        for ref, flag in self.endpoint_flags:
            if ref.block_index == p.block_index and ref.offset == p.offset:
                return flag
        return None

    def contains(self, p: PointRef) -> bool:
        return p.block_index in self.blocks

    def text(self) -> str:
        span = ",".join(str(b) for b in self.blocks)
        return f"component[{span}] case ({self.case_label.value}) size {self.size}"


def _run_of_blocks(f: FamilyDesc) -> List[List[int]]:
    """按闭-闭接合切出块的连续段；Eta 块单独成段"""
    runs: List[List[int]] = [[0]]
    for i, junction in enumerate(f.junctions):
        joined = (junction.annotation is None
                  and f.blocks[i].kind != BlockKind.ETA
                  and f.blocks[i + 1].kind != BlockKind.ETA)
        if joined:
            runs[-1].append(i + 1)
        else:
            runs.append([i + 1])
    return runs


def components(f: FamilyDesc) -> List[ComponentInfo]:
    """
    把 F 划分为极大离散区间并标注情形

    单点分支：两侧均未被吸收 → (i) 必需；一侧被吸收 → (ii) 排除；两侧均被吸收 → (iii) 排除。
    多点分支：存在端点被吸收或开放端与邻居 merged → (v)，被吸收的端点排除；否则 (iv)。
    Eta 块的点：tight → (iii) 排除，gapped → (i) 必需。
    """
    result: List[ComponentInfo] = []
    last_block = len(f.blocks) - 1

    for run in _run_of_blocks(f):
        head, tail = run[0], run[-1]
        head_block, tail_block = f.blocks[head], f.blocks[tail]

        if head_block.kind == BlockKind.ETA:
            tight = head_block.mode == EtaMode.TIGHT
            result.append(ComponentInfo(
                blocks=(head,),
                first=None,
                last=None,
                size=CardinalValue.finite(1),
                case_label=CaseLabel.III if tight else CaseLabel.I,
                eta_class=True,
                per_copy=f.repeated,
            ))
            continue

        before = f.annotation(head - 1) if head > 0 else None
        after = f.annotation(tail) if tail < last_block else None

        lower = first_point(head_block)
        upper = last_point(tail_block)
        first = PointRef(head, lower) if lower is not None else None
        last = PointRef(tail, upper) if upper is not None else None

        if all(f.blocks[b].kind == BlockKind.FIN for b in run):
            size = CardinalValue.finite(sum(f.blocks[b].n for b in run))
        else:
            size = CardinalValue.aleph0()

        lower_absorbed = first is not None and before == Annotation.ABSORBED
        upper_absorbed = last is not None and after == Annotation.ABSORBED

        if size == CardinalValue.finite(1):
            if lower_absorbed and upper_absorbed:
                label = CaseLabel.III
            elif lower_absorbed or upper_absorbed:
                label = CaseLabel.II
            else:
                label = CaseLabel.I
            flag = EndpointFlag.REQUIRED if label == CaseLabel.I else EndpointFlag.EXCLUDED
            result.append(ComponentInfo((head,), first, last, size, label,
                                        ((first, flag),), per_copy=f.repeated))
            continue

        lower_merged = first is None and before == Annotation.MERGED
        upper_merged = last is None and after == Annotation.MERGED
        touched = lower_absorbed or upper_absorbed or lower_merged or upper_merged
        label = CaseLabel.V if touched else CaseLabel.IV

        flags = []
        if first is not None:
            flags.append((first, EndpointFlag.EXCLUDED if lower_absorbed else EndpointFlag.REQUIRED))
        if last is not None:
            flags.append((last, EndpointFlag.EXCLUDED if upper_absorbed else EndpointFlag.REQUIRED))

        result.append(ComponentInfo(tuple(run), first, last, size, label,
                                    tuple(flags), per_copy=f.repeated))

    logger.debug(f"components({f.text()}): "
                 + "; ".join(c.text() for c in result))
    return result


def component_of(f: FamilyDesc, p: PointRef) -> ComponentInfo:
    """点 p 所在的连通分支"""
    for comp in components(f):
        if comp.contains(p):
            return comp
    raise KeyError(f"point {p.text()} is not in {f.text()}")


def excluded_points(f: FamilyDesc) -> List[PointRef]:
    """被排除的（非 Eta）端点"""
    excluded = []
    for comp in components(f):
        for ref, flag in comp.endpoint_flags:
            if flag == EndpointFlag.EXCLUDED:
                excluded.append(ref)
    return excluded
