"""
最小生成集的存在性判定、提取与切分分解

判定规则：Cl_E(𝒯_F) 有最小生成集 ⟺ F̄ 没有稠密区间 ⟺ F 不含 Eta(tight) 块。
生成集成员由连通分支的情形标记决定，不做搜索。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .completion import (
    CaseLabel,
    EndpointFlag,
    complete,
    components,
    has_dense_interval,
    is_discrete,
)
from .errors import CutPositionError
from .family_core import (
    Annotation,
    Block,
    BlockKind,
    EtaMode,
    FamilyDesc,
    PointRef,
    is_eta_cut_tag,
    point_in_family,
)

logger = logging.getLogger(__name__)

REQUIRED = EndpointFlag.REQUIRED
EXCLUDED = EndpointFlag.EXCLUDED


@dataclass(frozen=True)
class PointClass:
    """
    F 中元素的符号类

    selector:
        "point"   : 单个元素 offset
        "interior": 块中除已列出端点以外的全部元素
        "eta"     : Eta 块的全部元素
    """
    block_index: int
    selector: str
    offset: Optional[Union[int, Fraction]] = None

    def text(self) -> str:
        if self.selector == "point":
            return f"b{self.block_index}[{self.offset}]"
        if self.selector == "eta":
            return f"b{self.block_index}[all eta points]"
        return f"b{self.block_index}[all other points]"


@dataclass(frozen=True)
class GenSetDesc:
    """
    最小生成集描述

    exists_least 为 False 时 membership 为 None。
    """
    exists_least: bool
    membership: Optional[Tuple[Tuple[PointClass, EndpointFlag], ...]] = None

    def status_of(self, p: PointRef) -> Optional[EndpointFlag]:
        """点 p 的成员状态；不存在最小生成集时返回 None"""
        if not self.exists_least:
            return None
        fallback = None
        for cls, flag in self.membership:
            if cls.block_index != p.block_index:
                continue
            if cls.selector == "point" and cls.offset == p.offset:
                return flag
            if cls.selector in ("interior", "eta"):
                fallback = flag
        return fallback

    def required_points(self) -> List[str]:
        if not self.exists_least:
            return []
        return [cls.text() for cls, flag in self.membership if flag == REQUIRED]

    def excluded_points(self) -> List[str]:
        if not self.exists_least:
            return []
        return [cls.text() for cls, flag in self.membership if flag == EXCLUDED]

    def excluded_refs(self) -> List[PointRef]:
        if not self.exists_least:
            return []
        return [PointRef(cls.block_index, cls.offset)
                for cls, flag in self.membership
                if flag == EXCLUDED and cls.selector == "point"]


@dataclass(frozen=True)
class CutPos:
    """
    切分位置

    position 为 None 时切在块 block_index 之前的接合处；否则在块内部：
        Fin(n): 1..n-1，前 k 个点归左半；
        Omega: k ≥ 1，前 k 个点归左半；
        OmegaStar: k ≥ 1，最大的 k 个点归右半；
        Zeta: 任意整数 k，切在 k-1 与 k 之间；
        Eta: 切分标签（偶指数二进有理数）。
    """
    block_index: int
    position: Optional[Union[int, Fraction]] = None

    def text(self) -> str:
        if self.position is None:
            return f"before block {self.block_index}"
        return f"block {self.block_index} at {self.position}"


# ============================================================================
# 判定与提取
# ============================================================================

def has_least_generating_set(f: FamilyDesc) -> bool:
    """
    Cl_E(𝒯_F) 是否有最小生成集

    直接检查块序列（与 has_dense_interval 走不同的代码路径）。
    """
    result = not any(block.kind == BlockKind.ETA and block.mode == EtaMode.TIGHT
                     for block in f.blocks)
    if is_discrete(f):
        assert result, "discrete families always have the least generating set"
    if f.has_tight_eta():
        assert not result, "tight dense blocks never have the least generating set"
    return result


def least_generating_set(f: FamilyDesc) -> Optional[GenSetDesc]:
    """
    提取最小生成集

    Returns:
        GenSetDesc；不存在时返回 None
    """
    if not has_least_generating_set(f):
        logger.debug(f"least_generating_set({f.text()}): none (dense interval present)")
        return None

    membership: List[Tuple[PointClass, EndpointFlag]] = []
    for comp in components(f):
        if comp.eta_class:
            flag = EXCLUDED if comp.case_label == CaseLabel.III else REQUIRED
            membership.append((PointClass(comp.blocks[0], "eta"), flag))
            continue
        listed: Dict[int, int] = {}
        for ref, flag in comp.endpoint_flags:
            membership.append((PointClass(ref.block_index, "point", ref.offset), flag))
            listed[ref.block_index] = listed.get(ref.block_index, 0) + 1
        for b in comp.blocks:
            block = f.blocks[b]
            # Fin 块只有端点全部列出时才没有其余元素
            if block.kind != BlockKind.FIN or block.n > listed.get(b, 0):
                membership.append((PointClass(b, "interior"), REQUIRED))

    gs = GenSetDesc(True, tuple(membership))
    logger.debug(f"least_generating_set({f.text()}): excluded {gs.excluded_points()}")
    return gs


def minimality_witness(f: FamilyDesc) -> Dict[str, List[str]]:
    """
    每个被排除的点等于哪一侧的极限

    Returns:
        {点文本: ["lower"/"upper", ...]}
    """
    witness: Dict[str, List[str]] = {}
    last_block = len(f.blocks) - 1
    for comp in components(f):
        for ref, flag in comp.endpoint_flags:
            if flag != EXCLUDED:
                continue
            sides = []
            if ref == comp.first and ref.block_index > 0 \
                    and f.annotation(ref.block_index - 1) == Annotation.ABSORBED:
                sides.append("lower")
            if ref == comp.last and ref.block_index < last_block \
                    and f.annotation(ref.block_index) == Annotation.ABSORBED:
                sides.append("upper")
            witness[ref.text()] = sides
    return witness


# ============================================================================
# 切分
# ============================================================================

def _split_block(block: Block, position: Union[int, Fraction]) -> Tuple[Block, Block, Optional[Annotation]]:
    """块内切分，返回 (左块, 右块, 两者之间的接合注解)"""
    kind = block.kind
    if kind == BlockKind.ETA:
        if not isinstance(position, Fraction) or not is_eta_cut_tag(position):
            raise CutPositionError(f"eta cuts need an even-exponent dyadic tag, got {position}")
        return Block.eta(block.mode), Block.eta(block.mode), Annotation.MERGED
    if not isinstance(position, int) or isinstance(position, bool):
        raise CutPositionError(f"{block.text()} needs an integer cut position, got {position!r}")
    if kind == BlockKind.FIN:
        if not 1 <= position < block.n:
            raise CutPositionError(f"fin({block.n}) cut must lie in 1..{block.n - 1}, got {position}")
        return Block.fin(position), Block.fin(block.n - position), None
    if kind == BlockKind.OMEGA:
        if position < 1:
            raise CutPositionError(f"omega cut must be >= 1, got {position}")
        return Block.fin(position), Block.omega(), None
    if kind == BlockKind.OMEGA_STAR:
        if position < 1:
            raise CutPositionError(f"omega* cut must be >= 1, got {position}")
        return Block.omega_star(), Block.fin(position), None
    return Block.omega_star(), Block.omega(), None


def split_at_cut(f: FamilyDesc, c: CutPos) -> Tuple[FamilyDesc, FamilyDesc]:
    """
    在切分位置把 F 分为 (F⁻, F⁺)

    切分处的接合注解记录在两半的 edges 上。

    Raises:
        CutPositionError: 位置无效或族为重复模式
    """
    if f.repeated:
        raise CutPositionError("cuts of omega-repeated schemas are not supported")
    nblocks = len(f.blocks)
    i = c.block_index

    if c.position is None:
        if not 1 <= i < nblocks:
            raise CutPositionError(f"junction cut must lie before block 1..{nblocks - 1}, got {i}")
        edge = f.annotation(i - 1)
        lower = FamilyDesc(f.blocks[:i], f.junctions[:i - 1], edges=(f.edges[0], edge))
        upper = FamilyDesc(f.blocks[i:], f.junctions[i:], edges=(edge, f.edges[1]))
    else:
        if not 0 <= i < nblocks:
            raise CutPositionError(f"block index {i} out of range")
        left, right, edge = _split_block(f.blocks[i], c.position)
        lower = FamilyDesc(f.blocks[:i] + (left,), f.junctions[:i], edges=(f.edges[0], edge))
        upper = FamilyDesc((right,) + f.blocks[i + 1:], f.junctions[i:], edges=(edge, f.edges[1]))

    logger.debug(f"split_at_cut({f.text()}, {c.text()}) -> ({lower.text()}) | ({upper.text()})")
    return lower, upper


def check_cut_equivalence(f: FamilyDesc, c: CutPos) -> bool:
    """F 有最小生成集 ⟺ F⁻ 与 F⁺ 都有"""
    lower, upper = split_at_cut(f, c)
    whole = has_least_generating_set(f)
    halves = has_least_generating_set(lower) and has_least_generating_set(upper)
    if whole != halves:
        logger.warning(f"Cut equivalence violated for {f.text()} at {c.text()}")
    return whole == halves


def enumerate_cuts(f: FamilyDesc, limit: int = 32) -> List[CutPos]:
    """全部接合处切分加上每块的若干内部切分（至多 limit 个）"""
    if f.repeated:
        return []
    cuts: List[CutPos] = [CutPos(i) for i in range(1, len(f.blocks))]
    for i, block in enumerate(f.blocks):
        if block.kind == BlockKind.FIN:
            cuts.extend(CutPos(i, k) for k in range(1, min(block.n, limit + 1)))
        elif block.kind in (BlockKind.OMEGA, BlockKind.OMEGA_STAR):
            cuts.extend([CutPos(i, 1), CutPos(i, 2)])
        elif block.kind == BlockKind.ZETA:
            cuts.extend([CutPos(i, -1), CutPos(i, 0), CutPos(i, 1)])
        else:
            cuts.extend([CutPos(i, Fraction(1, 4)), CutPos(i, Fraction(3, 4))])
    return cuts[:limit]


def check_least_set_consistency(f: FamilyDesc) -> bool:
    """两条独立路径的一致性：has_least_generating_set(f) ⟺ ¬has_dense_interval(complete(f))"""
    return has_least_generating_set(f) == (not has_dense_interval(complete(f)))


def half_point(f: FamilyDesc, c: CutPos, p: PointRef) -> Tuple[int, PointRef]:
    """
    把 F 中的点映射到切分后所在的半边

    Returns:
        (0 表示 F⁻ / 1 表示 F⁺, 半边中的点引用)
    """
    if not point_in_family(f, p):
        raise CutPositionError(f"{p.text()} is not a point of {f.text()}")
    i = c.block_index
    if c.position is None:
        if p.block_index < i:
            return 0, p
        return 1, PointRef(p.block_index - i, p.offset)

    if p.block_index < i:
        return 0, p
    if p.block_index > i:
        return 1, PointRef(p.block_index - i, p.offset)

    block, k = f.blocks[i], c.position
    if block.kind == BlockKind.FIN:
        return (0, p) if p.offset < k else (1, PointRef(0, p.offset - k))
    if block.kind == BlockKind.OMEGA:
        return (0, p) if p.offset < k else (1, PointRef(0, p.offset - k))
    if block.kind == BlockKind.OMEGA_STAR:
        # 右半是 fin(k)，偏移 -(k-1)..0 依次对应 0..k-1
        if p.offset <= -k:
            return 0, PointRef(i, p.offset + k)
        return 1, PointRef(0, p.offset + k - 1)
    if block.kind == BlockKind.ZETA:
        return (0, PointRef(i, p.offset - k + 1)) if p.offset < k else (1, PointRef(0, p.offset - k))
    return (0, p) if p.offset < k else (1, PointRef(0, p.offset))

