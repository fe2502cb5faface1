"""
具体实现预言机：把族描述实现为 ℕ 的下标子集，按有限深度核对闭包判定

几何布局：
    下标 i 带一个键 (x, s)，x 为有理数位置，s ∈ {-1, 0, +1}；
    点 p 对应集合 J_p = {i : key(i) < (g(p), 0)}（字典序）。
    偶数下标承载非二进有理位置（三进分母）的稠密键，在每个块区间内稠密；
    奇数下标是见证：split 接合处的 (β, 0)，Eta(gapped) 点两侧的 (g, -1)/(g, +1)，
    重复模式副本之间接缝处的 (S, 0)。
    块 i 占据区间 [lo, lo + w]，w 为 1（两侧都被吸收的 fin(1) 为 0）；
    重复模式第 c 个副本按 2^-c 缩放，所有副本收敛到上确界 X。

切分（cut）与键同型：点 → (g, 0)，上极限 → (x, -2)，下极限 → (x, +2)。
两个切分对应同一集合 ⟺ 它们之间没有键。
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .completion import CaseLabel, EndpointFlag, complete, component_of
from .errors import CandidateError
from .family_core import (
    Annotation,
    BlockKind,
    CardinalTag,
    EtaMode,
    FamilyDesc,
    PointRef,
    block_sides,
    concatenate,
    dyadic_exponent,
    is_eta_cut_tag,
    is_eta_point_tag,
    point_in_family,
)
from .genset import GenSetDesc, check_cut_equivalence, enumerate_cuts, least_generating_set

logger = logging.getLogger(__name__)

DEFAULT_CAPACITY = 512

Key = Tuple[Fraction, int]
Cut = Tuple[Fraction, int]

UPPER = -2
LOWER = 2


class TriBool(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


# ============================================================================
# 候选与模式
# ============================================================================

class CandidateKind(str, Enum):
    POINT = "point"
    UPPER_LIMIT = "upper_limit"
    LOWER_LIMIT = "lower_limit"
    ETA_CUT = "eta_cut"
    INDEX_SET = "index_set"
    REPEATED_SUPREMUM = "repeated_supremum"


@dataclass(frozen=True)
class CandidateDesc:
    """
    候选极限集 J 的描述

    POINT: 族中的点；UPPER_LIMIT / LOWER_LIMIT: 块开放端的极限，
    offset 给出时表示 Eta(gapped) 中某点下方之并 / 上方之交；
    ETA_CUT: Eta 块内切分标签处的集合；INDEX_SET: 显式有限下标集；
    REPEATED_SUPREMUM: 重复模式全部副本之并。
    """
    kind: CandidateKind
    block_index: Optional[int] = None
    offset: Optional[Union[int, Fraction]] = None
    copy: int = 0
    indices: Optional[FrozenSet[int]] = None

    @classmethod
    def point(cls, p: PointRef) -> 'CandidateDesc':
        return cls(CandidateKind.POINT, p.block_index, p.offset, p.copy)

    @classmethod
    def upper(cls, block_index: int, copy: int = 0,
              offset: Optional[Fraction] = None) -> 'CandidateDesc':
        return cls(CandidateKind.UPPER_LIMIT, block_index, offset, copy)

    @classmethod
    def lower(cls, block_index: int, copy: int = 0,
              offset: Optional[Fraction] = None) -> 'CandidateDesc':
        return cls(CandidateKind.LOWER_LIMIT, block_index, offset, copy)

    @classmethod
    def eta_cut(cls, block_index: int, tag: Fraction, copy: int = 0) -> 'CandidateDesc':
        return cls(CandidateKind.ETA_CUT, block_index, Fraction(tag), copy)

    @classmethod
    def index_set(cls, indices: Iterable[int]) -> 'CandidateDesc':
        return cls(CandidateKind.INDEX_SET, indices=frozenset(int(i) for i in indices))

    @classmethod
    def supremum(cls) -> 'CandidateDesc':
        return cls(CandidateKind.REPEATED_SUPREMUM)

    def text(self) -> str:
        if self.kind == CandidateKind.INDEX_SET:
            return "{" + ",".join(str(i) for i in sorted(self.indices)) + "}"
        if self.kind == CandidateKind.REPEATED_SUPREMUM:
            return "sup(all copies)"
        suffix = f"@{self.copy}" if self.copy else ""
        where = f"b{self.block_index}" + (f"[{self.offset}]" if self.offset is not None else "")
        return f"{self.kind.value}({where}{suffix})"


@dataclass(frozen=True)
class PatternFormula:
    """模式公式：matches(J) ⟺ J ∩ probe = trace"""
    probe: FrozenSet[int]
    trace: FrozenSet[int]

    def __post_init__(self):
        if not self.trace <= self.probe:
            raise ValueError("trace must be a subset of the probe")

    def matches(self, indices: Iterable[int]) -> bool:
        return (frozenset(indices) & self.probe) == self.trace

    def complement(self) -> 'PatternFormula':
        return PatternFormula(self.probe, self.probe - self.trace)

    def to_dict(self) -> dict:
        return {"probe": sorted(self.probe), "trace": sorted(self.trace)}


@dataclass(frozen=True)
class CheckRow:
    """oracle verify 结果表的一行"""
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


# ============================================================================
# 布局
# ============================================================================

@dataclass(frozen=True)
class Region:
    """第 copy 个副本中块 block_index 占据的区间 [lo, lo + width]"""
    block_index: int
    copy: int
    lo: Fraction
    width: Fraction

    @property
    def hi(self) -> Fraction:
        return self.lo + self.width


def _level_offsets(level: int) -> List[Fraction]:
    """第 level 层稠密键的相对位置：m / (3·2^level)，m 为奇数且不被 3 整除"""
    if level == 0:
        return [Fraction(1, 3), Fraction(2, 3)]
    den = 3 * 2 ** level
    return [Fraction(m, den) for m in range(1, den, 2) if m % 3]


def _points_of_exponent(e: int) -> List[Fraction]:
    return [Fraction(m, 2 ** e) for m in range(1, 2 ** e, 2)]


class RealizationLayout:
    """
    一个族的键布局（所有视图共享）

    keys[i] 为下标 i 的键；超出已生成范围的下标为 None，不属于任何 J。
    """

    def __init__(self, family: FamilyDesc, seed: int = 0, capacity: int = DEFAULT_CAPACITY):
        if capacity < 16:
            raise ValueError("capacity must be at least 16")
        self.family = family
        self.seed = seed
        self.capacity = capacity
        self.repeated = family.repeated

        self.widths = [self._block_width(i) for i in range(len(family.blocks))]
        self.starts = []
        pos = Fraction(1)
        for w in self.widths:
            self.starts.append(pos)
            pos += w
        self.span = pos - 1
        # 块区间覆盖 [1, top]；重复模式的 top 即上确界 X
        self.top = 1 + (2 * self.span if self.repeated else self.span)
        self.padding: Tuple[Key, ...] = (
            (Fraction(1, 3), 0), (Fraction(2, 3), 0),
            (self.top + Fraction(1, 3), 0), (self.top + Fraction(2, 3), 0),
        )

        self.keys: List[Optional[Key]] = [None] * capacity
        rng = np.random.default_rng(seed)
        self._fill_dense(rng)
        self._fill_witnesses(rng)
        self.index_of = {k: i for i, k in enumerate(self.keys) if k is not None}
        logger.debug(f"Layout for {family.text()}: span {self.span}, top {self.top}, "
                     f"{len(self.index_of)} keys within capacity {capacity}")

    # ------------------------------------------------------------------
    # 几何
    # ------------------------------------------------------------------

    def _absorbed_left(self, i: int) -> bool:
        """块 i 的首点是否落在左边界上（被左邻的开放端吸收）"""
        f = self.family
        return (i > 0 and f.annotation(i - 1) == Annotation.ABSORBED
                and not block_sides(f.blocks[i])[0])

    def _absorbed_right(self, i: int) -> bool:
        f = self.family
        return (i < len(f.blocks) - 1 and f.annotation(i) == Annotation.ABSORBED
                and not block_sides(f.blocks[i])[1])

    def _block_width(self, i: int) -> Fraction:
        block = self.family.blocks[i]
        if block.kind == BlockKind.FIN and block.n == 1 \
                and self._absorbed_left(i) and self._absorbed_right(i):
            return Fraction(0)
        return Fraction(1)

    def copy_start(self, c: int) -> Fraction:
        if c == 0:
            return Fraction(1)
        return 1 + self.span * (2 - Fraction(1, 2 ** (c - 1)))

    def region(self, i: int, c: int = 0) -> Region:
        scale = Fraction(1, 2 ** c)
        lo = self.copy_start(c) + scale * (self.starts[i] - 1)
        return Region(i, c, lo, scale * self.widths[i])

    def regions_between(self, low: Fraction, high: Fraction) -> Iterator[Region]:
        """与闭区间 [low, high] 相交的全部区域；重复模式要求 low < X 或 high < X"""
        nblocks = len(self.family.blocks)
        if not self.repeated:
            for i in range(nblocks):
                reg = self.region(i)
                if reg.lo <= high and reg.hi >= low:
                    yield reg
            return
        if low >= self.top:
            return
        c = 0
        while self.copy_start(c) <= high:
            if self.copy_start(c + 1) >= low:
                for i in range(nblocks):
                    reg = self.region(i, c)
                    if reg.lo <= high and reg.hi >= low:
                        yield reg
            c += 1
            # high ≥ X 时副本无穷多，只取前若干个
            if high >= self.top and c > 64:
                break

    def local_position(self, i: int, offset: Union[int, Fraction]) -> Fraction:
        """点在块区间内的相对位置 t ∈ [0, 1]"""
        block = self.family.blocks[i]
        kind = block.kind
        if kind == BlockKind.ETA:
            return Fraction(offset)
        if kind == BlockKind.FIN:
            left, right = self._absorbed_left(i), self._absorbed_right(i)
            if offset == 0 and left:
                return Fraction(0)
            if offset == block.n - 1 and right:
                return Fraction(1)
            interior = block.n - int(left) - int(right)
            m = interior.bit_length()
            return Fraction(offset - int(left) + 1, 2 ** m)
        if kind == BlockKind.OMEGA:
            if self._absorbed_left(i):
                return Fraction(0) if offset == 0 else 1 - Fraction(1, 2 ** offset)
            return 1 - Fraction(1, 2 ** (offset + 1))
        if kind == BlockKind.OMEGA_STAR:
            if offset == 0 and self._absorbed_right(i):
                return Fraction(1)
            return Fraction(1, 2 ** (-offset + 1))
        if offset >= 0:
            return 1 - Fraction(1, 2 ** (offset + 1))
        return Fraction(1, 2 ** (-offset + 1))

    def _offset_at(self, i: int, t: Fraction) -> Optional[Union[int, Fraction]]:
        """local_position 的逆；t 处没有点时返回 None"""
        block = self.family.blocks[i]
        kind = block.kind
        if kind == BlockKind.ETA:
            return t if is_eta_point_tag(t) else None
        if kind == BlockKind.FIN:
            for k in range(block.n):
                if self.local_position(i, k) == t:
                    return k
            return None
        if t == 0:
            return 0 if kind == BlockKind.OMEGA and self._absorbed_left(i) else None
        if t == 1:
            return 0 if kind == BlockKind.OMEGA_STAR and self._absorbed_right(i) else None
        low_e, high_e = dyadic_exponent(t), dyadic_exponent(1 - t)
        if low_e is None:
            return None
        if kind == BlockKind.OMEGA:
            if t.numerator != t.denominator - 1:
                return None
            k = high_e - (0 if self._absorbed_left(i) else 1)
            return k if k >= 0 and self.local_position(i, k) == t else None
        if kind == BlockKind.OMEGA_STAR:
            if t.numerator != 1:
                return None
            k = -(low_e - 1)
            return k if k <= 0 and self.local_position(i, k) == t else None
        if t.numerator == t.denominator - 1 and t >= Fraction(1, 2):
            return high_e - 1
        if t.numerator == 1:
            return -(low_e - 1)
        return None

    def point_cut(self, p: PointRef) -> Cut:
        if not point_in_family(self.family, p):
            raise CandidateError(f"{p.text()} is not a point of {self.family.text()}")
        reg = self.region(p.block_index, p.copy)
        return (reg.lo + reg.width * self.local_position(p.block_index, p.offset), 0)

    def points_at(self, x: Fraction) -> List[PointRef]:
        """位置恰为 x 的全部点"""
        found = []
        for reg in self.regions_between(x, x):
            if reg.width == 0:
                found.append(PointRef(reg.block_index, 0, reg.copy))
                continue
            offset = self._offset_at(reg.block_index, (x - reg.lo) / reg.width)
            if offset is not None:
                found.append(PointRef(reg.block_index, offset, reg.copy))
        return found

    # ------------------------------------------------------------------
    # 键
    # ------------------------------------------------------------------

    def _fill_dense(self, rng: np.random.Generator) -> None:
        slots = list(range(0, self.capacity, 2))
        nblocks = len(self.family.blocks)
        r = 0
        while slots:
            batch: List[Key] = []
            if r == 0:
                batch.extend(self.padding)
            copies = range(r + 1) if self.repeated else (0,)
            for c in copies:
                offsets = _level_offsets(r - c)
                for i in range(nblocks):
                    reg = self.region(i, c)
                    if reg.width:
                        batch.extend((reg.lo + reg.width * u, 0) for u in offsets)
            for j in rng.permutation(len(batch)):
                if not slots:
                    break
                self.keys[slots.pop(0)] = batch[j]
            r += 1

    def _fill_witnesses(self, rng: np.random.Generator) -> None:
        slots = list(range(1, self.capacity, 2))
        f = self.family
        gapped = [i for i, b in enumerate(f.blocks) if b.is_gapped_eta]
        endless = self.repeated or bool(gapped)
        r = 0
        while slots:
            units: List[Tuple[Key, ...]] = []
            if r == 0 or self.repeated:
                c = r
                for j, junction in enumerate(f.junctions):
                    if junction.annotation == Annotation.SPLIT:
                        units.append(((self.region(j + 1, c).lo, 0),))
                if self.repeated:
                    units.append(((self.copy_start(c + 1), 0),))
            copies = range(r + 1) if self.repeated else (0,)
            for c in copies:
                e = 2 * (r - c) + 1
                for i in gapped:
                    reg = self.region(i, c)
                    for q in _points_of_exponent(e):
                        g = reg.lo + reg.width * q
                        units.append(((g, -1), (g, 1)))
            for j in rng.permutation(len(units)):
                for key in units[j]:
                    if slots:
                        self.keys[slots.pop(0)] = key
            r += 1
            if not endless:
                break

    def witness_signs_at(self, x: Fraction) -> FrozenSet[int]:
        """位置 x 处（概念上无限布局中）全部见证键的符号"""
        signs = set()
        f = self.family
        for reg in self.regions_between(x, x):
            i = reg.block_index
            if reg.lo == x and i > 0 and f.annotation(i - 1) == Annotation.SPLIT:
                signs.add(0)
            if f.blocks[i].is_gapped_eta and reg.lo < x < reg.hi \
                    and is_eta_point_tag((x - reg.lo) / reg.width):
                signs.update((-1, 1))
        if self.repeated and 1 < x < self.top:
            c = 1
            while self.copy_start(c) < x:
                c += 1
            if self.copy_start(c) == x:
                signs.add(0)
        return frozenset(signs)

    def same_set(self, c1: Cut, c2: Cut) -> bool:
        """两个切分对应的集合是否相同：[min, max) 中没有任何键"""
        lo, hi = sorted((c1, c2))
        if lo == hi:
            return True
        if lo[0] < hi[0]:
            if max(lo[0], Fraction(1)) < min(hi[0], self.top):
                return False
            if any(lo <= pad < hi for pad in self.padding):
                return False
            xs = (lo[0], hi[0])
        else:
            xs = (lo[0],)
        return not any(lo <= (x, s) < hi for x in xs for s in self.witness_signs_at(x))

    def indices_below(self, cut: Cut, limit: Optional[int] = None) -> FrozenSet[int]:
        """J = {i < limit : key(i) < cut}"""
        limit = self.capacity if limit is None else min(limit, self.capacity)
        return frozenset(i for i in range(limit)
                         if self.keys[i] is not None and self.keys[i] < cut)

    def finite_set_as_cut(self, indices: FrozenSet[int]) -> Optional[Cut]:
        """有限下标集若等于某个切分的集合（只可能是地板填充键的前缀），返回该切分"""
        floor = sorted((self.keys[i], i) for i in range(self.capacity)
                       if self.keys[i] is not None and self.keys[i][0] < 1)
        prefix_cuts = [(Fraction(0), 0), (Fraction(1, 2), 0), (Fraction(1), 0)]
        for n, cut in enumerate(prefix_cuts):
            if indices == frozenset(i for _, i in floor[:n]):
                return cut
        return None

    # ------------------------------------------------------------------
    # 候选解析
    # ------------------------------------------------------------------

    def _check_region(self, cand: CandidateDesc) -> Region:
        f = self.family
        if cand.block_index is None or not 0 <= cand.block_index < len(f.blocks):
            raise CandidateError(f"candidate {cand.text()} names no block of {f.text()}")
        if cand.copy < 0 or (cand.copy and not self.repeated):
            raise CandidateError(f"candidate {cand.text()} names an invalid copy")
        return self.region(cand.block_index, cand.copy)

    def resolve(self, cand: CandidateDesc) -> Union[Cut, FrozenSet[int]]:
        """候选 → 切分；无法表示为切分的显式下标集原样返回"""
        kind = cand.kind
        if kind == CandidateKind.INDEX_SET:
            if cand.indices is None or any(i < 0 for i in cand.indices):
                raise CandidateError("index set candidates need non-negative indices")
            cut = self.finite_set_as_cut(cand.indices)
            return cand.indices if cut is None else cut
        if kind == CandidateKind.REPEATED_SUPREMUM:
            if not self.repeated:
                raise CandidateError("only repeated schemas have a supremum of copies")
            return (self.top, UPPER)
        if kind == CandidateKind.POINT:
            return self.point_cut(PointRef(cand.block_index, cand.offset, cand.copy))

        reg = self._check_region(cand)
        block = self.family.blocks[cand.block_index]
        if kind == CandidateKind.ETA_CUT:
            if block.kind != BlockKind.ETA or cand.offset is None or not is_eta_cut_tag(cand.offset):
                raise CandidateError(f"{cand.text()} is not an eta cut of {block.text()}")
            return (reg.lo + reg.width * Fraction(cand.offset), 0)

        side = UPPER if kind == CandidateKind.UPPER_LIMIT else LOWER
        if cand.offset is not None:
            if not block.is_gapped_eta or not is_eta_point_tag(Fraction(cand.offset)):
                raise CandidateError(f"{cand.text()}: per-point limits exist only in gapped eta blocks")
            return (reg.lo + reg.width * Fraction(cand.offset), side)
        left_open, right_open = block_sides(block)
        if kind == CandidateKind.UPPER_LIMIT:
            if not right_open:
                raise CandidateError(f"{block.text()} has no open right side")
            return (reg.hi, UPPER)
        if not left_open:
            raise CandidateError(f"{block.text()} has no open left side")
        return (reg.lo, LOWER)


# ============================================================================
# 实现（布局 + 视图）
# ============================================================================

@dataclass(frozen=True)
class Realization:
    """
    族的具体实现：共享布局上的一个成员视图

    Attributes:
        layout: 键布局
        active: 参与的块下标（重复模式对所有副本生效）
        without: 去掉的有限个点
        points_only: 给出时成员恰为这些点（有限子族）
        extras: 额外加入的成员（切分形式）
    """
    layout: RealizationLayout = field(compare=False)
    active: FrozenSet[int]
    without: FrozenSet[PointRef] = frozenset()
    points_only: Optional[FrozenSet[PointRef]] = None
    extras: Tuple[Cut, ...] = ()

    @property
    def family(self) -> FamilyDesc:
        return self.layout.family

    @property
    def seed(self) -> int:
        return self.layout.seed

    def restricted(self, blocks: Iterable[int]) -> 'Realization':
        return replace(self, active=frozenset(blocks) & self.active)

    def without_points(self, points: Iterable[PointRef]) -> 'Realization':
        return replace(self, without=self.without | frozenset(points))

    def finite_subfamily(self, points: Iterable[PointRef]) -> 'Realization':
        chosen = frozenset(p for p in points if self.contains(p))
        return replace(self, points_only=chosen)

    def with_extras(self, cands: Iterable[CandidateDesc]) -> 'Realization':
        cuts = []
        for cand in cands:
            target = self.layout.resolve(cand)
            if not isinstance(target, tuple):
                raise CandidateError(f"{cand.text()} is not a set of the realized closure")
            cuts.append(target)
        return replace(self, extras=self.extras + tuple(cuts))

    def union(self, other: 'Realization') -> 'Realization':
        if other.layout is not self.layout:
            raise ValueError("realizations must share a layout")
        if self.points_only is not None or other.points_only is not None:
            raise ValueError("union is defined for block-aligned views")
        return Realization(self.layout, self.active | other.active,
                           self.without & other.without, None, self.extras + other.extras)

    def contains(self, p: PointRef) -> bool:
        if not point_in_family(self.family, p):
            return False
        if self.points_only is not None:
            return p in self.points_only
        return p.block_index in self.active and p not in self.without

    def index_set(self, cand: CandidateDesc, limit: Optional[int] = None) -> FrozenSet[int]:
        """候选集合在 [0, limit) 中的下标"""
        target = self.layout.resolve(cand)
        if isinstance(target, tuple):
            return self.layout.indices_below(target, limit)
        bound = self.layout.capacity if limit is None else limit
        return frozenset(i for i in target if i < bound)

    # ------------------------------------------------------------------
    # 成员与极限
    # ------------------------------------------------------------------

    def _equals_member(self, cut: Cut) -> bool:
        layout = self.layout
        if self.points_only is not None:
            candidates = self.points_only
        else:
            candidates = layout.points_at(cut[0])
        for p in candidates:
            if self.contains(p) and layout.same_set(layout.point_cut(p), cut):
                return True
        return any(layout.same_set(cut, extra) for extra in self.extras)

    def _region_members(self, reg: Region, a: Cut, b: Cut) -> Optional[List[PointRef]]:
        """区域内切分落在 (a, b] 的点；无限多时返回 None"""
        layout = self.layout
        i, c = reg.block_index, reg.copy
        block = self.family.blocks[i]
        A, B, lo, hi = a[0], b[0], reg.lo, reg.hi
        found: List[PointRef] = []

        def take(offset):
            g = lo + reg.width * layout.local_position(i, offset)
            if a < (g, 0) <= b:
                found.append(PointRef(i, offset, c))
            return g

        kind = block.kind
        if kind == BlockKind.FIN:
            for k in range(block.n):
                take(k)
            return found
        if kind == BlockKind.ETA:
            if max(A, lo) < min(B, hi):
                return None
            if A == B and lo < A < hi:
                t = (A - lo) / reg.width
                if is_eta_point_tag(t):
                    take(t)
            return found

        rising = kind in (BlockKind.OMEGA, BlockKind.ZETA)
        falling = kind in (BlockKind.OMEGA_STAR, BlockKind.ZETA)
        if (rising and A < hi <= B) or (falling and A <= lo < B):
            return None
        # 以下两个循环分别在 B < hi、A > lo 时终止
        if rising and A < hi:
            k = 0
            while take(k) <= B:
                k += 1
        if falling and B > lo:
            k = -1 if kind == BlockKind.ZETA else 0
            while take(k) >= A:
                k -= 1
        return found

    def members_between(self, a: Cut, b: Cut) -> Optional[List[PointRef]]:
        """切分落在 (a, b] 中的成员；无限多时返回 None"""
        if self.points_only is not None:
            cuts = [(p, self.layout.point_cut(p)) for p in self.points_only]
            return sorted((p for p, cut in cuts if a < cut <= b), key=lambda p: p.text())
        if not self.active:
            return []
        layout = self.layout
        if layout.repeated and a[0] < layout.top <= b[0]:
            return None
        found: List[PointRef] = []
        for reg in layout.regions_between(a[0], b[0]):
            if reg.block_index not in self.active:
                continue
            part = self._region_members(reg, a, b)
            if part is None:
                return None
            found.extend(p for p in part if p not in self.without)
        return found

    def _limits_of_region(self, reg: Region, xs: Sequence[Fraction]) -> List[Cut]:
        block = self.family.blocks[reg.block_index]
        left_open, right_open = block_sides(block)
        cuts = []
        if left_open:
            cuts.append((reg.lo, LOWER))
        if right_open:
            cuts.append((reg.hi, UPPER))
        if block.kind == BlockKind.ETA:
            cuts.extend((x, side) for x in xs if reg.lo < x < reg.hi for side in (UPPER, LOWER))
        return cuts

    def limit_cuts_near(self, x: Fraction) -> List[Cut]:
        """位置 x 附近（可能与 x 处切分同集合）的全部极限切分"""
        if self.points_only is not None or not self.active:
            return []
        layout = self.layout
        regions = list(layout.regions_between(x, x))
        if x <= 1:
            regions.append(layout.region(min(self.active)))
        cuts = []
        if x >= layout.top:
            if layout.repeated:
                cuts.append((layout.top, UPPER))
            else:
                regions.append(layout.region(max(self.active)))
        for reg in regions:
            if reg.block_index in self.active:
                cuts.extend(self._limits_of_region(reg, (x,)))
        return cuts

    def is_limit(self, cut: Cut) -> bool:
        return any(self.layout.same_set(cut, lim) for lim in self.limit_cuts_near(cut[0]))

    def limits_between(self, a: Cut, b: Cut) -> Optional[List[Cut]]:
        """落在 (a, b] 中的极限切分；Eta 内部区间非空时返回 None（无限多）"""
        if self.points_only is not None or not self.active:
            return []
        layout = self.layout
        cuts: List[Cut] = []
        if layout.repeated and a < (layout.top, UPPER) <= b:
            cuts.append((layout.top, UPPER))
        for reg in layout.regions_between(a[0], b[0]):
            if reg.block_index not in self.active:
                continue
            if self.family.blocks[reg.block_index].kind == BlockKind.ETA \
                    and max(a[0], reg.lo) < min(b[0], reg.hi):
                return None
            cuts.extend(cut for cut in self._limits_of_region(reg, (a[0], b[0])) if a < cut <= b)
        return cuts


def realize(f: FamilyDesc, seed: int = 0, capacity: int = DEFAULT_CAPACITY) -> Realization:
    """
    实现族 F：J_p ⊂ J_q（p < q）且差集无限；gapped 点带私有见证

    Args:
        f: 族描述
        seed: 键顺序的随机种子
        capacity: 预先生成的下标个数

    Returns:
        全体成员视图
    """
    layout = RealizationLayout(f, seed, capacity)
    return Realization(layout, frozenset(range(len(f.blocks))))


def realize_pair(fa: FamilyDesc, fb: FamilyDesc, seed: int = 0,
                 capacity: int = DEFAULT_CAPACITY) -> Tuple[Realization, Realization]:
    """
    在同一布局（fa 与 fb 以缺省接合拼接）上实现两个族

    Returns:
        (fa 的视图, fb 的视图)，共享偶数下标的稠密键
    """
    joined = realize(concatenate(fa, fb), seed, capacity)
    na = len(fa.blocks)
    return (joined.restricted(range(na)),
            joined.restricted(range(na, na + len(fb.blocks))))


# ============================================================================
# 闭包判定
# ============================================================================

_NEG: Cut = (Fraction(-1), 0)


def _probe_bounds(layout: RealizationLayout, target, depth: int) -> Optional[Tuple[Cut, Cut]]:
    """最难探针 J₀ = [0, depth) 下目标迹对应的切分区间 (a, b]；迹不是键下集时返回 None"""
    pos: Cut = (layout.top + 2, 0)
    limit = min(depth, layout.capacity)
    keys = layout.keys
    if isinstance(target, tuple):
        inside = [keys[i] for i in range(limit) if keys[i] is not None and keys[i] < target]
        outside = [keys[i] for i in range(limit) if keys[i] is not None and not keys[i] < target]
    else:
        trace = {i for i in target if i < limit}
        if any(keys[i] is None for i in trace):
            return None
        inside = [keys[i] for i in trace]
        outside = [keys[i] for i in range(limit) if i not in trace and keys[i] is not None]
    a = max(inside, default=_NEG)
    b = min(outside, default=pos)
    if a >= b:
        return None
    return a, b


def in_closure(r: Realization, cand: CandidateDesc, depth: int) -> TriBool:
    """
    候选 J 是否属于实现族的 E-闭包

    只检查最难的探针 J₀ = [0, depth)：迹相同的成员须有无限多个。
    无限时再核对 J 是否确为某个极限；否则如实返回 unknown。

    Raises:
        CandidateError: 候选描述无效
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    layout = r.layout
    target = layout.resolve(cand)
    cut = target if isinstance(target, tuple) else None

    if cut is not None and r._equals_member(cut):
        return TriBool.YES
    bounds = _probe_bounds(layout, target, depth)
    if bounds is None:
        return TriBool.NO
    if r.members_between(*bounds) is not None:
        return TriBool.NO
    if cut is not None and r.is_limit(cut):
        return TriBool.YES
    logger.debug(f"in_closure({cand.text()}) undecided at depth {depth}")
    return TriBool.UNKNOWN


def limit_candidates(r: Realization, copies: int = 3) -> List[CandidateDesc]:
    """按块对齐的极限候选：开放端极限、gapped 点两侧极限、Eta 切分样本、重复上确界"""
    f = r.family
    cands: List[CandidateDesc] = []
    for c in range(copies if f.repeated else 1):
        for i in sorted(r.active):
            block = f.blocks[i]
            left_open, right_open = block_sides(block)
            if left_open:
                cands.append(CandidateDesc.lower(i, c))
            if block.kind == BlockKind.ETA:
                cands.extend(CandidateDesc.eta_cut(i, Fraction(tag, 4), c) for tag in (1, 3))
                if block.mode == EtaMode.GAPPED:
                    for q in _points_of_exponent(1) + _points_of_exponent(3):
                        cands.append(CandidateDesc.upper(i, c, q))
                        cands.append(CandidateDesc.lower(i, c, q))
            if right_open:
                cands.append(CandidateDesc.upper(i, c))
    if f.repeated and r.active:
        cands.append(CandidateDesc.supremum())
    return cands


def closure_enumerate(r: Realization, depth: int) -> Tuple[List[CandidateDesc], Optional[str]]:
    """
    枚举被接受的新极限（两两不同、且不等于成员）

    Returns:
        (候选列表, 标记)：标记为 'continuum'（有 Eta 块）、'aleph0'（重复模式）或 None
    """
    layout = r.layout
    accepted: List[CandidateDesc] = []
    seen: List[Cut] = []
    for cand in limit_candidates(r):
        cut = layout.resolve(cand)
        if r._equals_member(cut) or any(layout.same_set(cut, s) for s in seen):
            continue
        if in_closure(r, cand, depth) == TriBool.YES:
            accepted.append(cand)
            seen.append(cut)

    marker = None
    if any(r.family.blocks[i].kind == BlockKind.ETA for i in r.active):
        marker = "continuum"
    elif r.family.repeated and r.active:
        marker = "aleph0"
    logger.debug(f"closure_enumerate({r.family.text()}, depth={depth}): "
                 f"{len(accepted)} new limits, marker {marker}")
    return accepted, marker


def isolating_pattern(r: Realization, p: PointRef, max_depth: int) -> Optional[PatternFormula]:
    """
    找出只被 J_p 匹配（在实现闭包中）的模式公式

    探针取 p 切分两侧最近的键下标；这是 max_depth 以内最强的约束。

    Returns:
        PatternFormula；p 不是孤立点时返回 None
    """
    if not r.contains(p):
        raise CandidateError(f"{p.text()} is not a member of the realization")
    layout = r.layout
    cut = layout.point_cut(p)
    limit = min(max_depth, layout.capacity)
    below = above = None
    for i in range(limit):
        key = layout.keys[i]
        if key is None:
            continue
        if key < cut:
            if below is None or key > layout.keys[below]:
                below = i
        elif above is None or key < layout.keys[above]:
            above = i
    a = layout.keys[below] if below is not None else _NEG
    b = layout.keys[above] if above is not None else (layout.top + 2, 0)

    members = r.members_between(a, b)
    if members != [p]:
        return None
    limits = r.limits_between(a, b)
    if limits is None or any(not layout.same_set(lim, cut) for lim in limits):
        return None
    probe = frozenset(i for i in (below, above) if i is not None)
    trace = frozenset({below}) if below is not None else frozenset()
    return PatternFormula(probe, trace)


def separating_patterns(r: Realization, p: PointRef, q: PointRef) -> Tuple[PatternFormula, PatternFormula]:
    """
    互补的一对模式：前者匹配 J_p，后者匹配 J_q，二者划分全体集合

    Raises:
        CandidateError: p 与 q 对应同一集合
    """
    layout = r.layout
    cp, cq = layout.point_cut(p), layout.point_cut(q)
    lo, hi = sorted((cp, cq))
    for i, key in enumerate(layout.keys):
        if key is not None and lo <= key < hi:
            probe = frozenset({i})
            pattern = PatternFormula(probe, probe if key < cp else frozenset())
            return pattern, pattern.complement()
    raise CandidateError(f"{p.text()} and {q.text()} are not separated within capacity")


# ============================================================================
# 闭包算子定律
# ============================================================================

def sample_points(r: Realization, limit: int = 24) -> List[PointRef]:
    """浅层样本点：Fin 前 7 个，omega 0..2，omega* 0..-2，zeta -2..2，Eta 指数 1 与 3 的点"""
    f = r.family
    points: List[PointRef] = []
    for i in sorted(r.active):
        block = f.blocks[i]
        if block.kind == BlockKind.FIN:
            offsets = list(range(min(block.n, 7)))
        elif block.kind == BlockKind.OMEGA:
            offsets = [0, 1, 2]
        elif block.kind == BlockKind.OMEGA_STAR:
            offsets = [0, -1, -2]
        elif block.kind == BlockKind.ZETA:
            offsets = [-2, -1, 0, 1, 2]
        else:
            offsets = _points_of_exponent(1) + _points_of_exponent(3)
        points.extend(PointRef(i, k) for k in offsets)
    return [p for p in points if r.contains(p)][:limit]


def _accepted(r: Realization, cand: CandidateDesc, depth: int) -> bool:
    return in_closure(r, cand, depth) == TriBool.YES


def check_additivity(a: Realization, b: Realization, depth: int) -> bool:
    """Cl(A ∪ B) = Cl(A) ∪ Cl(B)：在并的全部候选（极限与样本点）上逐一比较"""
    union = a.union(b)
    cands = limit_candidates(union) + [CandidateDesc.point(p) for p in sample_points(union)]
    for cand in cands:
        left = _accepted(union, cand, depth)
        right = _accepted(a, cand, depth) or _accepted(b, cand, depth)
        if left != right:
            logger.warning(f"Additivity fails at {cand.text()}: union={left}, parts={right}")
            return False
    return True


def check_exchange(r: Realization, t1: CandidateDesc, t2: CandidateDesc, depth: int) -> bool:
    """T₁ ∈ Cl(𝒯 ∪ {T₂}) ∖ Cl(𝒯) ⟹ T₂ ∈ Cl(𝒯 ∪ {T₁})；前件不成立时为真"""
    antecedent = (in_closure(r.with_extras([t2]), t1, depth) == TriBool.YES
                  and in_closure(r, t1, depth) == TriBool.NO)
    if not antecedent:
        return True
    return in_closure(r.with_extras([t1]), t2, depth) == TriBool.YES


def check_monotone_extensive(r: Realization, depth: int) -> bool:
    """外延性：成员都在闭包中；单调性：每个单块子视图的闭包含于整体闭包"""
    for p in sample_points(r):
        if not _accepted(r, CandidateDesc.point(p), depth):
            logger.warning(f"Extensivity fails at {p.text()}")
            return False
    if len(r.active) < 2:
        return True
    for i in sorted(r.active):
        sub = r.restricted([i])
        for cand in limit_candidates(sub):
            if _accepted(sub, cand, depth) and not _accepted(r, cand, depth):
                logger.warning(f"Monotonicity fails at {cand.text()} (block {i})")
                return False
    return True


def check_intersection_closed(r: Realization, depth: int) -> bool:
    """
    块对齐闭集的交仍闭：Cl(A ∩ B) ⊆ Cl(A) ∩ Cl(B)

    A、B 取有重叠的前缀与后缀；交中额外的有限个极限不产生新的极限。
    """
    blocks = sorted(r.active)
    for k in range(len(blocks)):
        first, second = r.restricted(blocks[:k + 1]), r.restricted(blocks[k:])
        meet = r.restricted([blocks[k]])
        cands = limit_candidates(meet) + [CandidateDesc.point(p) for p in sample_points(meet)]
        for cand in cands:
            if _accepted(meet, cand, depth) and not (
                    _accepted(first, cand, depth) and _accepted(second, cand, depth)):
                logger.warning(f"Intersection closure fails at {cand.text()}")
                return False
    return True


def check_finite_character(r: Realization, cand: CandidateDesc, depth: int) -> bool:
    """被接受的新极限不属于任何有限子族的闭包"""
    cut = r.layout.resolve(cand)
    if not isinstance(cut, tuple) or r._equals_member(cut) or not _accepted(r, cand, depth):
        return True
    finite = r.finite_subfamily(sample_points(r, 8))
    return in_closure(finite, cand, depth) == TriBool.NO


def check_t0(r: Realization, p: PointRef, q: PointRef, depth: int = 64) -> bool:
    """开集 F ∖ Cl({p}) 含 q 而不含 p"""
    single = r.finite_subfamily([p])
    return (in_closure(single, CandidateDesc.point(p), depth) == TriBool.YES
            and in_closure(single, CandidateDesc.point(q), depth) == TriBool.NO)


# ============================================================================
# 整体核对
# ============================================================================

def _check_closure_agreement(r: Realization, depth: int) -> CheckRow:
    accepted, marker = closure_enumerate(r, depth)
    expected = complete(r.family).new_points
    if expected.tag == CardinalTag.FINITE:
        passed = marker is None and len(accepted) == expected.n
    elif expected.tag == CardinalTag.ALEPH0:
        passed = marker == "aleph0"
    else:
        passed = marker == "continuum"
    return CheckRow("closure_agreement", passed,
                    f"symbolic {expected}, oracle {len(accepted)} sampled limits, marker {marker}")


def _expected_flag(f: FamilyDesc, gs: Optional[GenSetDesc], p: PointRef) -> EndpointFlag:
    """点 p 应有的成员状态；没有最小生成集时按连通分支判定（tight 点视为排除）"""
    if gs is not None:
        return gs.status_of(p)
    comp = component_of(f, p)
    if comp.eta_class:
        return EndpointFlag.EXCLUDED if comp.case_label == CaseLabel.III else EndpointFlag.REQUIRED
    return comp.flag_of(p) or EndpointFlag.REQUIRED


def _check_generating_set(r: Realization, depth: int) -> List[CheckRow]:
    """
    必需点孤立且不在 Cl(F ∖ {p}) 中；排除点（含 tight 点）不孤立且在 Cl(F ∖ {p}) 中
    """
    f = r.family
    gs = least_generating_set(f)
    points = sample_points(r)
    isolation_depth = max(depth, r.layout.capacity)
    missing, wrong = [], []
    tight = 0
    for p in points:
        flag = _expected_flag(f, gs, p)
        required = flag == EndpointFlag.REQUIRED
        tight += f.blocks[p.block_index].is_tight_eta
        isolated = isolating_pattern(r, p, isolation_depth) is not None
        answer = in_closure(r.without_points([p]), CandidateDesc.point(p), depth)
        if isolated != required:
            missing.append(p.text())
        if (answer == TriBool.YES) == required:
            wrong.append(p.text())
    return [
        CheckRow("isolation", not missing,
                 f"{len(points)} sampled points ({tight} in tight blocks), "
                 f"isolation disagrees with membership: {missing or 'none'}"),
        CheckRow("accumulation_points", not wrong,
                 f"points whose membership in Cl(F minus point) disagrees: {wrong or 'none'}"),
    ]


def verify_family(f: FamilyDesc, depth: int, seed: int = 0, trials: int = 24,
                  capacity: int = DEFAULT_CAPACITY) -> List[CheckRow]:
    """
    对族 F 运行全部预言机核对

    Returns:
        CheckRow 列表，任一行失败即视为符号引擎与实现不一致
    """
    r = realize(f, seed, capacity)
    rng = np.random.default_rng(seed)
    rows = [_check_closure_agreement(r, depth)]
    rows.extend(_check_generating_set(r, depth))

    blocks = sorted(r.active)
    if len(blocks) >= 2:
        half = len(blocks) // 2
        a, b = r.restricted(blocks[:half]), r.restricted(blocks[half:])
    else:
        a, b = r, r.restricted([])
    rows.append(CheckRow("additivity", check_additivity(a, b, depth)))

    points = sample_points(r)
    cands = limit_candidates(r) + [CandidateDesc.point(p) for p in points]
    exchange_ok = True
    for _ in range(min(trials, len(cands) ** 2)):
        i, j = rng.integers(0, len(cands), size=2)
        exchange_ok = exchange_ok and check_exchange(r, cands[i], cands[j], depth)
    rows.append(CheckRow("exchange", exchange_ok))

    separated = True
    for p, q in combinations(points[:8], 2):
        pat_p, pat_q = separating_patterns(r, p, q)
        jp = r.index_set(CandidateDesc.point(p))
        jq = r.index_set(CandidateDesc.point(q))
        separated = separated and pat_p.matches(jp) and pat_q.matches(jq) \
            and not pat_p.matches(jq) and pat_q.probe == pat_p.probe
    rows.append(CheckRow("hausdorff", separated))

    rows.append(CheckRow("monotone_extensive", check_monotone_extensive(r, depth)))
    rows.append(CheckRow("intersection_closed", check_intersection_closed(r, depth)))
    rows.append(CheckRow("finite_character",
                         all(check_finite_character(r, c, depth) for c in limit_candidates(r))))
    rows.append(CheckRow("t0", all(check_t0(r, p, q, depth)
                                   for p, q in combinations(points[:6], 2))))
    cuts = enumerate_cuts(f, limit=8)
    rows.append(CheckRow("cut_equivalence", all(check_cut_equivalence(f, c) for c in cuts),
                         f"{len(cuts)} cuts"))

    failed = [row.name for row in rows if not row.passed]
    if failed:
        logger.warning(f"Oracle verification of {f.text()} failed: {', '.join(failed)}")
    else:
        logger.info(f"✓ Oracle verification of {f.text()} passed ({len(rows)} checks)")
    return rows
