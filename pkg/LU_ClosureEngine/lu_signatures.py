"""
LU / IILU 签名演算

签名轮廓按元数记录非空谓词与空谓词的下标集（最终周期集合），
只依赖计数与包含关系，不涉及谓词本身。
"""

import logging
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .errors import SignatureError
from .family_core import CardinalValue
from .index_sets import PeriodicSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ArityRecord:
    """某一元数上非空 / 空谓词的下标集"""
    arity: int
    nonempty: PeriodicSet
    empty: PeriodicSet

    def __post_init__(self):
        if self.arity < 1:
            raise SignatureError(f"arity must be >= 1, got {self.arity}")
        if not self.nonempty.isdisjoint(self.empty):
            raise SignatureError(f"arity {self.arity}: nonempty and empty index sets overlap")

    @property
    def universe(self) -> PeriodicSet:
        return self.nonempty.union(self.empty)

    def nonempty_count(self) -> CardinalValue:
        return _count(self.nonempty)

    def empty_count(self) -> CardinalValue:
        return _count(self.empty)

    def is_iilu(self) -> bool:
        return not self.nonempty.is_finite() and not self.empty.is_finite()


def _count(s: PeriodicSet) -> CardinalValue:
    return CardinalValue.finite(s.size()) if s.is_finite() else CardinalValue.aleph0()


@dataclass(frozen=True)
class SignatureProfile:
    """签名轮廓：元数 → ArityRecord（按元数排序）"""
    records: Tuple[ArityRecord, ...]

    def __post_init__(self):
        records = tuple(sorted(self.records, key=lambda r: r.arity))
        arities = [r.arity for r in records]
        if len(set(arities)) != len(arities):
            raise SignatureError(f"duplicate arity in profile: {arities}")
        object.__setattr__(self, 'records', records)

    @classmethod
    def from_sets(cls, mapping: Dict[int, Tuple[PeriodicSet, PeriodicSet]]) -> 'SignatureProfile':
        return cls(tuple(ArityRecord(n, ne, e) for n, (ne, e) in mapping.items()))

    def arities(self) -> List[int]:
        return [r.arity for r in self.records]

    def record(self, n: int) -> ArityRecord:
        for r in self.records:
            if r.arity == n:
                return r
        return ArityRecord(n, PeriodicSet.empty(), PeriodicSet.empty())

    def describe(self) -> str:
        parts = [f"{r.arity}: {r.nonempty_count()}, {r.empty_count()}" for r in self.records]
        return "; ".join(parts) if parts else "(empty signature)"

    def to_dict(self) -> dict:
        return {str(r.arity): {"nonempty": str(r.nonempty_count()),
                               "empty": str(r.empty_count())} for r in self.records}


# ============================================================================
# 支撑与支配
# ============================================================================

def supp(p: SignatureProfile) -> FrozenSet[int]:
    """Supp(p) = {n : 存在非空的 n 元谓词}"""
    return frozenset(r.arity for r in p.records if not r.nonempty.is_empty())


def _check_same_language(p1: SignatureProfile, p2: SignatureProfile) -> List[int]:
    arities = sorted(set(p1.arities()) | set(p2.arities()))
    for n in arities:
        if p1.record(n).universe != p2.record(n).universe:
            raise SignatureError(f"profiles use different languages at arity {n}")
    return arities


def dominates(p1: SignatureProfile, p2: SignatureProfile) -> bool:
    """p1 ⊑ p2：p1 的非空谓词在 p2 中都非空"""
    arities = _check_same_language(p1, p2)
    return all(p1.record(n).nonempty.issubset(p2.record(n).nonempty) for n in arities)


def infinitely_dominates(p1: SignatureProfile, p2: SignatureProfile) -> bool:
    """
    p1 ⊏∞ p2：某个元数上 p2 有无限多个相对 p1 新增的非空谓词

    Raises:
        SignatureError: p1 ⋢ p2
    """
    if not dominates(p1, p2):
        raise SignatureError("infinite domination requires p1 to be dominated by p2")
    return any(not p2.record(n).nonempty.difference(p1.record(n).nonempty).is_finite()
               for n in p2.arities())


def domination_equivalent(p1: SignatureProfile, p2: SignatureProfile) -> bool:
    """p1 ∼ p2：相互支配"""
    return dominates(p1, p2) and dominates(p2, p1)


def language_similar(p1: SignatureProfile, p2: SignatureProfile) -> bool:
    """逐元数比较非空 / 空谓词的个数（轮廓层面的双射存在性）"""
    arities = set(p1.arities()) | set(p2.arities())
    for n in arities:
        r1, r2 = p1.record(n), p2.record(n)
        if r1.nonempty_count() != r2.nonempty_count() or r1.empty_count() != r2.empty_count():
            return False
    return True


def check_dense_domination(chain: Sequence[SignatureProfile]) -> bool:
    """链中任意两个可比且不相同的轮廓之间都是无限支配"""
    for p1, p2 in combinations(chain, 2):
        for lo, hi in ((p1, p2), (p2, p1)):
            if dominates(lo, hi) and not dominates(hi, lo) and not infinitely_dominates(lo, hi):
                logger.debug(f"Finite domination step {lo.describe()} -> {hi.describe()}")
                return False
    return True


# ============================================================================
# 统一化与 IILU 扩张
# ============================================================================

def uniformize(arities: Sequence[int]) -> List[int]:
    """
    添加虚变量后的严格递增元数表：r₀ = k₀，r_{n+1} = max(r_n, k_{n+1}) + 1

    Raises:
        SignatureError: 元数小于 1
    """
    schedule: List[int] = []
    for k in arities:
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise SignatureError(f"invalid arity {k!r}")
        schedule.append(k if not schedule else max(schedule[-1], k) + 1)
    return schedule


def is_iilu(p: SignatureProfile) -> bool:
    """有非空谓词，且每个被占用的元数上非空、空谓词都有无限多个"""
    occupied = [r for r in p.records if not r.nonempty.is_empty()]
    return bool(occupied) and all(r.is_iilu() for r in occupied)


def iilu_expand(p: SignatureProfile) -> SignatureProfile:
    """
    把每个被占用但非 IILU 的元数扩张为 IILU：原下标编码为偶数，
    ≡1 (mod 4) 的新下标为非空谓词的复制，≡3 (mod 4) 的新下标为空谓词

    Raises:
        SignatureError: 轮廓没有非空谓词
    """
    if not supp(p):
        raise SignatureError("cannot expand a profile without nonempty predicates")
    copies = PeriodicSet.arithmetic(4, [1])
    blanks = PeriodicSet.arithmetic(4, [3])
    records = []
    for r in p.records:
        if r.nonempty.is_empty() or r.is_iilu():
            records.append(r)
            continue
        records.append(ArityRecord(
            r.arity,
            r.nonempty.scaled(2).union(copies),
            r.empty.scaled(2).union(blanks),
        ))
    result = SignatureProfile(tuple(records))
    logger.debug(f"iilu_expand: {p.describe()} -> {result.describe()}")
    return result


# ============================================================================
# 文本格式
# ============================================================================

def canonical_record(arity: int, nonempty: CardinalValue, empty: CardinalValue) -> ArityRecord:
    """按计数给出规范下标集；同计数之和的轮廓使用同一语言"""
    ne_inf, e_inf = not nonempty.is_finite(), not empty.is_finite()
    if ne_inf and e_inf:
        return ArityRecord(arity, PeriodicSet.arithmetic(2, [1]), PeriodicSet.arithmetic(2, [0]))
    if ne_inf:
        m = empty.n
        return ArityRecord(arity, PeriodicSet.interval(m + 1, None), PeriodicSet.interval(1, m))
    if e_inf:
        n = nonempty.n
        return ArityRecord(arity, PeriodicSet.interval(1, n), PeriodicSet.interval(n + 1, None))
    n, m = nonempty.n, empty.n
    return ArityRecord(arity, PeriodicSet.interval(1, n), PeriodicSet.interval(n + 1, n + m))


_LINE = re.compile(r"^\s*(\d+)\s*:\s*([^,\s]+)\s*,\s*([^,\s]+)\s*$")


def _parse_count(token: str, lineno: int) -> CardinalValue:
    token = token.strip().lower()
    if token in ("aleph0", "omega", "inf", "w"):
        return CardinalValue.aleph0()
    if token.isdigit():
        return CardinalValue.finite(int(token))
    raise SignatureError(f"line {lineno}: invalid count {token!r}")


def parse_profile_text(text: str) -> SignatureProfile:
    """
    解析 "元数: 非空个数, 空个数" 格式的轮廓文件；# 开头为注释

    Raises:
        SignatureError: 行格式错误或元数重复
    """
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LINE.match(line)
        if not match:
            raise SignatureError(f"line {lineno}: expected 'arity: nonempty, empty', got {raw!r}")
        arity = int(match.group(1))
        records.append(canonical_record(arity,
                                        _parse_count(match.group(2), lineno),
                                        _parse_count(match.group(3), lineno)))
    return SignatureProfile(tuple(records))


def dense_chain_fixture(length: int = 4, arity: int = 1) -> List[SignatureProfile]:
    """
    ⊑ 稠密的轮廓链样本：非空下标集为 2^k 的倍数（k 递减），相邻两项之差无限
    """
    universe = PeriodicSet.all_positive()
    chain = []
    for k in range(length, 0, -1):
        ne = PeriodicSet.arithmetic(2 ** k, [0])
        chain.append(SignatureProfile((ArityRecord(arity, ne, universe.difference(ne)),)))
    return chain
