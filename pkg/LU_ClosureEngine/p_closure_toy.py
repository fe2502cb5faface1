"""
基数族上的 P-闭包

I = (ω+1)∖{0}：空语言结构按基数编号，有限基数为正整数，ω 记为 TOP。
该族上 Cl_P 与 Cl^d_P 由"有限集闭、无限集生成 I"完全刻画，
Cl^{d,r}_P 把任何非空集合都送到 I。
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, List, Sequence, Union

from .errors import CardFamilyError
from .index_sets import PeriodicSet

logger = logging.getLogger(__name__)

TOP = "omega"

Point = Union[int, str]


@dataclass(frozen=True)
class CardFamily:
    """
    I 的子集：正整数部分 ints 加上是否含 ω

    Attributes:
        ints: 有限基数的下标集（最终周期）
        top: 是否包含可数基数 ω
    """
    ints: PeriodicSet
    top: bool = False

    @classmethod
    def empty(cls) -> 'CardFamily':
        return cls(PeriodicSet.empty())

    @classmethod
    def universe(cls) -> 'CardFamily':
        return cls(PeriodicSet.all_positive(), True)

    @classmethod
    def of(cls, points: Iterable[Point]) -> 'CardFamily':
        """由有限个点构造；ω 用 TOP 表示"""
        ints, top = [], False
        for p in points:
            if p == TOP:
                top = True
            elif isinstance(p, int) and not isinstance(p, bool) and p >= 1:
                ints.append(p)
            else:
                raise CardFamilyError(f"{p!r} is not an element of I")
        return cls(PeriodicSet.finite(ints), top)

    def __contains__(self, p: object) -> bool:
        if p == TOP:
            return self.top
        return p in self.ints

    def is_empty(self) -> bool:
        return self.ints.is_empty() and not self.top

    def is_finite(self) -> bool:
        return self.ints.is_finite()

    def union(self, other: 'CardFamily') -> 'CardFamily':
        return CardFamily(self.ints.union(other.ints), self.top or other.top)

    def intersection(self, other: 'CardFamily') -> 'CardFamily':
        return CardFamily(self.ints.intersection(other.ints), self.top and other.top)

    def difference(self, other: 'CardFamily') -> 'CardFamily':
        return CardFamily(self.ints.difference(other.ints), self.top and not other.top)

    def complement(self) -> 'CardFamily':
        return CardFamily.universe().difference(self)

    def issubset(self, other: 'CardFamily') -> bool:
        return self.ints.issubset(other.ints) and (not self.top or other.top)

    def sample(self, limit: int = 8) -> List[Point]:
        """至多 limit 个最小的有限基数，再加上 ω（若含）"""
        points: List[Point] = []
        n = 1
        while len(points) < limit and (not self.ints.is_finite() or n <= max(self.ints.head, default=0)):
            if n in self.ints:
                points.append(n)
            n += 1
        if self.top:
            points.append(TOP)
        return points

    def describe(self) -> str:
        if self == CardFamily.universe():
            return "I"
        text = self.ints.describe()
        return f"{text} + {{{TOP}}}" if self.top else text


Closure = Callable[[CardFamily], CardFamily]


# ============================================================================
# 闭包算子
# ============================================================================

def cl_p(s: CardFamily) -> CardFamily:
    """Cl_P：有限集不变，无限集生成 I"""
    return s if s.is_finite() else CardFamily.universe()


def cl_p_d(s: CardFamily) -> CardFamily:
    """Cl^d_P；在基数族上与 Cl_P 相同"""
    return cl_p(s)


def cl_p_dr(s: CardFamily) -> CardFamily:
    """Cl^{d,r}_P：任一单点已生成 I；空集约定为闭"""
    return CardFamily.empty() if s.is_empty() else CardFamily.universe()


def is_closed_dp(s: CardFamily) -> bool:
    return cl_p_d(s) == s


def has_minimal_generating_set_dP(s: CardFamily) -> bool:
    """
    Cl^d_P-闭集 s 是否有最小生成集

    有限闭集以自身为生成集；I 由它的任一无限子集生成，
    而无限子集总可再去掉一个点，故没有极小者。

    Raises:
        CardFamilyError: s 不是 Cl^d_P-闭集
    """
    if not is_closed_dp(s):
        raise CardFamilyError(f"{s.describe()} is not closed under Cl^d_P")
    return s.is_finite()


def minimal_generating_sets_dr(s: CardFamily, limit: int = 8) -> List[CardFamily]:
    """
    Cl^{d,r}_P-闭集的极小生成集（至多 limit 个）

    非空闭集 I 的每个单点都是极小生成集；∅ 只有 ∅。

    Raises:
        CardFamilyError: s 不是 Cl^{d,r}_P-闭集
    """
    if cl_p_dr(s) != s:
        raise CardFamilyError(f"{s.describe()} is not closed under Cl^d,r_P")
    if s.is_empty():
        return [CardFamily.empty()]
    return [CardFamily.of([p]) for p in s.sample(limit)[:limit]]


# ============================================================================
# 拓扑
# ============================================================================

def is_open(u: CardFamily) -> bool:
    """Cl^d_P 拓扑中的开集：空集或余有限集"""
    return u.is_empty() or u.ints.is_cofinite()


def open_sets_intersect(u1: CardFamily, u2: CardFamily) -> bool:
    """
    两个非空开集是否相交；有空集时视为不构成反例

    Raises:
        CardFamilyError: 输入不是开集
    """
    for u in (u1, u2):
        if not is_open(u):
            raise CardFamilyError(f"{u.describe()} is not open")
    if u1.is_empty() or u2.is_empty():
        return True
    return not u1.intersection(u2).is_empty()


def _singleton_open(closure: Closure, p: Point) -> CardFamily:
    return closure(CardFamily.of([p])).complement()


def is_t0(closure: Closure, sample: Sequence[Point]) -> bool:
    """样本中任意两点都能被某个 I ∖ cl({x}) 区分"""
    for i, j in combinations(sample, 2):
        ui, uj = _singleton_open(closure, i), _singleton_open(closure, j)
        if not ((j in ui and i not in ui) or (i in uj and j not in uj)):
            logger.debug(f"T0 fails on {i}, {j}")
            return False
    return True


def is_hausdorff(closure: Closure, sample: Sequence[Point]) -> bool:
    """
    样本上的 Hausdorff 观察

    U_x = I ∖ cl(样本 ∖ {x}) 是与其余样本点分开的开集；
    要求 x ∈ U_x 且样本中任意两点的 U 不相交。
    """
    opens = {}
    for x in sample:
        rest = CardFamily.of([y for y in sample if y != x])
        u = closure(rest).complement()
        if x not in u:
            return False
        opens[x] = u
    return all(opens[i].intersection(opens[j]).is_empty()
               for i, j in combinations(sample, 2))


# ============================================================================
# 性质检查
# ============================================================================

def check_exchange(closure: Closure, s: CardFamily, t1: Point, t2: Point) -> bool:
    """交换性质：t1 ∈ cl(s ∪ {t2}) ∖ cl(s) 时 t2 ∈ cl(s ∪ {t1})"""
    base = closure(s)
    if t1 in base or t1 not in closure(s.union(CardFamily.of([t2]))):
        return True
    return t2 in closure(s.union(CardFamily.of([t1])))


def check_additivity(closure: Closure, a: CardFamily, b: CardFamily) -> bool:
    return closure(a.union(b)) == closure(a).union(closure(b))


def check_not_finite_character(closure: Closure, s: CardFamily, limit: int = 8) -> bool:
    """cl(s) 的新点不由 s 的任何有限子集生成（在 s 的前 limit 个点的子集上检查）"""
    new_points = closure(s).difference(s).sample(limit)
    points = s.sample(limit)
    for size in range(len(points) + 1):
        for subset in combinations(points, size):
            generated = closure(CardFamily.of(subset))
            if any(t in generated for t in new_points):
                return False
    return True


# ============================================================================
# 文本格式
# ============================================================================

def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise CardFamilyError(f"invalid integer list {text!r}") from exc


def parse_card_family(text: str) -> CardFamily:
    """
    解析 I 的子集

    支持 "all"/"I"、"empty"、"mod:M:r1,r2"（含 ω 时追加 "+omega"）、
    "cofinite:a,b"（缺 a,b 的余有限集，含 ω）以及 "3,5,omega" 形式的有限列表。

    Raises:
        CardFamilyError: 无法解析
    """
    raw = text.strip()
    body, top = raw, False
    if raw.endswith("+" + TOP):
        body, top = raw[:-len(TOP) - 1].strip(), True
    lowered = body.lower()
    if lowered in ("all", "i"):
        return CardFamily.universe()
    if lowered in ("empty", "{}", ""):
        return CardFamily(PeriodicSet.empty(), top)
    if lowered.startswith("mod:"):
        parts = lowered.split(":")
        if len(parts) != 3:
            raise CardFamilyError(f"expected 'mod:M:r1,r2', got {text!r}")
        modulus = _int_list(parts[1])
        if len(modulus) != 1 or modulus[0] < 1:
            raise CardFamilyError(f"invalid modulus in {text!r}")
        return CardFamily(PeriodicSet.arithmetic(modulus[0], _int_list(parts[2])), top)
    if lowered.startswith("cofinite:"):
        missing = _int_list(lowered[len("cofinite:"):])
        if any(n < 1 for n in missing):
            raise CardFamilyError(f"cofinite exclusions must be positive: {text!r}")
        return CardFamily(PeriodicSet.cofinite(missing), True)
    points: List[Point] = []
    for token in lowered.split(","):
        token = token.strip()
        if token == TOP:
            points.append(TOP)
        elif token.isdigit():
            points.append(int(token))
        else:
            raise CardFamilyError(f"invalid element {token!r} in {text!r}")
    family = CardFamily.of(points)
    return CardFamily(family.ints, family.top or top)
