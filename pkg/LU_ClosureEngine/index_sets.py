"""
最终周期的正整数集合

谓词下标集（签名轮廓）与基数族（P-闭包玩具模型）都只需要这一类集合：
有限集、余有限集以及按模数周期出现的无限集。集合由
(阈值 t, 模数 m, 余数集 R, 有限部分 F) 描述：

    n ∈ S  ⟺  (n < t 且 n ∈ F) 或 (n ≥ t 且 n mod m ∈ R)
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, List, Optional

import numpy as np


@dataclass(frozen=True)
class PeriodicSet:
    """
    最终周期的正整数集合

    Attributes:
        threshold: 周期部分的起点 t（≥ 1）
        modulus: 周期 m（≥ 1）
        residues: t 之后出现的余数集合（模 m）
        head: t 之前的有限部分
    """
    threshold: int = 1
    modulus: int = 1
    residues: FrozenSet[int] = field(default_factory=frozenset)
    head: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.threshold < 1 or self.modulus < 1:
            raise ValueError("threshold and modulus must be positive")
        if any(r < 0 or r >= self.modulus for r in self.residues):
            raise ValueError(f"residues must lie in [0, {self.modulus})")
        if any(n < 1 or n >= self.threshold for n in self.head):
            raise ValueError(f"head elements must lie in [1, {self.threshold})")

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    @classmethod
    def empty(cls) -> 'PeriodicSet':
        return cls()

    @classmethod
    def all_positive(cls) -> 'PeriodicSet':
        return cls(residues=frozenset({0}))

    @classmethod
    def finite(cls, elements: Iterable[int]) -> 'PeriodicSet':
        """有限集合"""
        items = frozenset(int(n) for n in elements)
        if any(n < 1 for n in items):
            raise ValueError("elements must be positive integers")
        top = max(items) + 1 if items else 1
        return cls(threshold=top, head=items)

    @classmethod
    def cofinite(cls, missing: Iterable[int]) -> 'PeriodicSet':
        """去掉有限个元素后的全体正整数"""
        gone = frozenset(int(n) for n in missing)
        top = max(gone) + 1 if gone else 1
        head = frozenset(n for n in range(1, top) if n not in gone)
        return cls(threshold=top, residues=frozenset({0}), head=head)

    @classmethod
    def arithmetic(cls, modulus: int, residues: Iterable[int],
                   start: int = 1) -> 'PeriodicSet':
        """从 start 起按余数出现的无限集合，例如全体偶数 arithmetic(2, [0])"""
        res = frozenset(int(r) % modulus for r in residues)
        return cls(threshold=max(1, start), modulus=modulus, residues=res)

    @classmethod
    def interval(cls, low: int, high: Optional[int]) -> 'PeriodicSet':
        """区间 [low, high]；high 为 None 表示无上界"""
        if high is None:
            head = frozenset()
            return cls(threshold=max(1, low), residues=frozenset({0}), head=head)
        return cls.finite(range(max(1, low), high + 1))

    # ------------------------------------------------------------------
    # 查询
    # ------------------------------------------------------------------

    def __contains__(self, n: object) -> bool:
        if not isinstance(n, (int, np.integer)) or n < 1:
            return False
        if n < self.threshold:
            return n in self.head
        return (n % self.modulus) in self.residues

    def is_empty(self) -> bool:
        return not self.head and not self.residues

    def is_finite(self) -> bool:
        return not self.residues

    def is_cofinite(self) -> bool:
        return len(self.residues) == self.modulus

    def size(self) -> Optional[int]:
        """有限集合的元素个数；无限集合返回 None"""
        return len(self.head) if self.is_finite() else None

    def elements(self, limit: int) -> List[int]:
        """不超过 limit 的元素（升序）"""
        return [n for n in range(1, limit + 1) if n in self]

    def __iter__(self) -> Iterator[int]:
        if not self.is_finite():
            raise ValueError("cannot iterate an infinite set")
        return iter(sorted(self.head))

    # ------------------------------------------------------------------
    # 集合运算（先对齐到公共阈值与公共模数）
    # ------------------------------------------------------------------

    def _aligned(self, other: 'PeriodicSet'):
        t = max(self.threshold, other.threshold)
        m = int(np.lcm(self.modulus, other.modulus))
        return t, m

    def _combine(self, other: 'PeriodicSet', op) -> 'PeriodicSet':
        t, m = self._aligned(other)
        head = frozenset(n for n in range(1, t) if op(n in self, n in other))
        res = frozenset(n % m for n in range(t, t + m)
                        if op(n in self, n in other))
        return PeriodicSet(threshold=t, modulus=m, residues=res, head=head)

    def union(self, other: 'PeriodicSet') -> 'PeriodicSet':
        return self._combine(other, lambda a, b: a or b)

    def intersection(self, other: 'PeriodicSet') -> 'PeriodicSet':
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: 'PeriodicSet') -> 'PeriodicSet':
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> 'PeriodicSet':
        """相对全体正整数的补集"""
        return PeriodicSet.all_positive().difference(self)

    def issubset(self, other: 'PeriodicSet') -> bool:
        return self.difference(other).is_empty()

    def isdisjoint(self, other: 'PeriodicSet') -> bool:
        return self.intersection(other).is_empty()

    def scaled(self, factor: int, shift: int = 0) -> 'PeriodicSet':
        """像集 {factor·n + shift : n ∈ S}（shift 取 0..factor-1，且像仍为正整数）"""
        if self.is_finite():
            return PeriodicSet.finite(factor * n + shift for n in self.head)
        t = factor * self.threshold + shift
        m = factor * self.modulus
        res = frozenset((factor * r + shift) % m for r in self.residues)
        head = frozenset(factor * n + shift for n in self.head)
        return PeriodicSet(threshold=t, modulus=m, residues=res, head=head)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PeriodicSet):
            return NotImplemented
        t, m = self._aligned(other)
        return all((n in self) == (n in other) for n in range(1, t + m))

    def __hash__(self) -> int:
        # 相等的集合在 [1, 64] 上的元素必然相同
        return hash(frozenset(self.elements(64)))

    def describe(self) -> str:
        """简短文本描述，用于报告与日志"""
        if self.is_empty():
            return "{}"
        if self.is_finite():
            return "{" + ",".join(str(n) for n in sorted(self.head)) + "}"
        if self.is_cofinite():
            missing = [n for n in range(1, self.threshold) if n not in self]
            if not missing:
                return "N+"
            return "N+ \\ {" + ",".join(str(n) for n in missing) + "}"
        sample = ",".join(str(n) for n in self.elements(self.threshold + 2 * self.modulus))
        return "{" + sample + ",...}"
