"""
线性序族的描述语言（DSL）：块、接合注解、族描述、点引用与符号基数

一个族 F 由有限个块顺序拼接而成，块类型取自 {fin(n), omega, omega*, zeta, eta}，
相邻块之间的接合注解记录两侧极限是否重合：

    (开, 开)   → merged / split      （默认 split）
    (开, 闭)   → absorbed / separate （默认 separate）
    (闭, 开)   → absorbed / separate （默认 separate）
    (闭, 闭)   → 无注解

语法：
    family   := segment | "(" segment ")^omega"
    segment  := block (junction block)*
    block    := "fin(" INT ")" | "omega" | "omega*" | "zeta" | "eta(tight)" | "eta(gapped)"
    junction := "+" | "+merged" | "+split" | "+absorbed" | "+separate"
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import lark

from .errors import FamilySyntaxError, FamilyValidationError

logger = logging.getLogger(__name__)


# ============================================================================
# 符号基数
# ============================================================================

class CardinalTag(str, Enum):
    FINITE = "finite"
    ALEPH0 = "aleph0"
    CONTINUUM = "at_least_continuum"


_CARDINAL_RANK = {CardinalTag.FINITE: 0, CardinalTag.ALEPH0: 1, CardinalTag.CONTINUUM: 2}


@dataclass(frozen=True)
class CardinalValue:
    """
    符号基数：有限 n、ℵ₀ 或 ≥ max(2^ω, λ)

    lambda_tag 只对 CONTINUUM 有意义，记录语言基数参数 λ。
    """
    tag: CardinalTag
    n: int = 0
    lambda_tag: Optional[str] = None

    def __post_init__(self):
        if self.tag == CardinalTag.FINITE and self.n < 0:
            raise ValueError("finite cardinal must be non-negative")

    @classmethod
    def finite(cls, n: int) -> 'CardinalValue':
        return cls(CardinalTag.FINITE, n)

    @classmethod
    def aleph0(cls) -> 'CardinalValue':
        return cls(CardinalTag.ALEPH0)

    @classmethod
    def at_least_continuum(cls, lambda_tag: Optional[str] = None) -> 'CardinalValue':
        return cls(CardinalTag.CONTINUUM, 0, lambda_tag)

    def is_finite(self) -> bool:
        return self.tag == CardinalTag.FINITE

    def _rank(self) -> Tuple[int, int]:
        return (_CARDINAL_RANK[self.tag], self.n)

    def __lt__(self, other: 'CardinalValue') -> bool:
        return self._rank() < other._rank()

    def __le__(self, other: 'CardinalValue') -> bool:
        return self._rank() <= other._rank()

    def __gt__(self, other: 'CardinalValue') -> bool:
        return self._rank() > other._rank()

    def __ge__(self, other: 'CardinalValue') -> bool:
        return self._rank() >= other._rank()

    def __add__(self, other: 'CardinalValue') -> 'CardinalValue':
        if self.is_finite() and other.is_finite():
            return CardinalValue.finite(self.n + other.n)
        return self if self >= other else other

    def __str__(self) -> str:
        if self.tag == CardinalTag.FINITE:
            return str(self.n)
        if self.tag == CardinalTag.ALEPH0:
            return "aleph0"
        if self.lambda_tag:
            return f">=max(2^omega,{self.lambda_tag})"
        return ">=2^omega"

    def to_dict(self) -> dict:
        data = {"kind": self.tag.value}
        if self.tag == CardinalTag.FINITE:
            data["n"] = self.n
        if self.lambda_tag is not None:
            data["lambda"] = self.lambda_tag
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'CardinalValue':
        tag = CardinalTag(data["kind"])
        return cls(tag, data.get("n", 0), data.get("lambda"))

    @classmethod
    def parse(cls, text: str) -> 'CardinalValue':
        """解析 '3' / 'aleph0' / 'continuum' 形式的基数文本"""
        token = text.strip().lower()
        if token in ("aleph0", "omega", "w", "ℵ0", "ℵ₀"):
            return cls.aleph0()
        if token in ("continuum", "2^omega", ">=2^omega"):
            return cls.at_least_continuum()
        try:
            return cls.finite(int(token))
        except ValueError:
            raise FamilyValidationError(f"not a cardinal: {text!r}") from None


# ============================================================================
# 块与接合注解
# ============================================================================

class BlockKind(str, Enum):
    FIN = "fin"
    OMEGA = "omega"
    OMEGA_STAR = "omega*"
    ZETA = "zeta"
    ETA = "eta"


class EtaMode(str, Enum):
    TIGHT = "tight"
    GAPPED = "gapped"


class Annotation(str, Enum):
    MERGED = "merged"
    SPLIT = "split"
    ABSORBED = "absorbed"
    SEPARATE = "separate"


@dataclass(frozen=True)
class Block:
    """序型块"""
    kind: BlockKind
    n: Optional[int] = None
    mode: Optional[EtaMode] = None

    def __post_init__(self):
        if self.kind == BlockKind.FIN:
            if self.n is None or self.n < 1:
                raise FamilyValidationError(f"Fin requires n >= 1, got fin({self.n})")
        elif self.n is not None:
            raise FamilyValidationError(f"{self.kind.value} takes no size")
        if self.kind == BlockKind.ETA:
            if self.mode is None:
                raise FamilyValidationError("eta requires an explicit mode (tight or gapped)")
        elif self.mode is not None:
            raise FamilyValidationError(f"{self.kind.value} takes no mode")

    @classmethod
    def fin(cls, n: int) -> 'Block':
        return cls(BlockKind.FIN, n=n)

    @classmethod
    def omega(cls) -> 'Block':
        return cls(BlockKind.OMEGA)

    @classmethod
    def omega_star(cls) -> 'Block':
        return cls(BlockKind.OMEGA_STAR)

    @classmethod
    def zeta(cls) -> 'Block':
        return cls(BlockKind.ZETA)

    @classmethod
    def eta(cls, mode: Union[EtaMode, str]) -> 'Block':
        return cls(BlockKind.ETA, mode=EtaMode(mode))

    @property
    def is_tight_eta(self) -> bool:
        return self.kind == BlockKind.ETA and self.mode == EtaMode.TIGHT

    @property
    def is_gapped_eta(self) -> bool:
        return self.kind == BlockKind.ETA and self.mode == EtaMode.GAPPED

    def text(self) -> str:
        if self.kind == BlockKind.FIN:
            return f"fin({self.n})"
        if self.kind == BlockKind.ETA:
            return f"eta({self.mode.value})"
        return self.kind.value


def block_sides(block: Block) -> Tuple[bool, bool]:
    """
    块两端是否开放

    Returns:
        (left_open, right_open)：开放端没有端点，其极限是新的聚点候选
    """
    return {
        BlockKind.FIN: (False, False),
        BlockKind.OMEGA: (False, True),
        BlockKind.OMEGA_STAR: (True, False),
        BlockKind.ZETA: (True, True),
        BlockKind.ETA: (True, True),
    }[block.kind]


def allowed_annotations(left: Block, right: Block) -> Tuple[Optional[Annotation], ...]:
    """相邻两块之间允许的注解；第一个元素是缺省值"""
    left_open = block_sides(left)[1]
    right_open = block_sides(right)[0]
    if left_open and right_open:
        return (Annotation.SPLIT, Annotation.MERGED)
    if left_open or right_open:
        return (Annotation.SEPARATE, Annotation.ABSORBED)
    return (None,)


@dataclass(frozen=True)
class Junction:
    """相邻块之间的接合注解；闭-闭接合的注解为 None"""
    annotation: Optional[Annotation] = None

    def text(self) -> str:
        return "+" if self.annotation is None else f"+{self.annotation.value}"


# ============================================================================
# 族描述
# ============================================================================

@dataclass(frozen=True)
class FamilyDesc:
    """
    线性序族 F 的符号描述

    Attributes:
        blocks: 块序列
        junctions: 接合注解，len(junctions) = len(blocks) - 1
        label: 可选标签
        repeated: True 表示整个块序列重复 ω 次（副本之间为 split 接缝）
        edges: 切分时记录的左右外侧接合注解，仅作元数据
    """
    blocks: Tuple[Block, ...]
    junctions: Tuple[Junction, ...] = ()
    label: Optional[str] = None
    repeated: bool = False
    edges: Tuple[Optional[Annotation], Optional[Annotation]] = (None, None)

    def __post_init__(self):
        object.__setattr__(self, 'blocks', tuple(self.blocks))
        object.__setattr__(self, 'junctions', tuple(self.junctions))
        if not self.blocks:
            raise FamilyValidationError("a family needs at least one block")
        if len(self.junctions) != len(self.blocks) - 1:
            raise FamilyValidationError(
                f"{len(self.blocks)} blocks need {len(self.blocks) - 1} junctions, "
                f"got {len(self.junctions)}")
        for i, junction in enumerate(self.junctions):
            left, right = self.blocks[i], self.blocks[i + 1]
            if junction.annotation not in allowed_annotations(left, right):
                shown = junction.annotation.value if junction.annotation else "none"
                raise FamilyValidationError(
                    f"annotation '{shown}' is not applicable between "
                    f"{left.text()} and {right.text()}")
        if self.repeated:
            if not block_sides(self.blocks[0])[0] or not block_sides(self.blocks[-1])[1]:
                raise FamilyValidationError(
                    "an omega-repeated schema must start and end with open sides")

    @property
    def is_finite(self) -> bool:
        return not self.repeated and all(b.kind == BlockKind.FIN for b in self.blocks)

    def annotation(self, i: int) -> Optional[Annotation]:
        """第 i 个接合（位于块 i 与块 i+1 之间）的注解"""
        return self.junctions[i].annotation

    def has_tight_eta(self) -> bool:
        return any(b.is_tight_eta for b in self.blocks)

    def has_eta(self) -> bool:
        return any(b.kind == BlockKind.ETA for b in self.blocks)

    def text(self) -> str:
        return print_family(self)

    def __str__(self) -> str:
        return self.text()


# ============================================================================
# 点引用与二进有理数标签
# ============================================================================

@dataclass(frozen=True)
class PointRef:
    """
    指向族中一个元素

    offset 约定：
        Fin(n): 0..n-1；Omega: ≥ 0；OmegaStar: ≤ 0（0 为最大元）；
        Zeta: 任意整数；Eta: (0,1) 内 2-指数为奇数的二进有理数
    copy 只用于 ω-重复模式，表示第几个副本。
    """
    block_index: int
    offset: Union[int, Fraction]
    copy: int = 0

    def text(self) -> str:
        suffix = f"@{self.copy}" if self.copy else ""
        return f"b{self.block_index}[{self.offset}]{suffix}"


def dyadic_exponent(q: Fraction) -> Optional[int]:
    """分母为 2^e 时返回 e，否则返回 None"""
    den = q.denominator
    if den & (den - 1):
        return None
    return den.bit_length() - 1


def is_eta_point_tag(q: Union[Fraction, int]) -> bool:
    """Eta 点标签：(0,1) 内 2-指数为奇数的二进有理数（1/2, 1/8, 3/8, ...）"""
    q = Fraction(q)
    e = dyadic_exponent(q)
    return e is not None and e % 2 == 1 and 0 < q < 1


def is_eta_cut_tag(q: Union[Fraction, int]) -> bool:
    """Eta 切分标签：(0,1) 内 2-指数为不小于 2 的偶数的二进有理数（1/4, 3/4, 1/16, ...）"""
    q = Fraction(q)
    e = dyadic_exponent(q)
    return e is not None and e >= 2 and e % 2 == 0 and 0 < q < 1


def eta_points(max_exponent: int) -> List[Fraction]:
    """2-指数不超过 max_exponent 的全部 Eta 点标签（升序）"""
    points = []
    for e in range(1, max_exponent + 1, 2):
        points.extend(Fraction(m, 2 ** e) for m in range(1, 2 ** e, 2))
    return sorted(points)


def point_in_family(f: FamilyDesc, p: PointRef) -> bool:
    """点引用是否恰好指向 F 中的一个元素"""
    if not 0 <= p.block_index < len(f.blocks):
        return False
    if p.copy < 0 or (p.copy > 0 and not f.repeated):
        return False
    block = f.blocks[p.block_index]
    if block.kind == BlockKind.ETA:
        return isinstance(p.offset, Fraction) and is_eta_point_tag(p.offset)
    if not isinstance(p.offset, int) or isinstance(p.offset, bool):
        return False
    if block.kind == BlockKind.FIN:
        return 0 <= p.offset < block.n
    if block.kind == BlockKind.OMEGA:
        return p.offset >= 0
    if block.kind == BlockKind.OMEGA_STAR:
        return p.offset <= 0
    return True


def first_point(block: Block) -> Optional[int]:
    """左端点的偏移（左端开放时为 None）"""
    if block.kind in (BlockKind.FIN, BlockKind.OMEGA):
        return 0
    return None


def last_point(block: Block) -> Optional[int]:
    """右端点的偏移（右端开放时为 None）"""
    if block.kind == BlockKind.FIN:
        return block.n - 1
    if block.kind == BlockKind.OMEGA_STAR:
        return 0
    return None


# ============================================================================
# 解析与打印
# ============================================================================

_GRAMMAR = r"""
start: segment
     | "(" segment ")" "^" "omega"    -> repeated

segment: block (junction block)*

block: "fin" "(" INT ")"       -> fin
     | "omega*"                -> omega_star
     | "omega"                 -> omega
     | "zeta"                  -> zeta
     | "eta" "(" ETA_MODE ")"  -> eta

junction: "+" ANNOTATION?

ANNOTATION: "merged" | "split" | "absorbed" | "separate"
ETA_MODE: "tight" | "gapped"

%import common.INT
%import common.WS
%ignore WS
"""


class _FamilyTransformer(lark.Transformer):
    """把语法树转换为原始元组，语义校验在转换之后进行"""

    def fin(self, children):
        token = children[0]
        return ("fin", int(token), token.start_pos)

    def omega_star(self, _):
        return ("omega*", None, None)

    def omega(self, _):
        return ("omega", None, None)

    def zeta(self, _):
        return ("zeta", None, None)

    def eta(self, children):
        return ("eta", str(children[0]), None)

    def junction(self, children):
        return ("junction", str(children[0]) if children else None, None)

    def segment(self, children):
        return list(children)

    def start(self, children):
        return (False, children[0])

    def repeated(self, children):
        return (True, children[0])


_PARSER = lark.Lark(_GRAMMAR, parser="lalr")


def _build_block(item) -> Block:
    kind, value, pos = item
    if kind == "fin":
        if value < 1:
            raise FamilyValidationError(f"Fin requires n >= 1, got fin({value}) at position {pos}")
        return Block.fin(value)
    if kind == "eta":
        return Block.eta(value)
    return {"omega": Block.omega, "omega*": Block.omega_star, "zeta": Block.zeta}[kind]()


def parse_family(text: str) -> FamilyDesc:
    """
    解析族描述文本

    Args:
        text: DSL 文本，如 "zeta +split zeta" 或 "(zeta)^omega"

    Returns:
        校验通过的 FamilyDesc，省略的注解按形状取缺省值

    Raises:
        FamilySyntaxError: 语法错误（带位置）
        FamilyValidationError: 语义错误
    """
    try:
        tree = _PARSER.parse(text)
    except lark.exceptions.UnexpectedInput as e:
        position = getattr(e, 'pos_in_stream', None)
        raise FamilySyntaxError(
            f"unexpected input in family expression {text!r}",
            position=position,
            line=getattr(e, 'line', None),
            column=getattr(e, 'column', None),
        ) from None

    repeated, items = _FamilyTransformer().transform(tree)
    blocks = [_build_block(item) for item in items[0::2]]
    raw_junctions = [item[1] for item in items[1::2]]

    junctions = []
    for i, raw in enumerate(raw_junctions):
        allowed = allowed_annotations(blocks[i], blocks[i + 1])
        if raw is None:
            annotation = allowed[0]
        else:
            annotation = Annotation(raw)
            if annotation not in allowed:
                raise FamilyValidationError(
                    f"annotation '+{raw}' is not applicable between "
                    f"{blocks[i].text()} and {blocks[i + 1].text()}")
        junctions.append(Junction(annotation))

    family = FamilyDesc(tuple(blocks), tuple(junctions), repeated=repeated)
    logger.debug(f"Parsed family {text!r} -> {print_family(family)}")
    return family


def print_family(f: FamilyDesc) -> str:
    """规范文本：注解总是显式写出，闭-闭接合写作 '+'"""
    parts = [f.blocks[0].text()]
    for junction, block in zip(f.junctions, f.blocks[1:]):
        parts.append(junction.text())
        parts.append(block.text())
    body = " ".join(parts)
    return f"({body})^omega" if f.repeated else body


# ============================================================================
# 规范化与元素计数
# ============================================================================

def canonicalize(f: FamilyDesc) -> FamilyDesc:
    """合并相邻的 Fin 块（其间必为闭-闭接合），其余结构保持不变"""
    blocks: List[Block] = [f.blocks[0]]
    junctions: List[Junction] = []
    for junction, block in zip(f.junctions, f.blocks[1:]):
        prev = blocks[-1]
        if prev.kind == BlockKind.FIN and block.kind == BlockKind.FIN:
            blocks[-1] = Block.fin(prev.n + block.n)
        else:
            blocks.append(block)
            junctions.append(junction)
    if len(blocks) == len(f.blocks):
        return f
    return replace(f, blocks=tuple(blocks), junctions=tuple(junctions))


def element_count(f: FamilyDesc) -> CardinalValue:
    """F 本身的元素个数：全为 Fin 时有限，否则 ℵ₀"""
    if f.is_finite:
        return CardinalValue.finite(sum(b.n for b in f.blocks))
    return CardinalValue.aleph0()


def concatenate(left: FamilyDesc, right: FamilyDesc,
                annotation: Optional[Annotation] = None) -> FamilyDesc:
    """拼接两个非重复族；annotation 为 None 时取形状缺省值"""
    if left.repeated or right.repeated:
        raise FamilyValidationError("repeated schemas cannot be concatenated")
    allowed = allowed_annotations(left.blocks[-1], right.blocks[0])
    chosen = allowed[0] if annotation is None else annotation
    return FamilyDesc(
        left.blocks + right.blocks,
        left.junctions + (Junction(chosen),) + right.junctions,
    )
