"""
LU闭包引擎异常定义

所有引擎内部错误都继承自 EngineError，CLI 根据异常类型映射退出码：
解析/校验类错误 → 2，其余用法错误 → 1。
"""
from typing import Optional


class EngineError(Exception):
    """引擎异常基类"""


class FamilySyntaxError(EngineError):
    """族描述DSL语法错误（携带出错位置）"""

    def __init__(self, message: str, position: Optional[int] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.position = position
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"line {line}, column {column}: {message}"
        elif position is not None:
            message = f"position {position}: {message}"
        super().__init__(message)


class FamilyValidationError(EngineError):
    """族描述语义错误：fin(0)、注解与端点形状不符、重复模式接缝非法等"""


class CutPositionError(EngineError):
    """切分位置对给定族无效"""


class CandidateError(EngineError):
    """候选极限集描述格式错误"""


class SignatureError(EngineError):
    """签名轮廓错误：语言不一致、元数非法、全空轮廓、前置条件不满足"""


class CardFamilyError(EngineError):
    """基数族输入不满足前置条件（非闭集 / 非开集）"""


class UnsupportedCardinalError(EngineError):
    """目标基数不受构造支持"""


class ReportValidationError(EngineError):
    """报告文档不符合 docs/report_schema.json"""
