"""报告数据模型定义模块"""
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import jsonschema

from config import ENGINE_VERSION, REPORT_SCHEMA_PATH, REPORT_SCHEMA_VERSION
from LU_ClosureEngine.errors import ReportValidationError

logger = logging.getLogger(__name__)


@dataclass
class CompletionSummary:
    """完备化 F̄ 摘要"""
    new_points: Dict[str, Any]
    cardinality: Dict[str, Any]
    limits: List[str] = field(default_factory=list)
    components: List[str] = field(default_factory=list)
    dense_interval: bool = False
    discrete: bool = True
    closure_family: Optional[str] = None  # F̄ 可数且离散时的族描述


@dataclass
class GenSetSummary:
    """最小生成集摘要"""
    exists_least: bool
    required: List[str] = field(default_factory=list)
    excluded: List[str] = field(default_factory=list)
    witness: Dict[str, List[str]] = field(default_factory=dict)


@dataclass
class SpectrumSummary:
    """e-谱摘要"""
    value: Dict[str, Any]
    exact: bool
    text: str
    notes: List[str] = field(default_factory=list)


@dataclass
class OracleSummary:
    """预言机核对表"""
    depth: int
    seed: int
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row['passed'] for row in self.rows)


@dataclass
class Report:
    """
    一次命令运行的结构化报告

    对固定的 (输入, seed, depth) 输出确定；不含时间戳。
    """
    command: str
    family: Optional[str] = None
    seed: Optional[int] = None
    completion: Optional[CompletionSummary] = None
    genset: Optional[GenSetSummary] = None
    spectrum: Optional[SpectrumSummary] = None
    oracle: Optional[OracleSummary] = None
    catalog: Optional[List[Dict[str, Any]]] = None
    result: Optional[Dict[str, Any]] = None  # sig / ptoy 命令的结果
    engine_version: str = ENGINE_VERSION
    schema_version: int = REPORT_SCHEMA_VERSION

    def to_dict(self) -> dict:
        """转换为 JSON 字典，省略为 None 的段"""
        data = {
            'schema_version': self.schema_version,
            'engine_version': self.engine_version,
            'command': self.command,
        }
        if self.family is not None:
            data['family'] = self.family
        if self.seed is not None:
            data['seed'] = self.seed
        if self.completion is not None:
            data['completion'] = vars(self.completion).copy()
        if self.genset is not None:
            data['genset'] = vars(self.genset).copy()
        if self.spectrum is not None:
            data['spectrum'] = vars(self.spectrum).copy()
        if self.oracle is not None:
            data['oracle'] = {
                'depth': self.oracle.depth,
                'seed': self.oracle.seed,
                'passed': self.oracle.passed,
                'rows': list(self.oracle.rows),
            }
        if self.catalog is not None:
            data['catalog'] = list(self.catalog)
        if self.result is not None:
            data['result'] = self.result
        return data

    def to_json(self, pretty: bool = False) -> str:
        """序列化；键排序保证同一输入输出字节一致"""
        if pretty:
            return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)
        return json.dumps(self.to_dict(), sort_keys=True, separators=(',', ':'), ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> 'Report':
        """从字典创建 Report 对象"""
        oracle = None
        if 'oracle' in data:
            oracle = OracleSummary(
                depth=data['oracle']['depth'],
                seed=data['oracle']['seed'],
                rows=list(data['oracle'].get('rows', [])),
            )
        return cls(
            command=data['command'],
            family=data.get('family'),
            seed=data.get('seed'),
            completion=CompletionSummary(**data['completion']) if 'completion' in data else None,
            genset=GenSetSummary(**data['genset']) if 'genset' in data else None,
            spectrum=SpectrumSummary(**data['spectrum']) if 'spectrum' in data else None,
            oracle=oracle,
            catalog=data.get('catalog'),
            result=data.get('result'),
            engine_version=data.get('engine_version', ENGINE_VERSION),
            schema_version=data.get('schema_version', REPORT_SCHEMA_VERSION),
        )


_schema_cache: Optional[dict] = None


def load_report_schema(path: str = REPORT_SCHEMA_PATH) -> dict:
    """读取报告 JSON Schema（缓存默认路径）"""
    global _schema_cache
    if path == REPORT_SCHEMA_PATH and _schema_cache is not None:
        return _schema_cache
    with open(path, 'r', encoding='utf-8') as f:
        schema = json.load(f)
    if path == REPORT_SCHEMA_PATH:
        _schema_cache = schema
    return schema


def validate_report(data: dict, schema_path: str = REPORT_SCHEMA_PATH) -> None:
    """
    按 docs/report_schema.json 校验报告字典

    Raises:
        ReportValidationError: 文档不符合 schema
    """
    schema = load_report_schema(schema_path)
    try:
        jsonschema.validate(instance=data, schema=schema)
    except jsonschema.ValidationError as e:
        logger.error(f"Report failed schema validation: {e.message}")
        raise ReportValidationError(f"report does not match schema: {e.message}") from e
