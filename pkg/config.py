"""系统配置文件"""
import os

from dotenv import load_dotenv

# 加载 .env 中的覆盖值
load_dotenv()


# ============================================================================
# 引擎版本与报告格式
# ============================================================================

# 引擎版本（写入每份报告）
ENGINE_VERSION = "1.0.0"

# 报告 JSON 结构版本，对应 docs/report_schema.json
REPORT_SCHEMA_VERSION = 1

# 报告 JSON Schema 路径
REPORT_SCHEMA_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                  "docs", "report_schema.json")


# ============================================================================
# 预言机配置
# ============================================================================

# 探针深度范围 [MIN_DEPTH, MAX_DEPTH]
MIN_DEPTH = 8
MAX_DEPTH = 256

# 默认探针深度
DEFAULT_DEPTH = int(os.environ.get("LU_ENGINE_DEFAULT_DEPTH", "32"))

# 默认随机种子（只影响键布局，不影响判定结果）
DEFAULT_SEED = int(os.environ.get("LU_ENGINE_DEFAULT_SEED", "0"))

# 每个实现预先计算的下标个数，需 >= MAX_DEPTH
REALIZATION_CAPACITY = 512

# 孤立模式的最大探针大小
ISOLATION_MAX_PROBE = 16

# 抽样点个数
ORACLE_SAMPLE_POINTS = 24

# 随机定律核对次数
ORACLE_RANDOM_TRIALS = 24


# ============================================================================
# 谱目录配置
# ============================================================================

# catalog 命令默认覆盖的有限 μ（另加 ℵ₀ 一行）
CATALOG_MU_RANGE = range(0, 9)


# ============================================================================
# CSV 记录配置
# ============================================================================

# 是否默认写 CSV 记录（命令行 --csv 也可开启）
ENABLE_CSV_LOG = False

# CSV 记录目录
CSV_LOG_DIR = os.environ.get("LU_ENGINE_CSV_LOG_DIR", "logs")


# ============================================================================
# 日志配置
# ============================================================================

# 日志级别 (DEBUG, INFO, WARNING, ERROR, CRITICAL)
LOG_LEVEL = os.environ.get("LU_ENGINE_LOG_LEVEL", "WARNING").upper()

# 日志格式
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# 日志时间格式
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
