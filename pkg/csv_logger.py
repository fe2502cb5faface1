"""CSV日志记录模块"""
import csv
import logging
import os
from datetime import datetime
from typing import List, Optional

from models import Report

logger = logging.getLogger(__name__)

HEADERS = [
    'timestamp',
    'command',
    'family',
    'seed',
    'depth',
    'item',      # oracle: 检查名；catalog: μ
    'passed',
    'detail',
]


class CSVLogger:
    """CSV日志记录器，把 oracle / catalog 的结果行追加到带时间戳的文件"""

    def __init__(self, base_dir: str = "logs"):
        """
        初始化CSV日志记录器

        Args:
            base_dir: 日志文件存储目录，默认为 "logs"
        """
        self.base_dir = base_dir
        self.csv_file = None
        self.csv_writer = None
        self.file_path = None

        self._create_log_directory()
        self._create_csv_file()

    def _create_log_directory(self):
        """创建日志目录（如果不存在）"""
        try:
            if not os.path.exists(self.base_dir):
                os.makedirs(self.base_dir)
                logger.info(f"Created log directory: {self.base_dir}")
        except OSError as e:
            logger.error(f"Failed to create log directory: {e}")
            raise

    def _create_csv_file(self):
        """创建带时间戳的CSV文件并写入列头"""
        try:
            timestamp = datetime.now().strftime('%Y%m%d_%H%M%S_%f')
            self.file_path = os.path.join(self.base_dir, f"lu_engine_{timestamp}.csv")
            self.csv_file = open(self.file_path, 'w', newline='', encoding='utf-8')
            self.csv_writer = csv.writer(self.csv_file)
            self.csv_writer.writerow(HEADERS)
            self.csv_file.flush()
            logger.info(f"📊 CSV journal: {self.file_path}")
        except OSError as e:
            logger.error(f"Failed to create CSV file: {e}")
            raise

    def log_report(self, report: Report) -> int:
        """
        记录报告中的 oracle 检查行与 catalog 行

        Args:
            report: 报告对象

        Returns:
            写入的行数；没有可记录的行时为 0
        """
        if not self.csv_writer or not self.csv_file:
            logger.error("CSV logger is not initialized")
            return 0

        timestamp = datetime.now().strftime('%Y-%m-%d %H:%M:%S.%f')[:-3]
        rows = []
        if report.oracle is not None:
            for row in report.oracle.rows:
                rows.append([timestamp, report.command, report.family or '', report.oracle.seed,
                             report.oracle.depth, row['check'], row['passed'], row.get('detail', '')])
        if report.catalog is not None:
            for row in report.catalog:
                rows.append([timestamp, report.command, row['family'], '', '',
                             row['mu'], row['matches'], row['spectrum']['exact']])

        try:
            self.csv_writer.writerows(rows)
            self.csv_file.flush()
        except OSError as e:
            # 记录失败不影响报告输出
            logger.error(f"Failed to write to CSV file: {e}")
            return 0
        logger.debug(f"CSV: logged {len(rows)} rows for {report.command}")
        return len(rows)

    def read_rows(self, command: Optional[str] = None) -> List[dict]:
        """
        读回已记录的行

        Args:
            command: 只返回该命令的行；None 表示全部
        """
        if not self.file_path or not os.path.exists(self.file_path):
            logger.warning(f"CSV file does not exist: {self.file_path}")
            return []
        with open(self.file_path, 'r', encoding='utf-8') as f:
            return [row for row in csv.DictReader(f)
                    if command is None or row['command'] == command]

    def close(self):
        """关闭CSV文件"""
        if self.csv_file:
            try:
                self.csv_file.close()
                logger.info(f"CSV log file closed: {self.file_path}")
            except OSError as e:
                logger.error(f"Error closing CSV file: {e}")

    def __enter__(self):
        """支持with语句"""
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """支持with语句"""
        self.close()
        return False
