"""
LU 族闭包分析引擎

可数 LU 族（块序列描述）的完备化、最小生成集、e-谱、
有限深度预言机，以及签名演算与基数族 P-闭包。
"""

from .errors import EngineError
from .family_core import CardinalValue, FamilyDesc, parse_family, print_family
from .completion import complete
from .genset import CutPos, least_generating_set, split_at_cut
from .spectrum import construct_family_with_spectrum, e_spectrum, spectrum_catalog
from .oracle import TriBool, in_closure, realize, verify_family

__version__ = "1.0.0"

__all__ = [
    "EngineError",
    "CardinalValue",
    "FamilyDesc",
    "parse_family",
    "print_family",
    "complete",
    "CutPos",
    "least_generating_set",
    "split_at_cut",
    "construct_family_with_spectrum",
    "e_spectrum",
    "spectrum_catalog",
    "TriBool",
    "in_closure",
    "realize",
    "verify_family",
]
