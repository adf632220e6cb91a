from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .ground import ElementSet
from .lattice import CyclicFlatFamily


@dataclass(frozen=True)
class Report:
    """What a command ran on and what it produced."""

    command: str
    input_digest: str
    subject: Any
    options: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class TableEntry:
    subset: ElementSet
    value: int


@dataclass(frozen=True)
class OracleResult:
    mode: str
    ground_size: int
    holds: Optional[bool] = None
    witness: Optional[ElementSet] = None
    value: Optional[int] = None
    table: List[TableEntry] = field(default_factory=list)
    flats: Optional[CyclicFlatFamily] = None


@dataclass(frozen=True)
class DualizeResult:
    output_format: str
    representation: str
    normalized_from: Optional[int] = None


@dataclass(frozen=True)
class FuzzResult:
    kind: str
    seed: int
    count: int
    instances: int = 0
    checks: int = 0
    yes: int = 0
    no: int = 0
    disagreements: List[Tuple[str, int]] = field(default_factory=list)
    pinned: Optional[str] = None
