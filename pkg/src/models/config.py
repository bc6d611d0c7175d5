import os
from enum import Enum
from typing import Optional
from pydantic import BaseModel, Field, model_validator

class BoundKind(str, Enum):
    """Limitantes superiores disponíveis"""
    KNAPSACK = "k"
    FRACTIONAL = "fk"
    DOMINATION = "dom"
    REFINED_SUBSET = "rs"

class BranchingKind(str, Enum):
    """Esquemas de ramificação"""
    BASIC = "basic"
    DUAL = "dual"

class ReportFormat(str, Enum):
    """Formatos de saída do relatório"""
    JSON = "json"
    CSV_ROW = "csv-row"

class LogLevel(str, Enum):
    """Níveis aceitos em SKP_LOG"""
    ERROR = "error"
    INFO = "info"
    DEBUG = "debug"

class SolverConfig(BaseModel):
    """Configuração de uma execução do branch-and-bound"""
    bound: BoundKind = BoundKind.REFINED_SUBSET
    branching: BranchingKind = BranchingKind.DUAL
    epsilon: float = Field(default=1.0, gt=0)
    # None resolve para o padrão do limitante (desligado para k e fk)
    primal_heuristic: Optional[bool] = None
    lazy_update: bool = True
    reductions: bool = True
    time_limit: Optional[float] = Field(default=1800.0, ge=0)
    node_limit: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _resolve_primal_heuristic(self) -> "SolverConfig":
        """Resolve o padrão da heurística primal e valida a combinação com a ramificação dual"""
        if self.primal_heuristic is None:
            self.primal_heuristic = (
                self.branching == BranchingKind.DUAL
                or self.bound not in (BoundKind.KNAPSACK, BoundKind.FRACTIONAL)
            )
        if self.branching == BranchingKind.DUAL and not self.primal_heuristic:
            raise ValueError("ramificação dual exige a heurística primal (GreedyAdd) ligada")
        return self

    @property
    def label(self) -> str:
        """Nome da variante no estilo basic-fk / dual-rs"""
        return f"{self.branching.value}-{self.bound.value}"

class LogSettings(BaseModel):
    """Configuração de logs lida do ambiente"""
    level: LogLevel = LogLevel.INFO

    @classmethod
    def from_env(cls) -> "LogSettings":
        """Lê SKP_LOG (após o .env ter sido carregado)"""
        raw = os.environ.get("SKP_LOG", LogLevel.INFO.value).strip().lower()
        return cls(level=raw)

    @property
    def loguru_level(self) -> str:
        return self.level.value.upper()
