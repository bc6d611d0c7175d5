from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from pydantic import BaseModel, Field

from .config import SolverConfig
from .errors import InstanceValidationError
from ..oracles.base import SubmodularOracle, normalized

# Tolerância absoluta de viabilidade de peso, compartilhada por solver, guloso e força bruta
FEASIBILITY_TOL = 1e-9

def fits(weight: float, budget: float) -> bool:
    """Verifica se um peso cabe no orçamento (com a tolerância de viabilidade)"""
    return weight <= budget + FEASIBILITY_TOL

class ProblemKind(str, Enum):
    """Famílias de benchmark suportadas"""
    COV = "COV"
    INF = "INF"
    LOC = "LOC"
    DOM = "DOM"

class WeightScheme(str, Enum):
    """Esquemas de geração de pesos"""
    NORMAL = "normal"
    UNIFORM = "uniform"
    UNIT = "unit"

class SolveStatus(str, Enum):
    """Status final de uma execução"""
    OPTIMAL = "optimal"
    TIME_LIMIT = "time_limit"
    NODE_LIMIT = "node_limit"

class WeightSpec(BaseModel):
    """Diretiva de pesos (esquema + semente) expandida na carga da instância"""
    scheme: WeightScheme
    seed: int = Field(ge=0)

class Instance:
    """Instância do SKP: oráculo, pesos por elemento e orçamento W"""

    def __init__(
        self,
        kind: ProblemKind,
        oracle: SubmodularOracle,
        weights: Sequence[float],
        budget: float,
        weight_spec: Optional[WeightSpec] = None,
        name: Optional[str] = None,
    ):
        self.kind = kind
        self.oracle = normalized(oracle)
        self.weights = np.asarray(weights, dtype=float)
        self.budget = float(budget)
        self.weight_spec = weight_spec
        self.name = name or f"{kind.value}.{oracle.n}"

        if self.weights.shape != (oracle.n,):
            raise InstanceValidationError(
                f"Esperados {oracle.n} pesos, recebidos {self.weights.size}"
            )
        bad = np.flatnonzero(~(self.weights > 0))
        if bad.size:
            raise InstanceValidationError(
                f"Peso do elemento {int(bad[0])} deve ser positivo: {self.weights[bad[0]]}",
                element=int(bad[0]),
            )
        if not self.budget > 0:
            raise InstanceValidationError(f"Orçamento W deve ser positivo: {self.budget}")

    @property
    def n(self) -> int:
        """Quantidade de elementos do universo"""
        return self.oracle.n

    def weight_of(self, elements: Sequence[int]) -> float:
        """Peso total w(S)"""
        return float(sum(self.weights[e] for e in elements))

    def with_budget(self, budget: float) -> "Instance":
        """Retorna a mesma instância com outro orçamento"""
        return Instance(self.kind, self.oracle, self.weights, budget, self.weight_spec, self.name)

class GainProfile:
    """Coeficientes do KNAPSACK-IP de um nó: ganhos f(e|S_T), pesos e orçamento W_T"""

    __slots__ = ("gains", "weights", "budget", "ids")

    def __init__(self, gains: Sequence[float], weights: Sequence[float], budget: float,
                 ids: Optional[Sequence[int]] = None):
        self.gains = np.asarray(gains, dtype=float)
        self.weights = np.asarray(weights, dtype=float)
        self.budget = float(budget)
        self.ids = (np.arange(self.gains.size) if ids is None
                    else np.asarray(ids, dtype=np.int64))

    def __len__(self) -> int:
        return int(self.gains.size)

class SearchNode:
    """
    Nó T=(S_T, C_T, W_T) da árvore de busca

    inherited_gains guarda os ganhos herdados do pai (limitantes superiores de f(e|S_T)
    por submodularidade); inherited_exact marca quais deles já são exatos para S_T.
    """

    __slots__ = ("selected", "candidates", "remaining_budget", "base_value",
                 "inherited_gains", "inherited_exact", "depth")

    def __init__(
        self,
        selected: Tuple[int, ...],
        candidates: np.ndarray,
        remaining_budget: float,
        base_value: float = 0.0,
        inherited_gains: Optional[np.ndarray] = None,
        inherited_exact: Optional[np.ndarray] = None,
        depth: int = 0,
    ):
        self.selected = selected
        self.candidates = np.asarray(candidates, dtype=np.int64)
        self.remaining_budget = float(remaining_budget)
        self.base_value = float(base_value)
        self.inherited_gains = inherited_gains
        self.inherited_exact = inherited_exact
        self.depth = depth

    @classmethod
    def root(cls, instance: Instance) -> "SearchNode":
        """Nó raiz (∅, 𝒰, W)"""
        return cls((), np.arange(instance.n, dtype=np.int64), instance.budget)

    def __repr__(self) -> str:
        return (f"SearchNode(S={list(self.selected)}, C={self.candidates.tolist()}, "
                f"W={self.remaining_budget:.6g})")

class GreedyStep:
    """Uma iteração do GreedyAdd: elemento examinado e estado de X depois dela"""

    __slots__ = ("element", "gain", "value", "weight", "added", "consecutive")

    def __init__(self, element: int, gain: float, value: float, weight: float,
                 added: bool, consecutive: bool):
        self.element = element
        self.gain = gain
        self.value = value
        self.weight = weight
        self.added = added
        self.consecutive = consecutive

class TraceProfile:
    """
    Vetor de ganhos g(e|X_i) sobre C_T para um conjunto distinto X_i da sequência

    order, quando presente, são as posições de C_T por ganho unitário não crescente
    (empates pelo menor id) segundo gains.
    """

    __slots__ = ("size", "value", "weight", "gains", "exact", "order")

    def __init__(self, size: int, value: float, weight: float, gains: Optional[np.ndarray], exact: bool,
                 order: Optional[np.ndarray] = None):
        self.size = size
        self.value = value
        self.weight = weight
        self.gains = gains
        self.exact = exact
        self.order = order

class GreedyTrace:
    """
    Sequência 𝒳 produzida pelo GreedyAdd

    steps inclui as iterações que descartaram o elemento por peso (X_i se repete);
    profiles tem uma entrada por conjunto distinto, começando em X_0 = ∅.
    """

    def __init__(self, candidates: np.ndarray):
        self.candidates = candidates
        self.steps: List[GreedyStep] = []
        self.selected: List[int] = []
        self.profiles: List[TraceProfile] = []
        # g(X̂) e w(X̂)
        self.value = 0.0
        self.weight = 0.0
        # ganhos recalculados pelo oráculo durante a execução
        self.refreshed = 0

    @property
    def prefix_consecutive_p(self) -> int:
        """Maior p tal que as p primeiras iterações adicionaram elementos"""
        p = 0
        for step in self.steps:
            if not step.added:
                break
            p += 1
        return p

    def prefix(self, size: int) -> List[int]:
        """X_i como lista ordenada pela seleção"""
        return self.selected[:size]

class SolveStatistics(BaseModel):
    """Contadores por execução (podas, reduções, atualizações preguiçosas)"""
    pruned_by_bound: int = 0
    children_cut: int = 0
    reduced_rule1: int = 0
    reduced_rule2: int = 0
    lazy_refreshed: int = 0
    lazy_kept: int = 0
    incumbent_updates: int = 0
    greedy_runs: int = 0
    max_depth: int = 0

class SolveReport(BaseModel):
    """Resultado de uma execução do solver"""
    optimum: float
    solution: List[int] = Field(default_factory=list)
    nodes_visited: int = 0
    oracle_calls: int = 0
    wall_time: float = 0.0
    status: SolveStatus = SolveStatus.OPTIMAL
    root_bound: Optional[float] = None
    config: SolverConfig = Field(default_factory=SolverConfig)
    instance_hash: str = ""
    kind: Optional[ProblemKind] = None
    n: int = 0
    budget: float = 0.0
    weight_scheme: Optional[WeightScheme] = None
    weight_seed: Optional[int] = None
    statistics: SolveStatistics = Field(default_factory=SolveStatistics)

    @property
    def is_optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL

class NodeSnapshot:
    """Fotografia de um nó entregue ao observador de instrumentação"""

    __slots__ = ("node", "gains", "trace", "bounds", "incumbent", "pruned")

    def __init__(self, node: SearchNode, gains: np.ndarray, trace: Optional[GreedyTrace],
                 bounds: Dict[str, float], incumbent: float, pruned: bool):
        self.node = node
        self.gains = gains
        self.trace = trace
        self.bounds = bounds
        self.incumbent = incumbent
        self.pruned = pruned

class VerificationResult(BaseModel):
    """Comparação entre a força bruta e as variantes do solver em uma instância"""
    optimum: float
    solution: List[int] = Field(default_factory=list)
    reports: List[SolveReport] = Field(default_factory=list)
    disagreements: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.disagreements

    @property
    def agreeing(self) -> int:
        """Quantidade de variantes com status ótimo que concordam com a força bruta"""
        return sum(1 for r in self.reports if r.is_optimal) - len(self.disagreements)
