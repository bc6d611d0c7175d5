"""
Famílias de benchmark: cobertura ponderada (COV), influência bipartida (INF),
localização de facilidades (LOC) e dominação parcial (DOM).

As matrizes ficam em layout por elemento (linha = elemento), de modo que o ganho de
cada elemento é uma redução ao longo da linha e não depende dos demais elementos
consultados no mesmo lote.
"""
from typing import Iterable, List, Sequence, Tuple
import networkx as nx
import numpy as np

from .base import AnchoredState, SubmodularOracle
from ..models.errors import OracleInputError

def _is_integral(values: np.ndarray) -> bool:
    return bool(np.all(np.isfinite(values)) and np.all(values == np.floor(values)))

class CoverageOracle(SubmodularOracle):
    """f(S) = soma dos valores dos itens cobertos pela união dos conjuntos escolhidos"""

    def __init__(self, values: Sequence[float], sets: Sequence[Iterable[int]]):
        super().__init__(len(sets))
        self.values = np.asarray(values, dtype=float)
        self.m = int(self.values.size)

        if self.values.ndim != 1:
            raise OracleInputError("Valores dos itens devem formar um vetor")
        negative = np.flatnonzero(~(self.values >= 0))
        if negative.size:
            raise OracleInputError(f"Valor do item {int(negative[0])} deve ser não negativo")

        self.sets: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(set(int(i) for i in items))) for items in sets)
        self._incidence = np.zeros((self.n, self.m), dtype=float)
        for element, items in enumerate(self.sets):
            for item in items:
                if item < 0 or item >= self.m:
                    raise OracleInputError(
                        f"Item {item} do conjunto {element} fora do intervalo 0..{self.m - 1}",
                        element=element,
                    )
            self._incidence[element, list(items)] = 1.0
        self._coverage_delta = self._incidence.astype(np.int32)
        self.integral = _is_integral(self.values)

    def _evaluate(self, ids: np.ndarray) -> float:
        if ids.size == 0:
            return 0.0
        covered = self._incidence[ids].any(axis=0)
        return float(self.values[covered].sum())

    def anchor(self, elements: Iterable[int]) -> AnchoredState:
        ids = self._check(elements)
        return _CoverageState(self, ids)

class _CoverageState(AnchoredState):
    """Contadores de cobertura por item"""

    def __init__(self, oracle: CoverageOracle, ids: np.ndarray):
        super().__init__(ids.tolist(), oracle._evaluate(ids))
        self.oracle = oracle
        self.counts = oracle._coverage_delta[ids].sum(axis=0) if ids.size else np.zeros(oracle.m, dtype=np.int32)
        self.uncovered = oracle.values * (self.counts == 0)

    def _raw_gains(self, elements: np.ndarray) -> np.ndarray:
        return (self.oracle._incidence[elements] * self.uncovered).sum(axis=1)

    def _absorb(self, element: int) -> None:
        self.counts = self.counts + self.oracle._coverage_delta[element]
        self.uncovered = self.oracle.values * (self.counts == 0)

    def copy(self) -> "_CoverageState":
        clone = _CoverageState.__new__(_CoverageState)
        AnchoredState.__init__(clone, self.members, self.value)
        clone.oracle = self.oracle
        clone.counts = self.counts.copy()
        clone.uncovered = self.uncovered.copy()
        return clone

class DominationOracle(CoverageOracle):
    """f(S) = |∪_{v∈S} N[v]|, cobertura unitária pelas vizinhanças fechadas"""

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]]):
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        for u, v in edges:
            u, v = int(u), int(v)
            for vertex in (u, v):
                if vertex < 0 or vertex >= n:
                    raise OracleInputError(f"Vértice {vertex} fora do intervalo 0..{n - 1}", element=vertex)
            graph.add_edge(u, v)
        graph.remove_edges_from(list(nx.selfloop_edges(graph)))
        self.graph = graph
        self.edges: List[Tuple[int, int]] = sorted((min(u, v), max(u, v)) for u, v in graph.edges())
        closed = [[v] + list(graph.neighbors(v)) for v in range(n)]
        super().__init__(np.ones(n), closed)

class LocationOracle(SubmodularOracle):
    """f(S) = Σ_i max_{j∈S} v_ij, cada cliente atendido pela facilidade mais lucrativa"""

    def __init__(self, profits: Sequence[Sequence[float]]):
        matrix = np.asarray(profits, dtype=float)
        if matrix.ndim != 2:
            raise OracleInputError("Lucros devem formar uma matriz clientes × facilidades")
        super().__init__(matrix.shape[1])
        self.m = int(matrix.shape[0])
        bad = np.argwhere(~(matrix >= 0))
        if bad.size:
            customer, facility = (int(x) for x in bad[0])
            raise OracleInputError(
                f"Lucro negativo v[{customer}][{facility}] = {matrix[customer, facility]}",
                element=facility,
            )
        self.profits = matrix
        self._by_facility = np.ascontiguousarray(matrix.T)
        self.integral = _is_integral(matrix)

    def _evaluate(self, ids: np.ndarray) -> float:
        if ids.size == 0 or self.m == 0:
            return 0.0
        return float(self._by_facility[ids].max(axis=0).sum())

    def anchor(self, elements: Iterable[int]) -> AnchoredState:
        ids = self._check(elements)
        return _LocationState(self, ids)

class _LocationState(AnchoredState):
    """Melhor lucro corrente por cliente"""

    def __init__(self, oracle: LocationOracle, ids: np.ndarray):
        super().__init__(ids.tolist(), oracle._evaluate(ids))
        self.oracle = oracle
        self.best = oracle._by_facility[ids].max(axis=0) if ids.size else np.zeros(oracle.m)

    def _raw_gains(self, elements: np.ndarray) -> np.ndarray:
        return np.maximum(self.oracle._by_facility[elements] - self.best, 0.0).sum(axis=1)

    def _absorb(self, element: int) -> None:
        self.best = np.maximum(self.best, self.oracle._by_facility[element])

    def copy(self) -> "_LocationState":
        clone = _LocationState.__new__(_LocationState)
        AnchoredState.__init__(clone, self.members, self.value)
        clone.oracle = self.oracle
        clone.best = self.best.copy()
        return clone

class InfluenceOracle(SubmodularOracle):
    """
    f(S) = Σ_i (1 − Π_{j∈S} (1 − p_ij)) sobre um grafo bipartido fontes → alvos

    Arestas ausentes têm p_ij = 0. Na avaliação direta os fatores de sobrevivência
    são multiplicados em ordem crescente de id da fonte.
    """

    def __init__(self, n: int, m: int, edges: Iterable[Tuple[int, int, float]]):
        super().__init__(n)
        self.m = int(m)
        self.probabilities = np.zeros((self.n, self.m))
        seen = set()
        normalized_edges = []
        for source, target, p in edges:
            source, target, p = int(source), int(target), float(p)
            if source < 0 or source >= self.n:
                raise OracleInputError(f"Fonte {source} fora do intervalo 0..{self.n - 1}", element=source)
            if target < 0 or target >= self.m:
                raise OracleInputError(f"Alvo {target} fora do intervalo 0..{self.m - 1}", element=source)
            if not 0.0 <= p <= 1.0:
                raise OracleInputError(
                    f"Probabilidade fora de [0,1] na aresta ({source}, {target}): {p}", element=source
                )
            if (source, target) in seen:
                raise OracleInputError(f"Aresta duplicada ({source}, {target})", element=source)
            seen.add((source, target))
            self.probabilities[source, target] = p
            normalized_edges.append((source, target, p))
        self.edges: List[Tuple[int, int, float]] = sorted(normalized_edges)

    def _evaluate(self, ids: np.ndarray) -> float:
        survival = np.ones(self.m)
        for source in ids:
            survival *= 1.0 - self.probabilities[source]
        return float((1.0 - survival).sum())

    def anchor(self, elements: Iterable[int]) -> AnchoredState:
        ids = self._check(elements)
        return _InfluenceState(self, ids)

class _InfluenceState(AnchoredState):
    """Produto de sobrevivência corrente por alvo"""

    def __init__(self, oracle: InfluenceOracle, ids: np.ndarray):
        super().__init__(ids.tolist(), oracle._evaluate(ids))
        self.oracle = oracle
        self.survival = np.ones(oracle.m)
        for source in ids:
            self.survival *= 1.0 - oracle.probabilities[source]

    def _raw_gains(self, elements: np.ndarray) -> np.ndarray:
        return (self.oracle.probabilities[elements] * self.survival).sum(axis=1)

    def _absorb(self, element: int) -> None:
        self.survival = self.survival * (1.0 - self.oracle.probabilities[element])

    def copy(self) -> "_InfluenceState":
        clone = _InfluenceState.__new__(_InfluenceState)
        AnchoredState.__init__(clone, self.members, self.value)
        clone.oracle = self.oracle
        clone.survival = self.survival.copy()
        return clone

def make_cov(m: int, values: Sequence[float], sets: Sequence[Iterable[int]]) -> CoverageOracle:
    """
    Cria um oráculo de cobertura ponderada

    Args:
        m: Quantidade de itens
        values: Valor de cada item (≥ 0)
        sets: Um conjunto de itens (ids 0..m-1) por elemento

    Returns:
        CoverageOracle: Oráculo COV
    """
    if len(values) != m:
        raise OracleInputError(f"Esperados {m} valores de itens, recebidos {len(values)}")
    return CoverageOracle(values, sets)

def make_inf(n: int, m: int, probs: Iterable[Tuple[int, int, float]]) -> InfluenceOracle:
    """Cria um oráculo de influência a partir da lista esparsa (fonte, alvo, p)"""
    return InfluenceOracle(n, m, probs)

def make_loc(n: int, m: int, profits: Sequence[Sequence[float]]) -> LocationOracle:
    """Cria um oráculo de localização a partir da matriz m × n de lucros v_ij"""
    matrix = np.asarray(profits, dtype=float).reshape(m, n) if m * n else np.zeros((m, n))
    return LocationOracle(matrix)

def make_dom(n: int, edges: Iterable[Tuple[int, int]]) -> DominationOracle:
    """Cria um oráculo de dominação parcial; laços e arestas duplicadas são descartados"""
    return DominationOracle(n, edges)

def make_modular(values: Sequence[float]) -> CoverageOracle:
    """Função aditiva f(S) = Σ v_e, realizada como cobertura por conjuntos unitários"""
    return CoverageOracle(values, [[e] for e in range(len(values))])
