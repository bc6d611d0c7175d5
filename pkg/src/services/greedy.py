import heapq
from typing import List, Optional, Tuple
import numpy as np
from loguru import logger

from ..models.entities import FEASIBILITY_TOL, GreedyStep, GreedyTrace, SearchNode, TraceProfile, fits
from ..oracles.base import AnchoredState, SubmodularOracle
from .bounds import unit_gain_order

class CandidatePool:
    """
    Conjunto de trabalho do GreedyAdd

    Cada posição guarda uma chave de ganho (exata ou herdada) e uma marca de
    frescor. Chaves velhas são limitantes superiores do ganho verdadeiro, então o
    topo do heap só precisa ser recalculado até que um elemento fresco apareça.
    Com todas as chaves frescas o heap é dispensado: as escolhas seguem uma única
    ordenação por ganho unitário até a próxima adição.
    """

    def __init__(self, candidates: np.ndarray, weights: np.ndarray, keys: np.ndarray, fresh: np.ndarray):
        self.candidates = candidates
        self.weights = weights
        self.keys = keys
        self.fresh = fresh
        self.active = np.ones(candidates.size, dtype=bool)
        self.size = int(candidates.size)
        self.recomputations = 0
        self.order: Optional[np.ndarray] = None
        self._heap: List[Tuple[float, int, int]] = []
        self._walk: Optional[List[int]] = None
        self._cursor = 0
        if fresh.all():
            self._start_walk(unit_gain_order(keys, weights, candidates))
        else:
            self.rebuild()

    def __len__(self) -> int:
        return self.size

    def rebuild(self) -> None:
        """Reconstrói o heap a partir das chaves atuais das posições ativas"""
        self._walk = None
        self._heap = [
            (-(float(self.keys[pos]) / float(self.weights[pos])), int(self.candidates[pos]), int(pos))
            for pos in np.flatnonzero(self.active)
        ]
        heapq.heapify(self._heap)

    def _start_walk(self, order: np.ndarray) -> None:
        self.order = order
        self._walk = order[self.active[order]].tolist()
        self._cursor = 0
        self._heap = []

    def use_fresh_keys(self, keys: np.ndarray, order: Optional[np.ndarray] = None) -> np.ndarray:
        """
        Substitui todas as chaves por ganhos exatos em relação ao estado atual

        Args:
            keys: Ganhos exatos por posição (copiados)
            order: Ordem por ganho unitário de todas as posições, se já conhecida

        Returns:
            np.ndarray: A ordem usada
        """
        self.keys = keys.copy()
        self.fresh = np.ones(self.candidates.size, dtype=bool)
        if order is None:
            order = unit_gain_order(self.keys, self.weights, self.candidates)
        self._start_walk(order)
        return order

    def mark_stale(self) -> None:
        """
        Invalida todas as chaves depois de uma adição

        As chaves passam a ser uma cópia, de modo que o vetor de ganhos recebido
        do nó só é atualizado enquanto X = ∅.
        """
        self.keys = self.keys.copy()
        self.fresh = np.zeros(self.candidates.size, dtype=bool)
        if self._walk is not None:
            self.rebuild()

    def remove(self, pos: int) -> None:
        self.active[pos] = False
        self.size -= 1

    def best(self, state: AnchoredState) -> Optional[Tuple[int, int, float]]:
        """
        Melhor elemento por ganho unitário verdadeiro, recalculando só o necessário

        Returns:
            Optional[Tuple[int, int, float]]: (elemento, posição, ganho) ou None com o pool vazio
        """
        if self._walk is not None:
            while self._cursor < len(self._walk):
                pos = self._walk[self._cursor]
                self._cursor += 1
                if self.active[pos]:
                    return int(self.candidates[pos]), pos, float(self.keys[pos])
            return None

        while self._heap:
            _, element, pos = self._heap[0]
            if not self.active[pos]:
                heapq.heappop(self._heap)
                continue
            if self.fresh[pos]:
                heapq.heappop(self._heap)
                return element, pos, float(self.keys[pos])
            gain = state.gain(element, disjoint=True)
            self.recomputations += 1
            self.keys[pos] = gain
            self.fresh[pos] = True
            heapq.heapreplace(self._heap, (-(gain / float(self.weights[pos])), element, pos))
        return None

    def best_eager(self, state: AnchoredState) -> Optional[Tuple[int, int, float]]:
        """Mesma escolha de best(), recalculando todo o pool"""
        positions = np.flatnonzero(self.active)
        if positions.size == 0:
            return None
        gains = state.gains(self.candidates[positions], disjoint=True)
        self.recomputations += int(positions.size)
        self.keys[positions] = gains
        self.fresh[positions] = True
        units = gains / self.weights[positions]
        pick = int(positions[np.lexsort((self.candidates[positions], -units))[0]])
        return int(self.candidates[pick]), pick, float(self.keys[pick])

def lazy_best(pool: CandidatePool, state: AnchoredState) -> Optional[Tuple[int, float]]:
    """
    Retira do pool o elemento de maior ganho unitário atual em relação ao estado

    Args:
        pool: Pool com chaves possivelmente velhas (limitantes superiores)
        state: Estado ancorado em S_T ∪ X

    Returns:
        Optional[Tuple[int, float]]: (elemento, ganho) ou None quando o pool está vazio
    """
    picked = pool.best(state)
    if picked is None:
        return None
    element, pos, gain = picked
    pool.remove(pos)
    return element, gain

def greedy_add(
    node: SearchNode,
    oracle: SubmodularOracle,
    weights: np.ndarray,
    state: Optional[AnchoredState] = None,
    gains: Optional[np.ndarray] = None,
    exact: Optional[np.ndarray] = None,
    lazy: bool = True,
    record_profiles: bool = False,
) -> GreedyTrace:
    """
    Executa o GreedyAdd a partir de um nó

    Escolhe repetidamente o candidato de maior f(v|S_T ∪ X)/w_v, adiciona-o a X se
    couber em W_T e o remove do pool em qualquer caso. Empates ficam com o menor id.

    Args:
        node: Nó T = (S_T, C_T, W_T)
        oracle: Oráculo da instância
        weights: Pesos de todo o universo
        state: Estado ancorado em S_T (copiado, não é alterado)
        gains: Ganhos por candidato em S_T; atualizados no lugar enquanto X = ∅
        exact: Marca quais ganhos já são exatos; atualizada junto com gains
        lazy: Usa o pool preguiçoso em vez de recalcular tudo a cada iteração
        record_profiles: Registra os ganhos exatos g(·|X_i) sobre C_T para cada X_i

    Returns:
        GreedyTrace: Sequência de iterações, X̂ e perfis de ganho
    """
    candidates = node.candidates
    trace = GreedyTrace(candidates)
    if candidates.size == 0:
        trace.profiles.append(TraceProfile(0, 0.0, 0.0, np.zeros(0), True))
        return trace

    state = oracle.anchor(node.selected) if state is None else state.copy()
    if gains is None:
        gains = state.gains(candidates, disjoint=True)
        exact = np.ones(candidates.size, dtype=bool)
        trace.refreshed += int(candidates.size)
    elif exact is None:
        exact = np.zeros(candidates.size, dtype=bool)

    candidate_weights = weights[candidates]
    pool = CandidatePool(candidates, candidate_weights, gains, exact)
    # a ordem de X_0 só vale enquanto as chaves não forem reescritas pela versão completa
    trace.profiles.append(TraceProfile(0, 0.0, 0.0, gains, False, pool.order if lazy else None))

    budget = node.remaining_budget
    in_solution = np.zeros(candidates.size, dtype=bool)
    consecutive = True
    while len(pool):
        picked = pool.best(state) if lazy else pool.best_eager(state)
        element, pos, gain = picked
        pool.remove(pos)

        if not fits(trace.weight + candidate_weights[pos], budget):
            consecutive = False
            trace.steps.append(GreedyStep(element, gain, trace.value, trace.weight, False, False))
            continue

        state.add(element, gain)
        trace.value += gain
        trace.weight += float(candidate_weights[pos])
        trace.selected.append(element)
        in_solution[pos] = True
        trace.steps.append(GreedyStep(element, gain, trace.value, trace.weight, True, consecutive))

        if record_profiles:
            rest = ~in_solution
            profile_gains = np.zeros(candidates.size)
            profile_gains[rest] = state.gains(candidates[rest], disjoint=True)
            trace.refreshed += int(rest.sum())
            order = pool.use_fresh_keys(profile_gains)
            trace.profiles.append(
                TraceProfile(len(trace.selected), trace.value, trace.weight, profile_gains, True, order)
            )
        else:
            pool.mark_stale()
            trace.profiles.append(
                TraceProfile(len(trace.selected), trace.value, trace.weight, None, False)
            )

    # o perfil de X_0 usa os ganhos do nó, exatos apenas se todos foram confirmados
    trace.profiles[0].exact = bool(exact.all())
    trace.refreshed += pool.recomputations
    logger.trace(f"GreedyAdd (profundidade {node.depth}): |X̂|={len(trace.selected)} g={trace.value:.6g}")
    return trace

def best_singleton(gains: np.ndarray, weights: np.ndarray, budget: float) -> float:
    """
    Maior ganho de um único candidato que cabe no orçamento

    Args:
        gains: Ganhos f(e|S_T) por candidato
        weights: Pesos dos mesmos candidatos
        budget: Orçamento W_T

    Returns:
        float: max ganho viável, ou 0 se nenhum candidato couber
    """
    if gains.size == 0:
        return 0.0
    feasible = weights <= budget + FEASIBILITY_TOL
    return float(gains[feasible].max()) if feasible.any() else 0.0
