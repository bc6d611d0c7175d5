import sys
import time
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple
import numpy as np
from loguru import logger

from ..models.config import BoundKind, BranchingKind, SolverConfig
from ..models.entities import (
    FEASIBILITY_TOL, GainProfile, GreedyTrace, Instance, NodeSnapshot, SearchNode,
    SolveReport, SolveStatistics, SolveStatus, VerificationResult, fits,
)
from ..models.errors import UniverseTooLargeError
from ..oracles.base import AnchoredState, CountingOracle, SubmodularOracle
from .bounds import (
    domination_bound, fractional_knapsack_batch, fractional_knapsack_bound,
    fractional_knapsack_sorted, knapsack_ptas_bound, refined_subset_bound, unit_gain_order,
)
from .greedy import best_singleton, greedy_add
from .instances import instance_fingerprint

# Maior universo aceito pela enumeração exaustiva
BRUTE_FORCE_LIMIT = 25

# Intervalo (em nós) entre verificações do limite de tempo
TIME_CHECK_INTERVAL = 1024

NodeObserver = Callable[[NodeSnapshot], None]

class ChildNode:
    """Filho materializado: nó, limitante de corte e elementos adicionados ao pai"""

    __slots__ = ("node", "cutoff", "added", "added_gains")

    def __init__(self, node: SearchNode, cutoff: float, added: Sequence[int],
                 added_gains: Sequence[Optional[float]]):
        self.node = node
        self.cutoff = cutoff
        self.added = tuple(added)
        self.added_gains = tuple(added_gains)

    def __repr__(self) -> str:
        return f"ChildNode({self.node!r}, cutoff={self.cutoff:.6g})"

class _SearchLimitReached(Exception):
    def __init__(self, status: SolveStatus):
        super().__init__(status.value)
        self.status = status

def prune_tolerance(incumbent: float, integral: bool) -> float:
    """Folga da comparação ub ≤ lb*: zero para oráculos inteiros, relativa 1e-9 nos demais"""
    return 0.0 if integral else 1e-9 * max(1.0, abs(incumbent))

def lazy_refresh(
    node: SearchNode,
    state: AnchoredState,
    weights: np.ndarray,
    incumbent: float,
    lazy: bool = True,
) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Atualiza os ganhos herdados do pai

    Só recalcula elementos não exatos cujo ganho unitário herdado excede
    (lb* − f(S_T))/W_T; os demais mantêm o valor herdado, que continua sendo um
    limitante superior de f(e|S_T).

    Args:
        node: Nó com inherited_gains (None na raiz)
        state: Estado ancorado em S_T
        weights: Pesos de todo o universo
        incumbent: lb* corrente
        lazy: Com False todos os ganhos são recalculados

    Returns:
        Tuple[np.ndarray, np.ndarray, int]: (ganhos, marcas de exatidão, quantidade recalculada)
    """
    candidates = node.candidates
    if node.inherited_gains is None or not lazy:
        return state.gains(candidates, disjoint=True), np.ones(candidates.size, dtype=bool), int(candidates.size)

    gains = np.array(node.inherited_gains, dtype=float)
    exact = (np.zeros(candidates.size, dtype=bool) if node.inherited_exact is None
             else np.array(node.inherited_exact, dtype=bool))
    if node.remaining_budget <= FEASIBILITY_TOL:
        return gains, exact, 0

    threshold = (incumbent - node.base_value) / node.remaining_budget
    stale = ~exact & (gains / weights[candidates] > threshold)
    if stale.any():
        gains[stale] = state.gains(candidates[stale], disjoint=True)
        exact[stale] = True
    return gains, exact, int(stale.sum())

def reduce_node(
    node: SearchNode,
    gains: np.ndarray,
    exact: np.ndarray,
    weights: np.ndarray,
    incumbent: float,
    tolerance: float = 0.0,
) -> Tuple[SearchNode, np.ndarray, np.ndarray, int, int]:
    """
    Aplica as duas regras de redução ao conjunto candidato

    Regra 1 descarta e com w_e > W_T ou f(e|S_T) = 0. Regra 2 descarta e quando
    f(S_T) + f(e|S_T) + ub_fk(C_T, W_T − w_e) ≤ lb*.

    Returns:
        Tuple: (nó reduzido, ganhos, marcas de exatidão, removidos pela regra 1, removidos pela regra 2)
    """
    candidates = node.candidates
    candidate_weights = weights[candidates]
    budget = node.remaining_budget

    keep = (candidate_weights <= budget + FEASIBILITY_TOL) & (gains > 0)
    removed_rule1 = int(candidates.size - keep.sum())
    positions = np.flatnonzero(keep)

    removed_rule2 = 0
    if positions.size:
        order = unit_gain_order(gains[positions], candidate_weights[positions], candidates[positions])
        sorted_positions = positions[order]
        relaxation = fractional_knapsack_batch(
            gains[sorted_positions],
            candidate_weights[sorted_positions],
            budget - candidate_weights[positions],
        )
        dominated = node.base_value + gains[positions] + relaxation <= incumbent + tolerance
        removed_rule2 = int(dominated.sum())
        positions = positions[~dominated]

    if removed_rule1 == 0 and removed_rule2 == 0:
        return node, gains, exact, 0, 0

    reduced = SearchNode(
        node.selected, candidates[positions], budget, node.base_value,
        node.inherited_gains, node.inherited_exact, node.depth,
    )
    return reduced, gains[positions], exact[positions], removed_rule1, removed_rule2

def branch_basic(
    node: SearchNode,
    gains: np.ndarray,
    weights: np.ndarray,
    incumbent: float = float("-inf"),
    exact: Optional[np.ndarray] = None,
    tolerance: float = 0.0,
) -> List[ChildNode]:
    """
    Ramificação básica

    Ordena C_T por ganho unitário e gera T_i = (S_T ∪ {c_i}, C_T ∖ C_≤i, W_T − w_ci).
    A geração para no primeiro i em que f(S_T) + ub_fk(C_T ∖ C_≤i, W_T) ≤ lb*;
    filhos com orçamento negativo não são gerados.

    Args:
        node: Nó sendo ramificado
        gains: Ganhos (exatos ou limitantes) por candidato
        weights: Pesos de todo o universo
        incumbent: lb* no momento da geração
        exact: Marca quais ganhos são exatos (evita recálculo ao montar o filho)
        tolerance: Folga da comparação com lb*

    Returns:
        List[ChildNode]: Filhos na ordem de visita
    """
    candidates = node.candidates
    if candidates.size == 0:
        return []
    candidate_weights = weights[candidates]
    order = unit_gain_order(gains, candidate_weights, candidates)
    ordered = candidates[order]
    ordered_gains = gains[order]
    ordered_weights = candidate_weights[order]
    ordered_exact = np.zeros(candidates.size, dtype=bool) if exact is None else exact[order]

    size = candidates.size
    cutoffs = node.base_value + fractional_knapsack_batch(
        ordered_gains, ordered_weights, np.full(size, node.remaining_budget), np.arange(size)
    )

    children: List[ChildNode] = []
    for i in range(size):
        if cutoffs[i] <= incumbent + tolerance:
            break
        if not fits(ordered_weights[i], node.remaining_budget):
            continue
        element = int(ordered[i])
        child = SearchNode(
            node.selected + (element,),
            ordered[i + 1:],
            max(node.remaining_budget - ordered_weights[i], 0.0),
            node.base_value + ordered_gains[i],
            ordered_gains[i + 1:],
            np.zeros(size - i - 1, dtype=bool),
            node.depth + 1,
        )
        known = float(ordered_gains[i]) if ordered_exact[i] else None
        children.append(ChildNode(child, float(cutoffs[i]), (element,), (known,)))
    return children

def dual_order(node: SearchNode, trace: GreedyTrace, gains: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Posições de C_T na ordem da ramificação dual: X̂ na ordem de seleção, depois o resto por ganho unitário"""
    candidates = node.candidates
    position = {int(e): pos for pos, e in enumerate(candidates.tolist())}
    chosen = np.array([position[e] for e in trace.selected], dtype=np.int64)
    base = trace.profiles[0] if trace.profiles else None
    if base is not None and base.order is not None and base.gains is gains:
        outside = np.ones(candidates.size, dtype=bool)
        outside[chosen] = False
        rest = base.order[outside[base.order]]
    else:
        rest = np.setdiff1d(np.arange(candidates.size), chosen)
        if rest.size:
            rest = rest[unit_gain_order(gains[rest], weights[candidates[rest]], candidates[rest])]
    return np.concatenate((chosen, rest)).astype(np.int64)

def branch_dual(
    node: SearchNode,
    trace: GreedyTrace,
    gains: np.ndarray,
    weights: np.ndarray,
    incumbent: float = float("-inf"),
    exact: Optional[np.ndarray] = None,
    tolerance: float = 0.0,
) -> List[ChildNode]:
    """
    Ramificação dual guiada pela sequência do GreedyAdd

    Com C_T ordenado como X̂ seguido do resto, gera T_0 = (S_T, C_T ∖ C_≤1, W_T) e
    T_i = (S_T ∪ C_≤i, C_T ∖ C_≤i+1, W_T − w(C_≤i)) para i = 1..|X̂|. Os filhos
    seguintes são inviáveis, pois todo elemento fora de X̂ foi descartado por peso.
    A geração para no primeiro i com f(S_T) + g(X_i) + ub_fk(g(·|X_i), C_T ∖ C_≤i,
    W_T − w(C_≤i)) ≤ lb*. Cada T_i herda os ganhos g(·|X_i) registrados pelo guloso.

    Args:
        node: Nó sendo ramificado
        trace: Sequência do GreedyAdd neste nó
        gains: Ganhos do nó em S_T (perfil de X_0)
        weights: Pesos de todo o universo
        incumbent: lb* no momento da geração
        exact: Marca quais ganhos do nó são exatos
        tolerance: Folga da comparação com lb*

    Returns:
        List[ChildNode]: Filhos na ordem de visita (T_0 primeiro)
    """
    candidates = node.candidates
    if candidates.size == 0:
        return []
    candidate_weights = weights[candidates]
    node_exact = np.zeros(candidates.size, dtype=bool) if exact is None else exact
    order = dual_order(node, trace, gains, weights)
    ordered = candidates[order]
    ordered_weights = candidate_weights[order]
    prefix_weight = np.concatenate(([0.0], np.cumsum(ordered_weights)))

    added_gains = [step.gain for step in trace.steps if step.added]
    base_order = trace.profiles[0].order if trace.profiles[0].gains is gains else None
    outside = np.ones(candidates.size, dtype=bool)
    children: List[ChildNode] = []
    for i in range(len(trace.selected) + 1):
        profile = trace.profiles[i]
        profile_value = float(profile.value)
        if i == 0:
            profile_gains, profile_exact, profile_order = gains, node_exact, base_order
        elif profile.gains is None:
            # ganhos em S_T continuam limitantes superiores em S_T ∪ X_i
            profile_gains, profile_exact = gains, np.zeros(candidates.size, dtype=bool)
            profile_order = base_order
        else:
            profile_gains, profile_exact = profile.gains, np.full(candidates.size, profile.exact)
            profile_order = profile.order

        budget = node.remaining_budget - float(prefix_weight[i])
        if i > 0:
            outside[order[i - 1]] = False
        if profile_order is not None:
            tail_sorted = profile_order[outside[profile_order]]
        else:
            tail = order[i:]
            tail_sorted = tail[unit_gain_order(profile_gains[tail], candidate_weights[tail], candidates[tail])]
        cutoff = node.base_value + profile_value + fractional_knapsack_sorted(
            profile_gains[tail_sorted], candidate_weights[tail_sorted], budget
        )
        if cutoff <= incumbent + tolerance:
            break

        child_tail = order[i + 1:]
        child = SearchNode(
            node.selected + tuple(int(e) for e in ordered[:i]),
            ordered[i + 1:],
            max(budget, 0.0),
            node.base_value + profile_value,
            profile_gains[child_tail],
            profile_exact[child_tail],
            node.depth + 1,
        )
        children.append(ChildNode(child, float(cutoff), ordered[:i].tolist(), added_gains[:i]))
    return children

def node_bounds(
    node: SearchNode,
    gains: np.ndarray,
    trace: Optional[GreedyTrace],
    weights: np.ndarray,
    oracle: Optional[SubmodularOracle] = None,
    kinds: Optional[Iterable[BoundKind]] = None,
    epsilon: float = 1.0,
) -> Dict[str, float]:
    """
    Calcula os limitantes pedidos para um nó, já somando f(S_T)

    dom e rs exigem a sequência do GreedyAdd e são omitidos sem ela.

    Args:
        node: Nó avaliado
        gains: Ganhos (ou limitantes) por candidato
        trace: Sequência do GreedyAdd no nó, se houver
        weights: Pesos de todo o universo
        oracle: Completa perfis sem ganhos registrados (rs)
        kinds: Limitantes desejados (padrão: todos)
        epsilon: Precisão do limitante k

    Returns:
        Dict[str, float]: Valor por rótulo de limitante (k, fk, dom, rs)
    """
    wanted = set(BoundKind) if kinds is None else set(kinds)
    if trace is None:
        wanted -= {BoundKind.DOMINATION, BoundKind.REFINED_SUBSET}

    candidate_weights = weights[node.candidates]
    profile = GainProfile(gains, candidate_weights, node.remaining_budget, node.candidates)
    bounds: Dict[str, float] = {}
    if BoundKind.KNAPSACK in wanted:
        bounds[BoundKind.KNAPSACK.value] = node.base_value + knapsack_ptas_bound(profile, epsilon)
    if BoundKind.FRACTIONAL in wanted:
        bounds[BoundKind.FRACTIONAL.value] = node.base_value + fractional_knapsack_bound(profile)
    if BoundKind.DOMINATION in wanted:
        singleton = best_singleton(gains, candidate_weights, node.remaining_budget)
        bounds[BoundKind.DOMINATION.value] = domination_bound(node.base_value, trace.value, singleton)
    if BoundKind.REFINED_SUBSET in wanted:
        bounds[BoundKind.REFINED_SUBSET.value] = refined_subset_bound(node, trace, weights, oracle)
    return bounds

def root_bounds(instance: Instance, kinds: Optional[Iterable[BoundKind]] = None,
                epsilon: float = 1.0) -> Dict[str, float]:
    """
    Limitantes na raiz (∅, 𝒰, W) com ganhos exatos, usados nos estudos de gap

    Returns:
        Dict[str, float]: Valor por rótulo de limitante
    """
    oracle = instance.oracle
    node = SearchNode.root(instance)
    state = oracle.anchor(())
    gains = state.gains(node.candidates)
    exact = np.ones(node.candidates.size, dtype=bool)
    trace = greedy_add(node, oracle, instance.weights, state=state, gains=gains, exact=exact,
                       record_profiles=True)
    return node_bounds(node, gains, trace, instance.weights, oracle, kinds, epsilon)

class SubmodularKnapsackSolver:
    """Serviço de branch-and-bound exato para o SKP monótono"""

    def __init__(self, instance: Instance, config: Optional[SolverConfig] = None,
                 observer: Optional[NodeObserver] = None):
        """
        Inicializa o solver

        Args:
            instance: Instância a resolver
            config: Variante do algoritmo (padrão dual-rs)
            observer: Função chamada com um NodeSnapshot a cada nó avaliado
        """
        self.instance = instance
        self.config = config or SolverConfig()
        self.observer = observer
        self.oracle = CountingOracle(instance.oracle)
        self.weights = instance.weights
        self.integral = instance.oracle.integral

        self.uses_greedy = (
            self.config.primal_heuristic
            or self.config.branching == BranchingKind.DUAL
            or self.config.bound in (BoundKind.DOMINATION, BoundKind.REFINED_SUBSET)
        )
        self.records_profiles = (
            self.config.bound == BoundKind.REFINED_SUBSET
            or self.config.branching == BranchingKind.DUAL
        )
        self._reset()

    def _reset(self) -> None:
        self.incumbent = 0.0
        self.solution: Tuple[int, ...] = ()
        self.nodes = 0
        self.root_bound: Optional[float] = None
        self.statistics = SolveStatistics()
        self.oracle.reset()
        self._started = time.perf_counter()

    @property
    def tolerance(self) -> float:
        return prune_tolerance(self.incumbent, self.integral)

    def solve(self) -> SolveReport:
        """
        Executa a busca em profundidade a partir de (∅, 𝒰, W)

        Returns:
            SolveReport: lb*, S*, contadores e status (optimal ou limite atingido)
        """
        self._reset()
        instance = self.instance
        logger.info(
            f"Resolvendo {instance.name} (n={instance.n}, W={instance.budget:g}) "
            f"com {self.config.label}"
        )

        status = SolveStatus.OPTIMAL
        previous_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(previous_limit, 4 * instance.n + 100))
        try:
            root = SearchNode.root(instance)
            self._branch_bound(root, self.oracle.anchor(()))
        except _SearchLimitReached as limit:
            status = limit.status
            logger.warning(
                f"Limite atingido ({status.value}) após {self.nodes} nós; melhor valor conhecido {self.incumbent:g}"
            )
        finally:
            sys.setrecursionlimit(previous_limit)

        wall_time = time.perf_counter() - self._started
        spec = instance.weight_spec
        report = SolveReport(
            optimum=self.incumbent,
            solution=sorted(self.solution),
            nodes_visited=self.nodes,
            oracle_calls=self.oracle.call_count,
            wall_time=wall_time,
            status=status,
            root_bound=self.root_bound,
            config=self.config,
            instance_hash=instance_fingerprint(instance),
            kind=instance.kind,
            n=instance.n,
            budget=instance.budget,
            weight_scheme=spec.scheme if spec else None,
            weight_seed=spec.seed if spec else None,
            statistics=self.statistics,
        )
        logger.info(
            f"{self.config.label}: lb*={self.incumbent:g} S*={report.solution} nós={self.nodes} "
            f"chamadas={report.oracle_calls} tempo={wall_time:.3f}s status={status.value}"
        )
        return report

    def _check_limits(self) -> None:
        node_limit = self.config.node_limit
        if node_limit is not None and self.nodes >= node_limit:
            raise _SearchLimitReached(SolveStatus.NODE_LIMIT)
        time_limit = self.config.time_limit
        if time_limit is not None and self.nodes % TIME_CHECK_INTERVAL == 0:
            if time.perf_counter() - self._started >= time_limit:
                raise _SearchLimitReached(SolveStatus.TIME_LIMIT)

    def _offer(self, elements: Sequence[int], value: float) -> None:
        """Atualiza lb* e S* se o conjunto melhora estritamente o incumbente"""
        if value <= self.incumbent:
            return
        exact_value = self.oracle.evaluate(elements)
        if exact_value <= self.incumbent:
            return
        self.incumbent = exact_value
        self.solution = tuple(int(e) for e in elements)
        self.statistics.incumbent_updates += 1
        logger.debug(f"Novo incumbente lb*={exact_value:g} com {sorted(self.solution)}")

    def _branch_bound(self, node: SearchNode, state: AnchoredState) -> None:
        self._check_limits()
        self.nodes += 1
        stats = self.statistics
        stats.max_depth = max(stats.max_depth, node.depth)

        node.base_value = state.value
        self._offer(node.selected, state.value)
        if node.candidates.size == 0:
            if self.root_bound is None:
                self.root_bound = node.base_value
            self._notify(node, np.zeros(0), None, {}, False)
            return

        gains, exact, refreshed = lazy_refresh(
            node, state, self.weights, self.incumbent, self.config.lazy_update
        )
        stats.lazy_refreshed += refreshed
        stats.lazy_kept += int((~exact).sum())

        if self.config.reductions:
            node, gains, exact, rule1, rule2 = reduce_node(
                node, gains, exact, self.weights, self.incumbent, self.tolerance
            )
            stats.reduced_rule1 += rule1
            stats.reduced_rule2 += rule2
            if node.candidates.size == 0:
                if self.root_bound is None:
                    self.root_bound = node.base_value
                self._notify(node, gains, None, {}, False)
                return

        trace: Optional[GreedyTrace] = None
        if self.uses_greedy:
            trace = greedy_add(
                node, self.oracle, self.weights, state=state, gains=gains, exact=exact,
                lazy=self.config.lazy_update, record_profiles=self.records_profiles,
            )
            stats.greedy_runs += 1
            if self.config.primal_heuristic:
                self._offer(node.selected + tuple(trace.selected), node.base_value + trace.value)

        bounds = self._bounds(node, gains, trace)
        upper = bounds[self.config.bound.value]
        if self.root_bound is None:
            self.root_bound = upper

        pruned = upper <= self.incumbent + self.tolerance
        self._notify(node, gains, trace, bounds, pruned)
        if pruned:
            stats.pruned_by_bound += 1
            return

        if self.config.branching == BranchingKind.DUAL:
            children = branch_dual(node, trace, gains, self.weights, self.incumbent, exact, self.tolerance)
        else:
            children = branch_basic(node, gains, self.weights, self.incumbent, exact, self.tolerance)

        for index, child in enumerate(children):
            if child.cutoff <= self.incumbent + self.tolerance:
                stats.children_cut += len(children) - index
                break
            child_state = state.copy()
            for element, gain in zip(child.added, child.added_gains):
                child_state.add(element, gain)
            self._branch_bound(child.node, child_state)

    def _bounds(self, node: SearchNode, gains: np.ndarray, trace: Optional[GreedyTrace]) -> Dict[str, float]:
        """Limitante configurado (e, com observador, todos os disponíveis) para o nó"""
        wanted = set(BoundKind) if self.observer else {self.config.bound}
        return node_bounds(node, gains, trace, self.weights, self.oracle, wanted, self.config.epsilon)

    def _notify(self, node: SearchNode, gains: np.ndarray, trace: Optional[GreedyTrace],
                bounds: Dict[str, float], pruned: bool) -> None:
        if self.observer is not None:
            self.observer(NodeSnapshot(node, gains, trace, bounds, self.incumbent, pruned))

def solve(instance: Instance, config: Optional[SolverConfig] = None,
          observer: Optional[NodeObserver] = None) -> SolveReport:
    """
    Resolve uma instância do SKP

    Args:
        instance: Instância
        config: Variante do algoritmo (padrão dual-rs)
        observer: Instrumentação opcional por nó

    Returns:
        SolveReport: Resultado da execução
    """
    return SubmodularKnapsackSolver(instance, config, observer).solve()

def brute_force(instance: Instance, limit: int = BRUTE_FORCE_LIMIT) -> Tuple[float, Tuple[int, ...]]:
    """
    Ótimo exato por enumeração de subconjuntos viáveis

    Args:
        instance: Instância com no máximo `limit` elementos
        limit: Tamanho máximo do universo

    Returns:
        Tuple[float, Tuple[int, ...]]: (ótimo, conjunto ótimo ordenado)

    Raises:
        UniverseTooLargeError: Se o universo exceder o limite
    """
    n = instance.n
    if n > limit:
        raise UniverseTooLargeError(n, limit)

    oracle = instance.oracle
    weights = instance.weights
    best_value = 0.0
    best_set: Tuple[int, ...] = ()

    def enumerate_from(start: int, chosen: Tuple[int, ...], weight: float, state: AnchoredState) -> None:
        nonlocal best_value, best_set
        if state.value > best_value:
            best_value, best_set = state.value, chosen
        for element in range(start, n):
            if not fits(weight + weights[element], instance.budget):
                continue
            extended = state.copy()
            extended.add(element)
            enumerate_from(element + 1, chosen + (element,), weight + weights[element], extended)

    enumerate_from(0, (), 0.0, oracle.anchor(()))
    if best_set:
        best_value = oracle.evaluate(best_set)
    return best_value, best_set

def all_configurations(epsilon: float = 1.0, time_limit: Optional[float] = None) -> List[SolverConfig]:
    """As oito variantes limitante × ramificação (a dual sempre com heurística primal)"""
    return [
        SolverConfig(bound=bound, branching=branching, epsilon=epsilon, time_limit=time_limit,
                     primal_heuristic=True if branching == BranchingKind.DUAL else None)
        for branching, bound in product(BranchingKind, BoundKind)
    ]

def verify_instance(instance: Instance, configs: Optional[List[SolverConfig]] = None) -> VerificationResult:
    """
    Compara a força bruta com cada variante do solver

    Args:
        instance: Instância com universo pequeno
        configs: Variantes a verificar (padrão: as oito combinações)

    Returns:
        VerificationResult: Ótimo de referência, relatórios e divergências
    """
    optimum, solution = brute_force(instance)
    result = VerificationResult(optimum=optimum, solution=list(solution))
    integral = instance.oracle.integral
    for config in configs or all_configurations():
        report = solve(instance, config)
        result.reports.append(report)
        if not report.is_optimal:
            logger.warning(f"{config.label}: verificação sem status ótimo ({report.status.value})")
            continue
        allowed = 0.0 if integral else 1e-9 * max(1.0, abs(optimum))
        if abs(report.optimum - optimum) > allowed:
            message = f"{config.label}: lb*={report.optimum:g} difere da força bruta {optimum:g}"
            logger.error(message)
            result.disagreements.append(message)
    logger.info(
        f"Verificação de {instance.name}: {result.agreeing}/{len(result.reports)} variantes concordam em {optimum:g}"
    )
    return result

def sweep_budgets(
    instance: Instance,
    config: SolverConfig,
    budgets: Iterable[float],
    early_stop: bool = False,
) -> Iterator[SolveReport]:
    """
    Resolve a mesma instância para uma sequência de orçamentos

    Args:
        instance: Instância base (o orçamento do arquivo é ignorado)
        config: Variante do algoritmo
        budgets: Orçamentos W na ordem de execução
        early_stop: Interrompe depois do primeiro W sem status ótimo

    Yields:
        SolveReport: Um relatório por orçamento
    """
    for budget in budgets:
        report = solve(instance.with_budget(budget), config)
        yield report
        if early_stop and not report.is_optimal:
            logger.info(f"Varredura interrompida em W={budget:g} ({report.status.value})")
            break
