import math
from typing import Optional
import numpy as np

from ..models.entities import FEASIBILITY_TOL, GainProfile, GreedyTrace, SearchNode
from ..oracles.base import SubmodularOracle

# Razão de aproximação do GreedyAdd combinado com o melhor elemento isolado
DOMINATION_ALPHA = 1.0 - math.exp(-0.5)

def unit_gain_order(gains: np.ndarray, weights: np.ndarray, ids: np.ndarray) -> np.ndarray:
    """
    Ordem não crescente de ganho unitário, empates pelo menor id

    Returns:
        np.ndarray: Índices posicionais na ordem
    """
    return np.lexsort((ids, -(gains / weights)))

def fractional_knapsack_sorted(gains: np.ndarray, weights: np.ndarray, budget: float) -> float:
    """
    Ótimo da relaxação linear para itens já ordenados por ganho unitário

    Args:
        gains: Ganhos na ordem de ganho unitário
        weights: Pesos na mesma ordem
        budget: Orçamento

    Returns:
        float: Σ_{j≤l} g_j + (budget − w(e_1..e_l))·g_{l+1}/w_{l+1}, ou a soma total se tudo couber
    """
    if budget <= 0 or gains.size == 0:
        return 0.0
    cumulative_weight = np.cumsum(weights)
    fitted = int(np.searchsorted(cumulative_weight, budget + FEASIBILITY_TOL, side="right"))
    value = float(gains[:fitted].sum()) if fitted else 0.0
    if fitted < gains.size:
        used = float(cumulative_weight[fitted - 1]) if fitted else 0.0
        value += max(budget - used, 0.0) * float(gains[fitted] / weights[fitted])
    return value

def fractional_knapsack_batch(
    gains: np.ndarray,
    weights: np.ndarray,
    budgets: np.ndarray,
    starts: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    ub_fk de vários sufixos de uma mesma lista ordenada, um orçamento por consulta

    Args:
        gains: Ganhos na ordem de ganho unitário
        weights: Pesos na mesma ordem
        budgets: Orçamento de cada consulta
        starts: Posição inicial do sufixo de cada consulta (padrão 0)

    Returns:
        np.ndarray: Valor da relaxação linear para cada consulta
    """
    budgets = np.asarray(budgets, dtype=float)
    if gains.size == 0:
        return np.zeros(budgets.size)
    starts = np.zeros(budgets.size, dtype=np.int64) if starts is None else np.asarray(starts, dtype=np.int64)

    cumulative_weight = np.concatenate(([0.0], np.cumsum(weights)))
    cumulative_gain = np.concatenate(([0.0], np.cumsum(gains)))
    offset = cumulative_weight[starts]
    end = np.searchsorted(cumulative_weight, offset + budgets + FEASIBILITY_TOL, side="right") - 1
    end = np.maximum(end, starts)

    value = cumulative_gain[end] - cumulative_gain[starts]
    used = cumulative_weight[end] - offset
    following = np.minimum(end, gains.size - 1)
    partial = np.maximum(budgets - used, 0.0) * (gains[following] / weights[following])
    value = value + np.where(end < gains.size, partial, 0.0)
    return np.where(budgets > 0, value, 0.0)

def fractional_knapsack_bound(profile: GainProfile) -> float:
    """
    Limitante da mochila fracionária sobre os candidatos (sem o termo f(S_T))

    Args:
        profile: Ganhos, pesos e orçamento W_T

    Returns:
        float: Ótimo da relaxação linear do KNAPSACK-IP
    """
    if len(profile) == 0 or profile.budget <= 0:
        return 0.0
    order = unit_gain_order(profile.gains, profile.weights, profile.ids)
    return fractional_knapsack_sorted(profile.gains[order], profile.weights[order], profile.budget)

def _is_integral(values: np.ndarray) -> bool:
    return bool(np.all(values == np.floor(values)))

def _best_rounded_value(rounded: np.ndarray, weights: np.ndarray, budget: float) -> int:
    """Programação dinâmica de peso mínimo por valor arredondado total"""
    total = int(rounded.sum())
    min_weight = np.full(total + 1, np.inf)
    min_weight[0] = 0.0
    for value, weight in zip(rounded.tolist(), weights.tolist()):
        if value == 0:
            continue
        min_weight[value:] = np.minimum(min_weight[value:], min_weight[:-value] + weight)
    return int(np.flatnonzero(min_weight <= budget + FEASIBILITY_TOL).max())

def _fitting_items(profile: GainProfile):
    mask = (profile.weights <= profile.budget + FEASIBILITY_TOL) & (profile.gains > 0)
    return profile.gains[mask], profile.weights[mask]

def knapsack_ptas_bound(profile: GainProfile, epsilon: float) -> float:
    """
    Limitante da mochila por arredondamento para cima + programação dinâmica

    Usa K = ε·max(ganho)/n e valores ⌈ganho/K⌉; com ganhos inteiros K é limitado
    inferiormente por 1. O resultado v satisfaz OPT_IP ≤ v ≤ (1+ε)·OPT_IP.

    Args:
        profile: Ganhos, pesos e orçamento W_T
        epsilon: Parâmetro de precisão (> 0)

    Returns:
        float: Limitante superior do KNAPSACK-IP (sem o termo f(S_T))
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon deve ser positivo: {epsilon}")
    gains, weights = _fitting_items(profile)
    if gains.size == 0:
        return 0.0

    scale = epsilon * float(gains.max()) / gains.size
    if _is_integral(gains):
        scale = max(scale, 1.0)
    rounded = np.ceil(gains / scale)
    # corrige arredondamentos de ponto flutuante para manter rounded·K ≥ ganho, com rounded mínimo
    rounded = np.where(rounded * scale < gains, rounded + 1, rounded)
    rounded = np.where((rounded - 1) * scale >= gains, rounded - 1, rounded)
    rounded = rounded.astype(np.int64)

    best = _best_rounded_value(rounded, weights, profile.budget)
    return min(scale * best, float(gains.sum()))

def exact_knapsack_value(profile: GainProfile) -> float:
    """
    Ótimo exato do KNAPSACK-IP para ganhos inteiros (DP pseudo-polinomial)

    Raises:
        ValueError: Se algum ganho não for inteiro
    """
    gains, weights = _fitting_items(profile)
    if gains.size == 0:
        return 0.0
    if not _is_integral(gains):
        raise ValueError("DP exata da mochila exige ganhos inteiros")
    return float(_best_rounded_value(gains.astype(np.int64), weights, profile.budget))

def domination_bound(node_value: float, greedy_value: float, best_singleton: float) -> float:
    """
    Limitante de dominação: f(S_T) + max(g(X̂), melhor singleton)/α

    Args:
        node_value: f(S_T)
        greedy_value: g(X̂) do GreedyAdd no nó
        best_singleton: Maior ganho de um elemento viável isolado

    Returns:
        float: Limitante superior com α = 1 − e^{−1/2}
    """
    return node_value + max(greedy_value, best_singleton) / DOMINATION_ALPHA

def refined_subset_bound(
    node: SearchNode,
    trace: GreedyTrace,
    weights: np.ndarray,
    oracle: Optional[SubmodularOracle] = None,
) -> float:
    """
    Limitante de subconjunto refinado

    f(S_T) + min_i [ g(X_i) + ub_fk(g(·|X_i), C_T, W_T) ] sobre os conjuntos distintos da
    sequência do GreedyAdd. Perfis sem vetor de ganhos são completados pelo oráculo.

    Args:
        node: Nó avaliado
        trace: Sequência do GreedyAdd neste nó
        weights: Pesos de todo o universo
        oracle: Necessário apenas se algum perfil não tiver ganhos registrados

    Returns:
        float: Limitante superior do SKP restrito ao nó
    """
    candidates = trace.candidates
    if candidates.size == 0:
        return node.base_value

    candidate_weights = weights[candidates]
    best: Optional[float] = None
    for profile in trace.profiles:
        gains = profile.gains
        if gains is None:
            if oracle is None:
                raise ValueError("perfil sem ganhos registrados exige o oráculo")
            state = oracle.anchor(list(node.selected) + trace.prefix(profile.size))
            gains = state.gains(candidates)
        if profile.order is not None and profile.gains is not None:
            order = profile.order
            relaxation = fractional_knapsack_sorted(gains[order], candidate_weights[order], node.remaining_budget)
        else:
            relaxation = fractional_knapsack_bound(
                GainProfile(gains, candidate_weights, node.remaining_budget, candidates)
            )
        term = profile.value + relaxation
        if best is None or term < best:
            best = term
    return node.base_value + best
