import numpy as np
import pytest

from src.models.entities import ProblemKind, SearchNode
from src.services.bounds import DOMINATION_ALPHA
from src.services.greedy import CandidatePool, best_singleton, greedy_add, lazy_best
from src.services.instances import generate_random_instance
from src.services.solver import brute_force

def test_greedy_e1(e1):
    """Testa o GreedyAdd na raiz de E1: a entra, c é descartado por peso, b entra"""
    trace = greedy_add(SearchNode.root(e1), e1.oracle, e1.weights)
    assert trace.selected == [0, 1]
    assert trace.value == pytest.approx(4.0)
    assert trace.weight == pytest.approx(2.0)
    assert [step.element for step in trace.steps] == [0, 2, 1]
    assert [step.added for step in trace.steps] == [True, False, True]
    assert trace.steps[2].consecutive is False
    assert trace.prefix_consecutive_p == 1

def test_greedy_e2(e2):
    """Testa o GreedyAdd no triângulo: empates resolvidos pelo menor id"""
    trace = greedy_add(SearchNode.root(e2), e2.oracle, e2.weights)
    assert trace.selected == [0, 1]
    assert trace.value == pytest.approx(3.0)
    assert trace.prefix_consecutive_p == 2

def test_greedy_modular4(modular4, modular4_node):
    """Testa a ordem de adição c1, c3, c2 a partir de ({s1}, {c1, c2, c3})"""
    state = modular4.oracle.anchor(modular4_node.selected)
    trace = greedy_add(modular4_node, modular4.oracle, modular4.weights, state=state)
    assert trace.selected == [1, 3, 2]
    assert trace.value == pytest.approx(12.0)
    assert state.value == 1

def test_greedy_perfis(e2):
    """Testa os vetores de ganho registrados para cada X_i"""
    trace = greedy_add(SearchNode.root(e2), e2.oracle, e2.weights, record_profiles=True)
    assert len(trace.profiles) == 3
    assert trace.profiles[0].gains.tolist() == [2, 2, 2]
    assert trace.profiles[0].exact
    assert trace.profiles[1].gains.tolist() == [0, 1, 1]
    assert trace.profiles[2].gains.tolist() == [0, 0, 0]
    assert [p.value for p in trace.profiles] == [0, 2, 3]

def test_greedy_sem_perfis_registra_conjuntos(e2):
    """Testa que, sem registro, os perfis guardam só valor e peso"""
    trace = greedy_add(SearchNode.root(e2), e2.oracle, e2.weights)
    assert len(trace.profiles) == 3
    assert trace.profiles[1].gains is None
    assert trace.prefix(1) == [0]

def test_greedy_nos_vazios(e1):
    """Testa o GreedyAdd sem candidatos"""
    node = SearchNode((0,), np.zeros(0, dtype=np.int64), 1.0, 3.0)
    trace = greedy_add(node, e1.oracle, e1.weights)
    assert trace.selected == []
    assert len(trace.profiles) == 1

def test_lazy_best_e2(e2):
    """Testa a escolha preguiçosa depois de C1: C2 com ganho 1"""
    candidates = np.array([1, 2])
    pool = CandidatePool(candidates, e2.weights[candidates], np.array([2.0, 2.0]),
                         np.zeros(2, dtype=bool))
    state = e2.oracle.anchor([0])
    assert lazy_best(pool, state) == (1, 1.0)
    assert len(pool) == 1
    assert lazy_best(pool, state) == (2, 1.0)
    assert lazy_best(pool, state) is None

def test_lazy_best_evita_recalculos(e2):
    """Testa que um elemento fresco no topo dispensa recálculos"""
    candidates = np.array([0, 1, 2])
    pool = CandidatePool(candidates, e2.weights, np.array([2.0, 1.0, 0.5]), np.ones(3, dtype=bool))
    assert lazy_best(pool, e2.oracle.anchor([])) == (0, 2.0)
    assert pool.recomputations == 0

@pytest.mark.parametrize("kind", list(ProblemKind))
def test_lazy_igual_ao_completo(kind):
    """Testa que as versões preguiçosa e completa produzem a mesma sequência"""
    for seed in range(4):
        instance = generate_random_instance(kind, 10, seed=seed)
        root = SearchNode.root(instance)
        lazy = greedy_add(root, instance.oracle, instance.weights, lazy=True)
        eager = greedy_add(root, instance.oracle, instance.weights, lazy=False)
        assert lazy.selected == eager.selected
        assert lazy.value == eager.value
        assert [s.element for s in lazy.steps] == [s.element for s in eager.steps]

def test_best_singleton():
    """Testa o melhor elemento isolado viável"""
    gains = np.array([3.0, 1.0, 5.0])
    weights = np.array([1.0, 1.0, 2.0])
    assert best_singleton(gains, weights, 2.0) == 5
    assert best_singleton(gains, weights, 1.5) == 3
    assert best_singleton(gains, weights, 0.5) == 0
    assert best_singleton(np.zeros(0), np.zeros(0), 1.0) == 0

def test_garantia_do_guloso(random_suite):
    """Testa max(guloso, melhor singleton) ≥ (1 − e^{−1/2})·ótimo"""
    for instance in random_suite:
        root = SearchNode.root(instance)
        trace = greedy_add(root, instance.oracle, instance.weights)
        gains = instance.oracle.anchor(()).gains(root.candidates)
        singleton = best_singleton(gains, instance.weights, instance.budget)
        optimum, _ = brute_force(instance)
        assert max(trace.value, singleton) >= DOMINATION_ALPHA * optimum - 1e-9, instance.name
