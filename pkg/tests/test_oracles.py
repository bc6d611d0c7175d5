import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from src.models.entities import Instance, ProblemKind
from src.models.errors import OracleInputError
from src.oracles.base import CountingOracle, NormalizedOracle, SubmodularOracle, normalized
from src.oracles.problems import make_cov, make_dom, make_inf, make_loc, make_modular
from src.services.instances import generate_random_instance

class _OffsetOracle(SubmodularOracle):
    """f(S) = 2 + |S|, com f(∅) ≠ 0"""

    def _evaluate(self, ids):
        return 2.0 + len(ids)

def test_cov_evaluate_e2(e2):
    """Testa a cobertura do triângulo E2"""
    oracle = e2.oracle
    assert oracle.evaluate([0, 1]) == 3
    assert oracle.evaluate([0]) == 2
    assert oracle.evaluate([0, 1, 2]) == 3
    assert oracle.evaluate([]) == 0
    assert oracle.evaluate([1, 0, 1]) == oracle.evaluate([0, 1])

def test_modular_e1(e1):
    """Testa a função aditiva E1"""
    assert e1.oracle.evaluate([0, 2]) == 8
    assert e1.oracle.marginal_gain(2, []) == 5

def test_marginal_gain():
    """Testa ganhos marginais e idempotência"""
    oracle = make_cov(3, [1, 1, 1], [[0, 1], [1, 2], [0, 2]])
    assert oracle.marginal_gain(1, [0]) == 1
    assert oracle.marginal_gain(0, [0]) == 0
    assert oracle.marginal_gain(2, [0, 1]) == 0

def test_elemento_fora_do_universo(e2):
    """Testa a rejeição de ids fora do universo"""
    with pytest.raises(OracleInputError):
        e2.oracle.evaluate([3])
    with pytest.raises(OracleInputError):
        e2.oracle.marginal_gain(-1, [])

def test_make_cov_validacao():
    """Testa a validação do oráculo de cobertura"""
    with pytest.raises(OracleInputError):
        make_cov(2, [1, 1], [[0, 2]])
    with pytest.raises(OracleInputError):
        make_cov(2, [1], [[0]])
    with pytest.raises(OracleInputError):
        make_cov(1, [-1], [[0]])
    assert make_cov(2, [1, 1], [[0], [1]]).integral
    assert not make_cov(1, [0.5], [[0]]).integral

def test_make_inf():
    """Testa o oráculo de influência bipartida"""
    oracle = make_inf(2, 1, [(0, 0, 0.5), (1, 0, 0.5)])
    assert oracle.evaluate([0, 1]) == pytest.approx(0.75)
    assert oracle.evaluate([]) == 0
    assert make_inf(2, 1, [(0, 0, 1.0), (1, 0, 0.3)]).evaluate([0, 1]) == pytest.approx(1.0)

def test_make_inf_validacao():
    """Testa probabilidades inválidas e arestas duplicadas"""
    with pytest.raises(OracleInputError):
        make_inf(1, 1, [(0, 0, 1.5)])
    with pytest.raises(OracleInputError):
        make_inf(1, 1, [(0, 0, 0.2), (0, 0, 0.3)])
    with pytest.raises(OracleInputError):
        make_inf(1, 1, [(0, 1, 0.2)])

def test_make_loc():
    """Testa o oráculo de localização de facilidades"""
    oracle = make_loc(2, 1, [[2, 5]])
    assert oracle.evaluate([0, 1]) == 5
    assert oracle.evaluate([0]) == 2
    assert oracle.evaluate([]) == 0
    with pytest.raises(OracleInputError):
        make_loc(2, 1, [[2, -1]])

def test_make_dom():
    """Testa a dominação parcial descartando laços e arestas repetidas"""
    oracle = make_dom(3, [(0, 1), (1, 0), (1, 1), (1, 2)])
    assert oracle.edges == [(0, 1), (1, 2)]
    assert oracle.evaluate([1]) == 3
    assert oracle.evaluate([0]) == 2
    assert oracle.evaluate([0, 2]) == 3
    with pytest.raises(OracleInputError):
        make_dom(2, [(0, 2)])

@settings(max_examples=40, deadline=None)
@given(kind=st.sampled_from(list(ProblemKind)), seed=st.integers(0, 500), data=st.data())
def test_monotonicidade_e_submodularidade(kind, seed, data):
    """Testa f(A∪e)−f(A) ≥ f(B∪e)−f(B) ≥ 0 para A ⊆ B"""
    oracle = generate_random_instance(kind, 7, seed=seed).oracle
    larger = data.draw(st.sets(st.integers(0, 6)))
    smaller = data.draw(st.sets(st.sampled_from(sorted(larger)))) if larger else set()
    element = data.draw(st.integers(0, 6))
    assume(element not in larger)

    gain_smaller = oracle.evaluate(smaller | {element}) - oracle.evaluate(smaller)
    gain_larger = oracle.evaluate(larger | {element}) - oracle.evaluate(larger)
    assert gain_larger >= -1e-9
    assert gain_smaller >= gain_larger - 1e-9

@settings(max_examples=25, deadline=None)
@given(kind=st.sampled_from(list(ProblemKind)), seed=st.integers(0, 500),
       base=st.sets(st.integers(0, 6), max_size=4))
def test_estado_ancorado_consistente(kind, seed, base):
    """Testa que o estado incremental reproduz as avaliações diretas"""
    oracle = generate_random_instance(kind, 7, seed=seed).oracle
    state = oracle.anchor(base)
    value = oracle.evaluate(base)
    assert state.value == pytest.approx(value)

    expected = [max(oracle.evaluate(base | {e}) - value, 0.0) for e in range(7)]
    assert np.allclose(state.gains(range(7)), expected)

    outside = [e for e in range(7) if e not in base]
    if outside:
        clone = state.copy()
        clone.add(outside[0])
        assert clone.value == pytest.approx(oracle.evaluate(base | {outside[0]}))
        assert state.value == pytest.approx(value)

@settings(max_examples=40, deadline=None)
@given(kind=st.sampled_from(list(ProblemKind)), seed=st.integers(0, 500), data=st.data())
def test_independencia_da_ordem(kind, seed, data):
    """Testa que f(S) não depende da ordem nem de repetições em S, direto ou incremental"""
    oracle = generate_random_instance(kind, 8, seed=seed).oracle
    subset = data.draw(st.lists(st.integers(0, 7), unique=True, max_size=8))
    shuffled = data.draw(st.permutations(subset))
    repeated = shuffled + (data.draw(st.lists(st.sampled_from(subset), max_size=4)) if subset else [])

    value = oracle.evaluate(subset)
    assert oracle.evaluate(shuffled) == value
    assert oracle.evaluate(repeated) == value

    forward, backward = oracle.anchor(()), oracle.anchor(())
    for element in subset:
        forward.add(element)
    for element in repeated:
        backward.add(element)
    if oracle.integral:
        assert forward.value == value
        assert backward.value == value
    else:
        assert forward.value == pytest.approx(value, rel=1e-12, abs=1e-12)
        assert backward.value == pytest.approx(value, rel=1e-12, abs=1e-12)

def test_ganhos_disjuntos(e2):
    """Testa que dispensar a máscara de membros não muda os ganhos de elementos fora de B"""
    for kind in ProblemKind:
        oracle = generate_random_instance(kind, 9, seed=11).oracle
        state = oracle.anchor([1, 4])
        outside = np.array([0, 2, 3, 5, 6, 7, 8])
        assert state.gains(outside, disjoint=True).tolist() == state.gains(outside).tolist()
    state = e2.oracle.anchor([0])
    assert state.gains([0, 1]).tolist() == [0.0, 1.0]

def test_counting_oracle(e2):
    """Testa a contagem de chamadas sem alterar valores"""
    counter = CountingOracle(e2.oracle)
    assert counter.evaluate([0, 1]) == 3
    assert counter.call_count == 1
    assert counter.marginal_gain(1, [0]) == 1
    assert counter.call_count == 2

    state = counter.anchor([0])
    assert counter.call_count == 3
    assert state.gains([1, 2]).tolist() == [1, 1]
    assert counter.call_count == 5
    state.add(1)
    assert counter.call_count == 6
    state.add(2, 0.0)
    assert counter.call_count == 6
    assert state.value == 3

    counter.reset()
    assert counter.call_count == 0
    assert counter.integral

def test_normalized_oracle():
    """Testa a normalização de um oráculo com f(∅) ≠ 0"""
    oracle = normalized(_OffsetOracle(3))
    assert isinstance(oracle, NormalizedOracle)
    assert oracle.evaluate([]) == 0
    assert oracle.evaluate([0, 1]) == 2
    state = oracle.anchor([0])
    assert state.value == 1
    assert state.gain(1) == 1

    instance = Instance(ProblemKind.COV, _OffsetOracle(2), [1, 1], 1)
    assert instance.oracle.evaluate([]) == 0

def test_normalized_sem_deslocamento():
    """Testa que oráculos já normalizados não são envolvidos"""
    oracle = make_modular([1, 2])
    assert normalized(oracle) is oracle
