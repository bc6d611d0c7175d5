import sys
from pathlib import Path
import numpy as np
import pytest

# Adiciona o diretório raiz ao PYTHONPATH
workspace_root = Path(__file__).parent.parent
sys.path.insert(0, str(workspace_root))

from src.models.entities import Instance, ProblemKind, SearchNode, WeightScheme
from src.oracles.problems import make_cov, make_modular
from src.services.instances import generate_random_instance

@pytest.fixture
def data_dir():
    """Diretório com as instâncias de exemplo"""
    return workspace_root / "data"

@pytest.fixture
def e1():
    """Instância modular E1: v=(3,1,5) para a, b, c; w=(1,1,2); W=2"""
    return Instance(ProblemKind.COV, make_modular([3, 1, 5]), [1, 1, 2], 2, name="e1")

@pytest.fixture
def e2():
    """Triângulo de cobertura E2: C1={1,2}, C2={2,3}, C3={1,3}, itens unitários, w=1, W=2"""
    oracle = make_cov(3, [1, 1, 1], [[0, 1], [1, 2], [0, 2]])
    return Instance(ProblemKind.COV, oracle, [1, 1, 1], 2, name="e2")

@pytest.fixture
def modular4():
    """Instância modular com s1=1, c1=6, c2=2, c3=4 (ids 0..3), pesos unitários e W=4"""
    return Instance(ProblemKind.COV, make_modular([1, 6, 2, 4]), [1, 1, 1, 1], 4, name="modular4")

@pytest.fixture
def modular4_node():
    """Nó ({s1}, {c1, c2, c3}, 3) da instância modular4"""
    return SearchNode((0,), np.array([1, 2, 3]), 3.0, 1.0)

@pytest.fixture
def random_suite():
    """Instâncias pequenas de todas as famílias e esquemas de pesos"""
    schemes = list(WeightScheme)
    suite = []
    for kind in ProblemKind:
        for seed in range(3):
            suite.append(generate_random_instance(
                kind, 6 + 2 * seed, seed=seed, scheme=schemes[seed % len(schemes)]
            ))
    return suite
