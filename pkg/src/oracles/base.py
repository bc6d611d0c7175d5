from abc import ABC, abstractmethod
from typing import Iterable, Optional, Sequence, Set
import numpy as np

from ..models.errors import OracleInputError

class AnchoredState(ABC):
    """
    Estado incremental ancorado em um conjunto base B

    Permite consultar f(e|B) para vários elementos e avançar B elemento a elemento.
    Ganhos de elementos já contidos em B são zero; ganhos negativos de arredondamento
    são truncados em zero.
    """

    def __init__(self, members: Iterable[int], value: float):
        self.members: Set[int] = set(int(e) for e in members)
        self.value = float(value)

    def contains(self, element: int) -> bool:
        return element in self.members

    def gains(self, elements: Sequence[int], disjoint: bool = False) -> np.ndarray:
        """
        Ganhos marginais f(e|B) para uma sequência de elementos

        Args:
            elements: Elementos consultados
            disjoint: O chamador garante que nenhum elemento pertence a B

        Returns:
            np.ndarray: Ganhos (≥ 0) na mesma ordem dos elementos
        """
        elements = np.asarray(elements, dtype=np.int64)
        if elements.size == 0:
            return np.zeros(0)
        result = np.maximum(self._raw_gains(elements), 0.0)
        if self.members and not disjoint:
            result[np.isin(elements, list(self.members))] = 0.0
        return result

    def gain(self, element: int, disjoint: bool = False) -> float:
        """Ganho marginal f(e|B) de um único elemento"""
        return float(self.gains(np.array([element], dtype=np.int64), disjoint)[0])

    def add(self, element: int, gain: Optional[float] = None) -> float:
        """
        Adiciona um elemento a B

        Args:
            element: Elemento adicionado
            gain: Ganho já conhecido para B atual (evita nova consulta)

        Returns:
            float: Ganho realizado pela adição
        """
        element = int(element)
        if element in self.members:
            return 0.0
        delta = self.gain(element, disjoint=True) if gain is None else float(gain)
        self._absorb(element)
        self.members.add(element)
        self.value += delta
        return delta

    @abstractmethod
    def _raw_gains(self, elements: np.ndarray) -> np.ndarray:
        """Ganhos sem truncamento nem tratamento de membros"""

    @abstractmethod
    def _absorb(self, element: int) -> None:
        """Atualiza a estrutura incremental com um novo membro"""

    @abstractmethod
    def copy(self) -> "AnchoredState":
        """Cópia independente do estado"""

class SubmodularOracle(ABC):
    """Contrato de avaliação de uma função submodular monótona f sobre {0..n-1}"""

    # Valores inteiros permitem poda com comparação exata
    integral: bool = False

    def __init__(self, n: int):
        if n < 0:
            raise OracleInputError(f"Quantidade de elementos inválida: {n}")
        self.n = int(n)

    def _check(self, elements: Iterable[int]) -> np.ndarray:
        """Normaliza um conjunto de elementos e valida os ids"""
        ids = np.unique(np.asarray(list(elements), dtype=np.int64))
        if ids.size and (ids[0] < 0 or ids[-1] >= self.n):
            bad = int(ids[0] if ids[0] < 0 else ids[-1])
            raise OracleInputError(f"Elemento {bad} fora do universo 0..{self.n - 1}", element=bad)
        return ids

    def evaluate(self, elements: Iterable[int]) -> float:
        """
        Avalia f(S)

        Args:
            elements: Conjunto S (ordem e repetições são irrelevantes)

        Returns:
            float: Valor f(S)
        """
        return self._evaluate(self._check(elements))

    def marginal_gain(self, element: int, elements: Iterable[int]) -> float:
        """Ganho marginal f(e|S) = f(S ∪ {e}) − f(S), truncado em zero"""
        self._check([element])
        return self.anchor(elements).gain(element)

    def anchor(self, elements: Iterable[int]) -> AnchoredState:
        """Cria um estado incremental ancorado em S"""
        ids = self._check(elements)
        return EvaluationAnchoredState(self, ids)

    @abstractmethod
    def _evaluate(self, ids: np.ndarray) -> float:
        """Avalia f sobre ids únicos e ordenados"""

class EvaluationAnchoredState(AnchoredState):
    """Estado genérico: cada ganho custa duas avaliações do oráculo"""

    def __init__(self, oracle: SubmodularOracle, ids: np.ndarray):
        super().__init__(ids.tolist(), oracle._evaluate(ids))
        self.oracle = oracle

    def _raw_gains(self, elements: np.ndarray) -> np.ndarray:
        base = sorted(self.members)
        return np.array([
            self.oracle._evaluate(np.array(sorted(base + [int(e)]), dtype=np.int64)) - self.value
            for e in elements
        ])

    def _absorb(self, element: int) -> None:
        pass

    def add(self, element: int, gain: Optional[float] = None) -> float:
        element = int(element)
        if element in self.members:
            return 0.0
        before = self.value
        self.members.add(element)
        self.value = self.oracle._evaluate(np.array(sorted(self.members), dtype=np.int64))
        return max(self.value - before, 0.0)

    def copy(self) -> "EvaluationAnchoredState":
        clone = EvaluationAnchoredState.__new__(EvaluationAnchoredState)
        AnchoredState.__init__(clone, self.members, self.value)
        clone.oracle = self.oracle
        return clone

class CountingOracle(SubmodularOracle):
    """
    Instrumentação: conta as chamadas encaminhadas ao oráculo interno

    Cada avaliação de conjunto conta 1, cada ganho marginal conta 1 (um lote de k
    ganhos conta k) e a criação de um estado ancorado conta como uma avaliação.
    Nenhum valor retornado é alterado.
    """

    def __init__(self, inner: SubmodularOracle):
        super().__init__(inner.n)
        self.inner = inner
        self.integral = inner.integral
        self.call_count = 0

    def reset(self) -> None:
        self.call_count = 0

    def evaluate(self, elements: Iterable[int]) -> float:
        self.call_count += 1
        return self.inner.evaluate(elements)

    def marginal_gain(self, element: int, elements: Iterable[int]) -> float:
        self.call_count += 1
        return self.inner.marginal_gain(element, elements)

    def anchor(self, elements: Iterable[int]) -> AnchoredState:
        self.call_count += 1
        return _CountingState(self.inner.anchor(elements), self)

    def _evaluate(self, ids: np.ndarray) -> float:
        return self.inner._evaluate(ids)

class _CountingState(AnchoredState):
    """Estado ancorado que repassa tudo ao estado interno e contabiliza ganhos"""

    def __init__(self, inner: AnchoredState, owner: CountingOracle):
        self.inner = inner
        self.owner = owner

    @property
    def members(self) -> Set[int]:  # type: ignore[override]
        return self.inner.members

    @property
    def value(self) -> float:  # type: ignore[override]
        return self.inner.value

    def gains(self, elements: Sequence[int], disjoint: bool = False) -> np.ndarray:
        elements = np.asarray(elements, dtype=np.int64)
        self.owner.call_count += int(elements.size)
        return self.inner.gains(elements, disjoint)

    def add(self, element: int, gain: Optional[float] = None) -> float:
        if gain is None and int(element) not in self.inner.members:
            self.owner.call_count += 1
        return self.inner.add(element, gain)

    def _raw_gains(self, elements: np.ndarray) -> np.ndarray:
        return self.inner._raw_gains(elements)

    def _absorb(self, element: int) -> None:
        self.inner._absorb(element)

    def copy(self) -> "_CountingState":
        return _CountingState(self.inner.copy(), self.owner)

class NormalizedOracle(SubmodularOracle):
    """Subtrai f(∅) de um oráculo não normalizado; os ganhos marginais não mudam"""

    def __init__(self, inner: SubmodularOracle, offset: Optional[float] = None):
        super().__init__(inner.n)
        self.inner = inner
        self.offset = float(inner.evaluate([]) if offset is None else offset)
        self.integral = inner.integral and float(self.offset).is_integer()

    def _evaluate(self, ids: np.ndarray) -> float:
        return self.inner._evaluate(ids) - self.offset

    def marginal_gain(self, element: int, elements: Iterable[int]) -> float:
        return self.inner.marginal_gain(element, elements)

    def anchor(self, elements: Iterable[int]) -> AnchoredState:
        return _OffsetState(self.inner.anchor(elements), self.offset)

class _OffsetState(AnchoredState):
    """Estado ancorado com valor deslocado por −f(∅)"""

    def __init__(self, inner: AnchoredState, offset: float):
        self.inner = inner
        self.offset = offset

    @property
    def members(self) -> Set[int]:  # type: ignore[override]
        return self.inner.members

    @property
    def value(self) -> float:  # type: ignore[override]
        return self.inner.value - self.offset

    def gains(self, elements: Sequence[int], disjoint: bool = False) -> np.ndarray:
        return self.inner.gains(elements, disjoint)

    def add(self, element: int, gain: Optional[float] = None) -> float:
        return self.inner.add(element, gain)

    def _raw_gains(self, elements: np.ndarray) -> np.ndarray:
        return self.inner._raw_gains(elements)

    def _absorb(self, element: int) -> None:
        self.inner._absorb(element)

    def copy(self) -> "_OffsetState":
        return _OffsetState(self.inner.copy(), self.offset)

def normalized(oracle: SubmodularOracle) -> SubmodularOracle:
    """Garante f(∅) = 0, envolvendo o oráculo quando necessário"""
    offset = oracle.evaluate([])
    if offset == 0:
        return oracle
    return NormalizedOracle(oracle, offset)
