"""
Formato texto das instâncias, esquemas de pesos e geradores sintéticos.

Gramática (uma diretiva por linha, linhas vazias e comentários com # ignorados):

    SKP <KIND> <n> <aux>
    <corpo específico da família>
    WEIGHTS EXPLICIT <w_1> ... <w_n>  |  WEIGHTS SCHEME <normal|uniform|unit> <seed>
    BUDGET <W>

aux é m para COV/INF/LOC e a quantidade de arestas para DOM. No corpo COV os ids
de item são 1-based; fontes, alvos e vértices são 0-based.
"""
import hashlib
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union
import numpy as np
from loguru import logger

from ..models.entities import Instance, ProblemKind, WeightScheme, WeightSpec
from ..models.errors import InputError, InstanceFormatError, InstanceValidationError, OracleInputError
from ..oracles.problems import (
    CoverageOracle, DominationOracle, InfluenceOracle, LocationOracle,
    make_cov, make_dom, make_inf, make_loc,
)

# Parâmetros da distribuição normal truncada dos pesos
NORMAL_MEAN = 1.0
NORMAL_STD = 0.2
NORMAL_CLAMP = (0.1, 1.9)
UNIFORM_RANGE = (0.4, 1.6)

def make_rng(seed: int) -> np.random.Generator:
    """Gerador PCG64 de 64 bits, o único usado pelo projeto"""
    return np.random.Generator(np.random.PCG64(seed))

def generate_weights(n: int, scheme: Union[WeightScheme, str], seed: int) -> np.ndarray:
    """
    Gera o vetor de pesos de um esquema

    normal: 𝒩(1, 0.2) por Box-Muller sobre pares de uniformes, truncado em [0.1, 1.9];
    uniform: 𝒰(0.4, 1.6); unit: todos iguais a 1.

    Args:
        n: Quantidade de elementos
        scheme: Esquema de pesos
        seed: Semente do gerador

    Returns:
        np.ndarray: Pesos, determinísticos para (n, scheme, seed)

    Raises:
        InstanceValidationError: Esquema desconhecido ou n negativo
    """
    try:
        scheme = WeightScheme(scheme)
    except ValueError:
        raise InstanceValidationError(f"Esquema de pesos desconhecido: {scheme}")
    if n < 0:
        raise InstanceValidationError(f"Quantidade de elementos inválida: {n}")

    if scheme == WeightScheme.UNIT:
        return np.ones(n)
    rng = make_rng(seed)
    if scheme == WeightScheme.UNIFORM:
        low, high = UNIFORM_RANGE
        return low + (high - low) * rng.random(n)

    uniforms = rng.random((n, 2))
    radius = np.sqrt(-2.0 * np.log1p(-uniforms[:, 0]))
    normal = radius * np.cos(2.0 * np.pi * uniforms[:, 1])
    return np.clip(NORMAL_MEAN + NORMAL_STD * normal, *NORMAL_CLAMP)

class _Lines:
    """Cursor sobre as linhas significativas do texto, com número de linha"""

    def __init__(self, text: str):
        self._items: List[Tuple[int, List[str]]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = raw.split("#", 1)[0].split()
            if tokens:
                self._items.append((number, tokens))
        self._index = 0
        self.last_line = len(text.splitlines())

    def peek(self) -> Optional[Tuple[int, List[str]]]:
        return self._items[self._index] if self._index < len(self._items) else None

    def next(self, expected: str) -> Tuple[int, List[str]]:
        item = self.peek()
        if item is None:
            raise InstanceFormatError(f"fim inesperado do arquivo, esperado {expected}", self.last_line)
        self._index += 1
        return item

def _number(token: str, line: int, cast=float):
    try:
        return cast(token)
    except ValueError:
        raise InstanceFormatError(f"valor numérico inválido: '{token}'", line)

def _parse_header(lines: _Lines) -> Tuple[ProblemKind, int, int]:
    line, tokens = lines.next("cabeçalho SKP")
    if len(tokens) != 4 or tokens[0] != "SKP":
        raise InstanceFormatError("cabeçalho deve ser 'SKP <KIND> <n> <aux>'", line)
    try:
        kind = ProblemKind(tokens[1])
    except ValueError:
        raise InstanceFormatError(f"família desconhecida: {tokens[1]}", line)
    n = _number(tokens[2], line, int)
    aux = _number(tokens[3], line, int)
    if n < 0 or aux < 0:
        raise InstanceFormatError("n e aux devem ser não negativos", line)
    return kind, n, aux

def _parse_cov(lines: _Lines, n: int, m: int) -> CoverageOracle:
    values: List[float] = []
    if m:
        line, tokens = lines.next("valores dos itens")
        if len(tokens) != m:
            raise InstanceFormatError(f"esperados {m} valores de itens, encontrados {len(tokens)}", line)
        values = [_number(t, line) for t in tokens]
        negative = [i for i, v in enumerate(values) if not v >= 0]
        if negative:
            raise InstanceValidationError(f"valor do item {negative[0] + 1} deve ser não negativo", line=line)

    sets: List[List[int]] = []
    for element in range(n):
        line, tokens = lines.next(f"conjunto do elemento {element}")
        count = _number(tokens[0], line, int)
        if count != len(tokens) - 1:
            raise InstanceFormatError(f"conjunto declara {count} itens e lista {len(tokens) - 1}", line)
        items = [_number(t, line, int) for t in tokens[1:]]
        for item in items:
            if item < 1 or item > m:
                raise InstanceValidationError(
                    f"item {item} do elemento {element} fora do intervalo 1..{m}", element=element, line=line
                )
        sets.append([item - 1 for item in items])
    return make_cov(m, values, sets)

def _parse_inf(lines: _Lines, n: int, m: int) -> InfluenceOracle:
    edges: List[Tuple[int, int, float]] = []
    seen = set()
    while lines.peek() is not None and lines.peek()[1][0] != "WEIGHTS":
        line, tokens = lines.next("aresta")
        if len(tokens) != 3:
            raise InstanceFormatError("aresta INF deve ser '<j> <i> <p>'", line)
        source, target = _number(tokens[0], line, int), _number(tokens[1], line, int)
        probability = _number(tokens[2], line)
        if source < 0 or source >= n:
            raise InstanceValidationError(f"fonte {source} fora do intervalo 0..{n - 1}", element=source, line=line)
        if target < 0 or target >= m:
            raise InstanceValidationError(f"alvo {target} fora do intervalo 0..{m - 1}", element=source, line=line)
        if not 0.0 <= probability <= 1.0:
            raise InstanceValidationError(
                f"probabilidade {probability} fora de [0,1] na aresta ({source}, {target})",
                element=source, line=line,
            )
        if (source, target) in seen:
            raise InstanceValidationError(f"aresta ({source}, {target}) duplicada", element=source, line=line)
        seen.add((source, target))
        edges.append((source, target, probability))
    return make_inf(n, m, edges)

def _parse_loc(lines: _Lines, n: int, m: int) -> LocationOracle:
    rows: List[List[float]] = []
    for customer in range(m):
        line, tokens = lines.next(f"lucros do cliente {customer}")
        if len(tokens) != n:
            raise InstanceFormatError(f"esperados {n} lucros, encontrados {len(tokens)}", line)
        row = [_number(t, line) for t in tokens]
        for facility, profit in enumerate(row):
            if not profit >= 0:
                raise InstanceValidationError(
                    f"lucro negativo v[{customer}][{facility}] = {profit}", element=facility, line=line
                )
        rows.append(row)
    return make_loc(n, m, rows)

def _parse_dom(lines: _Lines, n: int, edge_count: int) -> DominationOracle:
    edges: List[Tuple[int, int]] = []
    for _ in range(edge_count):
        line, tokens = lines.next("aresta")
        if len(tokens) != 2 or tokens[0] == "WEIGHTS":
            raise InstanceFormatError(f"esperadas {edge_count} arestas '<u> <v>'", line)
        u, v = _number(tokens[0], line, int), _number(tokens[1], line, int)
        for vertex in (u, v):
            if vertex < 0 or vertex >= n:
                raise InstanceValidationError(f"vértice {vertex} fora do intervalo 0..{n - 1}", element=vertex, line=line)
        edges.append((u, v))
    return make_dom(n, edges)

def _parse_weights(lines: _Lines, n: int) -> Tuple[np.ndarray, Optional[WeightSpec]]:
    line, tokens = lines.next("WEIGHTS")
    if tokens[0] != "WEIGHTS" or len(tokens) < 2:
        raise InstanceFormatError("esperado 'WEIGHTS EXPLICIT ...' ou 'WEIGHTS SCHEME <s> <seed>'", line)
    if tokens[1] == "EXPLICIT":
        if len(tokens) - 2 != n:
            raise InstanceFormatError(f"esperados {n} pesos, encontrados {len(tokens) - 2}", line)
        weights = np.array([_number(t, line) for t in tokens[2:]])
        bad = np.flatnonzero(~(weights > 0))
        if bad.size:
            raise InstanceValidationError(
                f"peso do elemento {int(bad[0])} deve ser positivo", element=int(bad[0]), line=line
            )
        return weights, None
    if tokens[1] == "SCHEME":
        if len(tokens) != 4:
            raise InstanceFormatError("diretiva deve ser 'WEIGHTS SCHEME <s> <seed>'", line)
        seed = _number(tokens[3], line, int)
        if seed < 0:
            raise InstanceValidationError(f"semente negativa: {seed}", line=line)
        try:
            scheme = WeightScheme(tokens[2])
        except ValueError:
            raise InstanceValidationError(f"esquema de pesos desconhecido: {tokens[2]}", line=line)
        return generate_weights(n, scheme, seed), WeightSpec(scheme=scheme, seed=seed)
    raise InstanceFormatError(f"modo de pesos desconhecido: {tokens[1]}", line)

def _parse_budget(lines: _Lines) -> float:
    line, tokens = lines.next("BUDGET")
    if tokens[0] != "BUDGET" or len(tokens) != 2:
        raise InstanceFormatError("esperado 'BUDGET <W>'", line)
    budget = _number(tokens[1], line)
    if not budget > 0:
        raise InstanceValidationError(f"orçamento W deve ser positivo: {budget}", line=line)
    return budget

_BODY_PARSERS = {
    ProblemKind.COV: _parse_cov,
    ProblemKind.INF: _parse_inf,
    ProblemKind.LOC: _parse_loc,
    ProblemKind.DOM: _parse_dom,
}

def parse_instance(source: Union[str, Path], name: Optional[str] = None) -> Instance:
    """
    Lê uma instância a partir do texto ou de um caminho

    Args:
        source: Texto da instância, ou Path para o arquivo
        name: Nome da instância (padrão: nome do arquivo)

    Returns:
        Instance: Instância validada com o oráculo construído

    Raises:
        InstanceFormatError: Erro de sintaxe (com número da linha)
        InstanceValidationError: Índice, probabilidade, lucro, peso ou orçamento inválido
    """
    if isinstance(source, Path):
        name = name or source.stem
        text = source.read_text(encoding="utf-8")
    else:
        text = source

    lines = _Lines(text)
    kind, n, aux = _parse_header(lines)
    try:
        oracle = _BODY_PARSERS[kind](lines, n, aux)
    except OracleInputError as e:
        raise InstanceValidationError(str(e), element=e.element)
    weights, spec = _parse_weights(lines, n)
    budget = _parse_budget(lines)
    extra = lines.peek()
    if extra is not None:
        raise InstanceFormatError(f"conteúdo após BUDGET: '{' '.join(extra[1])}'", extra[0])

    instance = Instance(kind, oracle, weights, budget, weight_spec=spec, name=name)
    logger.debug(f"Instância {instance.name} lida: {kind.value} n={n} aux={aux} W={budget:g}")
    return instance

def load_instance(path: Union[str, Path]) -> Instance:
    """Lê um arquivo de instância"""
    return parse_instance(Path(path))

def _fmt(value: float) -> str:
    value = float(value)
    return str(int(value)) if value.is_integer() and abs(value) < 1e15 else repr(value)

def _fmt_row(values: Sequence[float]) -> str:
    return " ".join(_fmt(v) for v in values)

def serialize_instance(instance: Instance) -> str:
    """
    Texto canônico da instância (base do fingerprint)

    Raises:
        InputError: Se o oráculo não pertencer a uma das quatro famílias
    """
    oracle = instance.oracle
    kind = instance.kind
    lines: List[str] = []
    if kind == ProblemKind.DOM and isinstance(oracle, DominationOracle):
        lines.append(f"SKP DOM {oracle.n} {len(oracle.edges)}")
        lines.extend(f"{u} {v}" for u, v in oracle.edges)
    elif kind == ProblemKind.COV and isinstance(oracle, CoverageOracle):
        lines.append(f"SKP COV {oracle.n} {oracle.m}")
        if oracle.m:
            lines.append(_fmt_row(oracle.values))
        lines.extend(" ".join([str(len(items))] + [str(i + 1) for i in items]) for items in oracle.sets)
    elif kind == ProblemKind.INF and isinstance(oracle, InfluenceOracle):
        lines.append(f"SKP INF {oracle.n} {oracle.m}")
        lines.extend(f"{j} {i} {_fmt(p)}" for j, i, p in oracle.edges)
    elif kind == ProblemKind.LOC and isinstance(oracle, LocationOracle):
        lines.append(f"SKP LOC {oracle.n} {oracle.m}")
        lines.extend(_fmt_row(row) for row in oracle.profits)
    else:
        raise InputError(f"Oráculo {type(oracle).__name__} não pode ser serializado como {kind.value}")

    spec = instance.weight_spec
    if spec is not None:
        lines.append(f"WEIGHTS SCHEME {spec.scheme.value} {spec.seed}")
    else:
        lines.append(" ".join(["WEIGHTS", "EXPLICIT"] + [_fmt(w) for w in instance.weights]))
    lines.append(f"BUDGET {_fmt(instance.budget)}")
    return "\n".join(lines) + "\n"

def save_instance(instance: Instance, path: Union[str, Path]) -> Path:
    """Grava o texto canônico da instância"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_instance(instance), encoding="utf-8")
    logger.info(f"Instância {instance.name} salva em {path}")
    return path

def generate_random_instance(
    kind: Union[ProblemKind, str],
    n: int,
    m: Optional[int] = None,
    density: float = 0.3,
    seed: int = 0,
    scheme: Union[WeightScheme, str] = WeightScheme.UNIFORM,
    budget: Optional[float] = None,
) -> Instance:
    """
    Gera uma instância sintética determinística

    Args:
        kind: Família (COV, INF, LOC ou DOM)
        n: Quantidade de elementos
        m: Itens (COV), alvos (INF) ou clientes (LOC); padrão 2n, 2n e n
        density: Probabilidade de cada incidência, aresta ou ligação
        seed: Semente da estrutura e dos pesos
        scheme: Esquema de pesos
        budget: Orçamento (padrão: 30% do peso total, no mínimo 1)

    Returns:
        Instance: Instância com diretiva de pesos registrada
    """
    kind = ProblemKind(kind)
    scheme = WeightScheme(scheme)
    if not 0.0 <= density <= 1.0:
        raise InputError(f"Densidade fora de [0,1]: {density}")
    rng = make_rng(seed)

    if kind == ProblemKind.COV:
        m = 2 * n if m is None else m
        values = rng.integers(1, 10, size=m).astype(float)
        sets = []
        for _ in range(n):
            items = np.flatnonzero(rng.random(m) < density).tolist()
            if not items and m:
                items = [int(rng.integers(m))]
            sets.append(items)
        oracle = make_cov(m, values, sets)
    elif kind == ProblemKind.INF:
        m = 2 * n if m is None else m
        mask = rng.random((n, m)) < density
        probabilities = rng.random((n, m))
        edges = [(int(j), int(i), float(probabilities[j, i])) for j, i in zip(*np.nonzero(mask))]
        oracle = make_inf(n, m, edges)
    elif kind == ProblemKind.LOC:
        m = n if m is None else m
        profits = rng.integers(0, 20, size=(m, n)) * (rng.random((m, n)) < max(density, 0.5))
        oracle = make_loc(n, m, profits.astype(float))
    else:
        upper = np.triu(rng.random((n, n)) < density, k=1)
        oracle = make_dom(n, [(int(u), int(v)) for u, v in zip(*np.nonzero(upper))])

    weights = generate_weights(n, scheme, seed)
    if budget is None:
        budget = max(1.0, round(0.3 * float(weights.sum()), 6))
    return Instance(kind, oracle, weights, budget,
                    weight_spec=WeightSpec(scheme=scheme, seed=seed), name=f"{kind.value}.{n}.{seed}")

def instance_fingerprint(instance: Instance) -> str:
    """
    sha256 do texto canônico da instância

    Returns:
        str: Hash hexadecimal, ou "" para oráculos fora das quatro famílias
    """
    try:
        text = serialize_instance(instance)
    except InputError:
        return ""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
