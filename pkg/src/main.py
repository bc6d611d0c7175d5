import json
import sys
from pathlib import Path
from typing import List, Optional
import typer
from dotenv import load_dotenv
from loguru import logger
from pydantic import ValidationError
from rich.console import Console

# Configurando o ambiente
WORKSPACE_ROOT = Path(__file__).parent.parent
sys.path.append(str(WORKSPACE_ROOT))

# Importando módulos do projeto
from src.models.config import BoundKind, BranchingKind, LogLevel, LogSettings, ReportFormat, SolverConfig
from src.models.entities import Instance, ProblemKind, SolveReport, WeightScheme
from src.models.errors import InputError
from src.services.instances import generate_random_instance, load_instance, save_instance, serialize_instance
from src.services.report import csv_header, emit_report, gap_stats, summarize_sweep, write_sweep_workbook
from src.services.solver import all_configurations, solve as solve_instance, sweep_budgets, verify_instance

# Códigos de saída
EXIT_OPTIMAL = 0
EXIT_INPUT_ERROR = 1
EXIT_LIMIT = 2
EXIT_DISAGREEMENT = 3

app = typer.Typer(help="Solver exato do Problema da Mochila Submodular (SKP)")
console = Console(stderr=True)

def configurar_logger(log_dir: Optional[Path] = None) -> None:
    """
    Configura o sistema de logs

    O nível vem de SKP_LOG (error, info ou debug), lido do ambiente ou do .env.
    Os logs vão para stderr; stdout fica reservado ao relatório.

    Args:
        log_dir: Diretório opcional para arquivos de log com rotação diária
    """
    load_dotenv()
    try:
        settings = LogSettings.from_env()
    except ValidationError:
        settings = LogSettings(level=LogLevel.INFO)
        console.print("SKP_LOG inválido, usando 'info'", style="yellow")

    logger.remove()  # Remove handlers padrão
    logger.add(
        lambda msg: console.print(msg, style="blue", end="", markup=False, highlight=False),
        level=settings.loguru_level,
    )
    if log_dir is not None:
        log_dir.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_dir / "skp_{time}.log",
            rotation="1 day",
            retention="7 days",
            level=settings.loguru_level,
            encoding='utf-8'
        )

def load_json_file(path: Path) -> dict:
    """
    Carrega um arquivo JSON

    Args:
        path: Caminho do arquivo

    Returns:
        dict: Conteúdo do arquivo
    """
    try:
        return json.loads(path.read_text(encoding='utf-8'))
    except Exception as e:
        logger.error(f"Erro ao carregar arquivo {path}: {str(e)}")
        raise typer.Exit(EXIT_INPUT_ERROR)

def build_config(
    config_file: Optional[Path] = None,
    bound: Optional[BoundKind] = None,
    branch: Optional[BranchingKind] = None,
    epsilon: Optional[float] = None,
    time_limit: Optional[float] = None,
    node_limit: Optional[int] = None,
    no_primal: bool = False,
    no_lazy: bool = False,
    no_reduce: bool = False,
) -> SolverConfig:
    """
    Monta a configuração do solver: arquivo JSON primeiro, flags por cima

    Returns:
        SolverConfig: Configuração validada

    Raises:
        ValidationError: Combinação inválida (ex.: dual sem heurística primal, epsilon ≤ 0)
    """
    data = load_json_file(config_file) if config_file else {}
    overrides = {
        "bound": bound,
        "branching": branch,
        "epsilon": epsilon,
        "time_limit": time_limit,
        "node_limit": node_limit,
    }
    data.update({key: value for key, value in overrides.items() if value is not None})
    if no_primal:
        data["primal_heuristic"] = False
    if no_lazy:
        data["lazy_update"] = False
    if no_reduce:
        data["reductions"] = False
    return SolverConfig(**data)

def _read_instance(path: Path, budget: Optional[float] = None) -> Instance:
    try:
        instance = load_instance(path)
    except OSError as e:
        raise InputError(f"Não foi possível ler {path}: {e}")
    return instance.with_budget(budget) if budget is not None else instance

def _input_error(error: Exception) -> typer.Exit:
    logger.error(f"Entrada inválida: {error}")
    return typer.Exit(EXIT_INPUT_ERROR)

@app.command()
def solve(
    instance: Path = typer.Option(..., "--instance", help="Arquivo da instância", dir_okay=False),
    bound: Optional[BoundKind] = typer.Option(None, "--bound", help="Limitante superior (padrão rs)"),
    branch: Optional[BranchingKind] = typer.Option(None, "--branch", help="Ramificação (padrão dual)"),
    epsilon: Optional[float] = typer.Option(None, "--epsilon", help="Precisão do limitante k (padrão 1)"),
    budget: Optional[float] = typer.Option(None, "--budget", help="Substitui o orçamento do arquivo"),
    time_limit: Optional[float] = typer.Option(None, "--time-limit", help="Limite de tempo em segundos (padrão 1800)"),
    node_limit: Optional[int] = typer.Option(None, "--node-limit", help="Limite de nós visitados"),
    no_primal: bool = typer.Option(False, "--no-primal", help="Desliga a heurística primal"),
    no_lazy: bool = typer.Option(False, "--no-lazy", help="Desliga a atualização preguiçosa"),
    no_reduce: bool = typer.Option(False, "--no-reduce", help="Desliga as regras de redução"),
    fmt: ReportFormat = typer.Option(ReportFormat.JSON, "--format", help="Formato do relatório"),
    config_file: Optional[Path] = typer.Option(None, "--config", help="JSON com campos de SolverConfig"),
    log_dir: Optional[Path] = typer.Option(None, "--log-dir", help="Diretório de arquivos de log"),
):
    """Resolve uma instância e imprime o relatório"""
    configurar_logger(log_dir)
    try:
        config = build_config(config_file, bound, branch, epsilon, time_limit, node_limit,
                              no_primal, no_lazy, no_reduce)
        problem = _read_instance(instance, budget)
    except (InputError, ValidationError) as e:
        raise _input_error(e)

    report = solve_instance(problem, config)
    typer.echo(emit_report(report, fmt), nl=False)
    raise typer.Exit(EXIT_OPTIMAL if report.is_optimal else EXIT_LIMIT)

@app.command()
def sweep(
    instance: Path = typer.Option(..., "--instance", help="Arquivo da instância", dir_okay=False),
    w_from: int = typer.Option(1, "--w-from", help="Primeiro orçamento"),
    w_to: int = typer.Option(20, "--w-to", help="Último orçamento"),
    early_stop: bool = typer.Option(False, "--early-stop", help="Para no primeiro W não resolvido"),
    bound: Optional[BoundKind] = typer.Option(None, "--bound"),
    branch: Optional[BranchingKind] = typer.Option(None, "--branch"),
    epsilon: Optional[float] = typer.Option(None, "--epsilon"),
    time_limit: Optional[float] = typer.Option(None, "--time-limit"),
    node_limit: Optional[int] = typer.Option(None, "--node-limit"),
    no_primal: bool = typer.Option(False, "--no-primal"),
    no_lazy: bool = typer.Option(False, "--no-lazy"),
    no_reduce: bool = typer.Option(False, "--no-reduce"),
    xlsx: Optional[Path] = typer.Option(None, "--xlsx", help="Grava também uma planilha da varredura"),
    config_file: Optional[Path] = typer.Option(None, "--config"),
    log_dir: Optional[Path] = typer.Option(None, "--log-dir"),
):
    """Resolve a instância para W = w-from..w-to e imprime uma linha CSV por W"""
    configurar_logger(log_dir)
    try:
        config = build_config(config_file, bound, branch, epsilon, time_limit, node_limit,
                              no_primal, no_lazy, no_reduce)
        problem = _read_instance(instance)
        reports: List[SolveReport] = []
        for report in sweep_budgets(problem, config, range(w_from, w_to + 1), early_stop):
            if not reports:
                typer.echo(csv_header(), nl=False)
            reports.append(report)
            typer.echo(emit_report(report, ReportFormat.CSV_ROW), nl=False)
    except (InputError, ValidationError) as e:
        raise _input_error(e)

    if reports:
        summary = summarize_sweep(reports)
        logger.info(
            f"Varredura {summary.label}: {summary.solved}/{summary.runs} resolvidos, "
            f"maior W resolvido {summary.max_solved_budget}"
        )
    if xlsx is not None:
        write_sweep_workbook(reports, xlsx)

@app.command()
def verify(
    instance: Path = typer.Option(..., "--instance", help="Arquivo da instância (|𝒰| ≤ 25)", dir_okay=False),
    epsilon: float = typer.Option(1.0, "--epsilon"),
    time_limit: Optional[float] = typer.Option(None, "--time-limit"),
    budget: Optional[float] = typer.Option(None, "--budget"),
    log_dir: Optional[Path] = typer.Option(None, "--log-dir"),
):
    """Compara as oito variantes do solver com a força bruta"""
    configurar_logger(log_dir)
    try:
        problem = _read_instance(instance, budget)
        result = verify_instance(problem, all_configurations(epsilon, time_limit))
    except (InputError, ValidationError) as e:
        raise _input_error(e)

    for report in result.reports:
        typer.echo(f"{report.config.label}\t{report.status.value}\t{report.optimum:g}")
    verdict = "PASS" if result.passed else "FAIL"
    typer.echo(f"{verdict} {result.agreeing}/{len(result.reports)} concordam em {result.optimum:g}")
    for message in result.disagreements:
        typer.echo(f"  {message}")
    raise typer.Exit(EXIT_OPTIMAL if result.passed else EXIT_DISAGREEMENT)

@app.command()
def generate(
    kind: ProblemKind = typer.Option(..., "--kind", help="Família da instância"),
    n: int = typer.Option(..., "--n", help="Quantidade de elementos"),
    m: Optional[int] = typer.Option(None, "--m", help="Itens, alvos ou clientes"),
    density: float = typer.Option(0.3, "--density", help="Probabilidade de incidência"),
    seed: int = typer.Option(0, "--seed"),
    scheme: WeightScheme = typer.Option(WeightScheme.UNIFORM, "--scheme", help="Esquema de pesos"),
    budget: Optional[float] = typer.Option(None, "--budget"),
    output: Optional[Path] = typer.Option(None, "--output", help="Arquivo de saída (padrão stdout)"),
    log_dir: Optional[Path] = typer.Option(None, "--log-dir"),
):
    """Gera uma instância sintética determinística"""
    configurar_logger(log_dir)
    try:
        problem = generate_random_instance(kind, n, m, density, seed, scheme, budget)
    except (InputError, ValidationError, ValueError) as e:
        raise _input_error(e)

    if output is not None:
        save_instance(problem, output)
    else:
        typer.echo(serialize_instance(problem), nl=False)

@app.command()
def gap(
    instance: Path = typer.Option(..., "--instance", help="Arquivo da instância", dir_okay=False),
    bounds: Optional[List[BoundKind]] = typer.Option(None, "--bound", help="Limitantes (repetível)"),
    epsilon: float = typer.Option(1.0, "--epsilon"),
    budget: Optional[float] = typer.Option(None, "--budget"),
    log_dir: Optional[Path] = typer.Option(None, "--log-dir"),
):
    """Imprime o gap (ub − s*)/s* de cada limitante na raiz; null quando s* = 0"""
    configurar_logger(log_dir)
    try:
        problem = _read_instance(instance, budget)
        gaps = gap_stats(problem, bounds or None, epsilon=epsilon)
    except (InputError, ValidationError) as e:
        raise _input_error(e)
    typer.echo(json.dumps({"instance": problem.name, "gaps": gaps}, indent=2))

if __name__ == "__main__":
    # Configura e executa a aplicação
    app()
