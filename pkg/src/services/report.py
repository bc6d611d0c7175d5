import csv
import io
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union
from loguru import logger
import openpyxl
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter
from pydantic import BaseModel

from ..models.config import BoundKind, ReportFormat
from ..models.entities import Instance, SolveReport, SolveStatus
from .solver import brute_force, root_bounds

# Ordem fixa das colunas da linha CSV
CSV_COLUMNS = (
    "instance_hash", "kind", "n", "W", "scheme", "seed", "bound", "branching",
    "status", "optimum", "root_bound", "nodes", "oracle_calls", "wall_s",
)

def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(getattr(value, "value", value))

def report_row(report: SolveReport) -> List[str]:
    """Valores de um relatório na ordem de CSV_COLUMNS"""
    values = [
        report.instance_hash,
        report.kind,
        report.n,
        report.budget,
        report.weight_scheme,
        report.weight_seed,
        report.config.bound,
        report.config.branching,
        report.status,
        report.optimum,
        report.root_bound,
        report.nodes_visited,
        report.oracle_calls,
        round(report.wall_time, 6),
    ]
    return [_cell(v) for v in values]

def _csv_line(values: Sequence[str]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerow(values)
    return buffer.getvalue()

def csv_header() -> str:
    """Linha de cabeçalho do CSV"""
    return _csv_line(CSV_COLUMNS)

def emit_report(report: SolveReport, format: ReportFormat = ReportFormat.JSON) -> str:
    """
    Serializa um relatório

    Args:
        report: Resultado de uma execução
        format: json (documento completo) ou csv-row (uma linha, sem cabeçalho)

    Returns:
        str: Texto do relatório
    """
    if ReportFormat(format) == ReportFormat.CSV_ROW:
        return _csv_line(report_row(report))
    return report.model_dump_json(indent=2) + "\n"

def parse_report_json(text: str) -> SolveReport:
    """Reconstrói um SolveReport emitido em JSON"""
    return SolveReport.model_validate_json(text)

def gap_stats(
    instance: Instance,
    bounds: Optional[Iterable[Union[BoundKind, str]]] = None,
    optimum: Optional[float] = None,
    epsilon: float = 1.0,
) -> Dict[str, Optional[float]]:
    """
    Gap relativo (ub − s*)/s* de cada limitante na raiz

    Args:
        instance: Instância (pequena, se o ótimo não for informado)
        bounds: Limitantes desejados (padrão: todos)
        optimum: s* conhecido; sem ele a força bruta é usada
        epsilon: Precisão do limitante k

    Returns:
        Dict[str, Optional[float]]: Gap por limitante; None quando s* = 0 (gap indefinido)
    """
    kinds = list(BoundKind) if bounds is None else [BoundKind(b) for b in bounds]
    if optimum is None:
        optimum, _ = brute_force(instance)
    values = root_bounds(instance, kinds, epsilon)

    gaps: Dict[str, Optional[float]] = {}
    for kind in kinds:
        upper = values[kind.value]
        gaps[kind.value] = None if optimum == 0 else (upper - optimum) / optimum
        logger.debug(f"{instance.name}: ub_{kind.value}={upper:.6g} s*={optimum:g}")
    return gaps

class SweepSummary(BaseModel):
    """Resumo de uma varredura de orçamentos para uma variante"""
    label: str
    runs: int
    solved: int
    max_solved_budget: Optional[float] = None
    worst_solved_time: Optional[float] = None
    total_nodes: int = 0
    total_oracle_calls: int = 0

def summarize_sweep(reports: Sequence[SolveReport]) -> SweepSummary:
    """
    Agrega uma varredura de W

    O maior W resolvido é o último de uma sequência ininterrupta de execuções
    ótimas a partir do primeiro W varrido; o pior tempo considera só essa faixa.

    Args:
        reports: Relatórios de uma mesma variante

    Returns:
        SweepSummary: Contagens exatas e o maior W resolvido
    """
    ordered = sorted(reports, key=lambda r: r.budget)
    label = ordered[0].config.label if ordered else ""
    summary = SweepSummary(
        label=label,
        runs=len(ordered),
        solved=sum(1 for r in ordered if r.is_optimal),
        total_nodes=sum(r.nodes_visited for r in ordered),
        total_oracle_calls=sum(r.oracle_calls for r in ordered),
    )
    for report in ordered:
        if not report.is_optimal:
            break
        summary.max_solved_budget = report.budget
        summary.worst_solved_time = max(summary.worst_solved_time or 0.0, report.wall_time)
    return summary

def write_sweep_workbook(reports: Sequence[SolveReport], path: Union[str, Path]) -> Path:
    """
    Grava os relatórios de uma varredura em uma planilha Excel

    Args:
        reports: Relatórios na ordem da varredura
        path: Caminho do arquivo .xlsx

    Returns:
        Path: Caminho gravado
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = "Varredura"

    fills = {
        SolveStatus.OPTIMAL: PatternFill(start_color='51CF66', end_color='51CF66', fill_type='solid'),     # Verde
        SolveStatus.TIME_LIMIT: PatternFill(start_color='FF6B6B', end_color='FF6B6B', fill_type='solid'),  # Vermelho suave
        SolveStatus.NODE_LIMIT: PatternFill(start_color='FFE066', end_color='FFE066', fill_type='solid'),  # Amarelo pastel
    }
    thin = Side(style='thin')
    border = Border(left=thin, right=thin, top=thin, bottom=thin)
    status_column = CSV_COLUMNS.index("status") + 1

    for col, name in enumerate(CSV_COLUMNS, start=1):
        cell = ws.cell(row=1, column=col, value=name)
        cell.font = Font(bold=True)
        cell.alignment = Alignment(horizontal='center')
        cell.border = border
        ws.column_dimensions[get_column_letter(col)].width = 16
    ws.column_dimensions['A'].width = 66

    for row, report in enumerate(reports, start=2):
        for col, value in enumerate(report_row(report), start=1):
            cell = ws.cell(row=row, column=col, value=value if col == 1 else _workbook_value(value))
            cell.border = border
        ws.cell(row=row, column=status_column).fill = fills[report.status]

    if reports:
        summary = summarize_sweep(reports)
        row = len(reports) + 3
        ws.cell(row=row, column=1, value="Resumo").font = Font(bold=True)
        for offset, (label, value) in enumerate([
            ("Variante", summary.label),
            ("Maior W resolvido", summary.max_solved_budget),
            ("Pior tempo na faixa resolvida (s)", summary.worst_solved_time),
            ("Nós visitados (total)", summary.total_nodes),
            ("Chamadas ao oráculo (total)", summary.total_oracle_calls),
        ], start=1):
            ws.cell(row=row + offset, column=1, value=label)
            ws.cell(row=row + offset, column=2, value=value)

    ws.sheet_view.showGridLines = False
    wb.save(str(path))
    logger.info(f"Planilha da varredura gerada em {path}")
    return path

def _workbook_value(text: str):
    """Converte o texto da linha CSV de volta para número quando possível"""
    if text == "":
        return None
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text
