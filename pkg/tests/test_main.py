import json
import pytest
from typer.testing import CliRunner

from src.main import EXIT_INPUT_ERROR, EXIT_LIMIT, app
from src.models.config import BoundKind
from src.services.instances import load_instance
from src.services.report import CSV_COLUMNS

runner = CliRunner()

@pytest.fixture(autouse=True)
def silenciar_logs(monkeypatch):
    """Mantém stdout só com o relatório durante os testes"""
    monkeypatch.setenv("SKP_LOG", "error")

@pytest.fixture
def e1_path(data_dir):
    return str(data_dir / "e1.skp")

@pytest.fixture
def e2_path(data_dir):
    return str(data_dir / "e2.skp")

def _csv_rows(output):
    lines = output.strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    return [dict(zip(CSV_COLUMNS, line.split(","))) for line in lines[1:]]

def test_solve_e2(e2_path):
    """Testa solve --bound rs --branch dual no triângulo"""
    result = runner.invoke(app, ["solve", "--instance", e2_path, "--bound", "rs", "--branch", "dual"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["optimum"] == 3
    assert payload["status"] == "optimal"

def test_solve_epsilon_invalido(e1_path):
    """Testa que ε = 0 é erro de entrada"""
    result = runner.invoke(app, ["solve", "--instance", e1_path, "--bound", "k", "--epsilon", "0"])
    assert result.exit_code == EXIT_INPUT_ERROR

def test_solve_dual_sem_primal(e1_path):
    """Testa a rejeição da combinação dual sem heurística primal"""
    result = runner.invoke(app, ["solve", "--instance", e1_path, "--branch", "dual", "--no-primal"])
    assert result.exit_code == EXIT_INPUT_ERROR

def test_solve_orcamento_minimo(e1_path):
    """Testa --budget abaixo de todos os pesos"""
    result = runner.invoke(app, ["solve", "--instance", e1_path, "--budget", "0.05"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["optimum"] == 0

def test_solve_arquivo_inexistente(tmp_path):
    """Testa um caminho inexistente"""
    result = runner.invoke(app, ["solve", "--instance", str(tmp_path / "nada.skp")])
    assert result.exit_code == EXIT_INPUT_ERROR

def test_solve_arquivo_invalido(tmp_path):
    """Testa um arquivo com erro de sintaxe"""
    path = tmp_path / "ruim.skp"
    path.write_text("SKP COV 1\n", encoding="utf-8")
    result = runner.invoke(app, ["solve", "--instance", str(path)])
    assert result.exit_code == EXIT_INPUT_ERROR

def test_solve_limite_de_tempo(e1_path):
    """Testa o código de saída de limite atingido"""
    result = runner.invoke(app, ["solve", "--instance", e1_path, "--time-limit", "0"])
    assert result.exit_code == EXIT_LIMIT
    assert json.loads(result.stdout)["status"] == "time_limit"

def test_solve_csv_row(e1_path):
    """Testa --format csv-row: uma linha sem cabeçalho"""
    result = runner.invoke(app, ["solve", "--instance", e1_path, "--format", "csv-row",
                                 "--bound", "fk", "--branch", "basic", "--no-lazy", "--no-reduce"])
    assert result.exit_code == 0
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 1
    row = dict(zip(CSV_COLUMNS, lines[0].split(",")))
    assert float(row["optimum"]) == 5
    assert row["branching"] == "basic"

def test_solve_config_json(tmp_path, e1_path):
    """Testa --config com sobreposição pelas flags"""
    config = tmp_path / "solver.json"
    config.write_text(json.dumps({"bound": "fk", "branching": "basic", "node_limit": 1000}), encoding="utf-8")
    result = runner.invoke(app, ["solve", "--instance", e1_path, "--config", str(config), "--bound", "dom"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["config"]["bound"] == BoundKind.DOMINATION.value
    assert payload["config"]["branching"] == "basic"
    assert payload["config"]["node_limit"] == 1000

def test_solve_config_ilegivel(tmp_path, e1_path):
    """Testa um arquivo de configuração inválido"""
    config = tmp_path / "solver.json"
    config.write_text("{", encoding="utf-8")
    result = runner.invoke(app, ["solve", "--instance", e1_path, "--config", str(config)])
    assert result.exit_code == EXIT_INPUT_ERROR

def test_solve_log_dir(tmp_path, e1_path):
    """Testa o arquivo de log com rotação"""
    result = runner.invoke(app, ["solve", "--instance", e1_path, "--log-dir", str(tmp_path / "logs")])
    assert result.exit_code == 0
    assert list((tmp_path / "logs").glob("skp_*.log"))

def test_sweep_e1(e1_path):
    """Testa a varredura W = 1..3 em E1: ótimos 3, 5, 8"""
    result = runner.invoke(app, ["sweep", "--instance", e1_path, "--w-from", "1", "--w-to", "3"])
    assert result.exit_code == 0
    rows = _csv_rows(result.stdout)
    assert [float(r["optimum"]) for r in rows] == [3, 5, 8]
    assert [float(r["W"]) for r in rows] == [1, 2, 3]

def test_sweep_intervalo_vazio(e1_path):
    """Testa w-from > w-to: saída vazia"""
    result = runner.invoke(app, ["sweep", "--instance", e1_path, "--w-from", "3", "--w-to", "1"])
    assert result.exit_code == 0
    assert result.stdout == ""

def test_sweep_early_stop(e1_path):
    """Testa a interrupção após o primeiro W com limite de tempo"""
    result = runner.invoke(app, ["sweep", "--instance", e1_path, "--w-from", "1", "--w-to", "3",
                                 "--time-limit", "0", "--early-stop"])
    assert result.exit_code == 0
    rows = _csv_rows(result.stdout)
    assert len(rows) == 1
    assert rows[0]["status"] == "time_limit"

def test_sweep_xlsx(tmp_path, e1_path):
    """Testa a planilha gravada pela varredura"""
    path = tmp_path / "sweep.xlsx"
    result = runner.invoke(app, ["sweep", "--instance", e1_path, "--w-from", "1", "--w-to", "2",
                                 "--xlsx", str(path)])
    assert result.exit_code == 0
    assert path.exists()

@pytest.mark.parametrize("name, optimum", [("e1.skp", "5"), ("e2.skp", "3")])
def test_verify(data_dir, name, optimum):
    """Testa a verificação das oito variantes contra a força bruta"""
    result = runner.invoke(app, ["verify", "--instance", str(data_dir / name)])
    assert result.exit_code == 0
    assert f"PASS 8/8 concordam em {optimum}" in result.stdout
    assert result.stdout.count("\toptimal\t") == 8

def test_verify_universo_grande(tmp_path):
    """Testa a recusa de instâncias grandes demais para a força bruta"""
    path = tmp_path / "grande.skp"
    result = runner.invoke(app, ["generate", "--kind", "DOM", "--n", "30", "--output", str(path)])
    assert result.exit_code == 0
    result = runner.invoke(app, ["verify", "--instance", str(path)])
    assert result.exit_code == EXIT_INPUT_ERROR

def test_generate_stdout():
    """Testa a geração para stdout"""
    result = runner.invoke(app, ["generate", "--kind", "COV", "--n", "6", "--seed", "2", "--scheme", "unit"])
    assert result.exit_code == 0
    assert result.stdout.startswith("SKP COV 6 12")
    assert "WEIGHTS SCHEME unit 2" in result.stdout

def test_generate_arquivo(tmp_path):
    """Testa a geração em arquivo e a releitura"""
    path = tmp_path / "inf.skp"
    result = runner.invoke(app, ["generate", "--kind", "INF", "--n", "5", "--m", "4", "--output", str(path),
                                 "--budget", "2"])
    assert result.exit_code == 0
    instance = load_instance(path)
    assert instance.n == 5
    assert instance.budget == 2

def test_generate_densidade_invalida():
    """Testa a validação da densidade"""
    result = runner.invoke(app, ["generate", "--kind", "LOC", "--n", "5", "--density", "2"])
    assert result.exit_code == EXIT_INPUT_ERROR

def test_gap_e2(e2_path):
    """Testa os gaps na raiz do triângulo"""
    result = runner.invoke(app, ["gap", "--instance", e2_path, "--bound", "fk", "--bound", "rs"])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["instance"] == "e2"
    assert payload["gaps"]["fk"] == pytest.approx(1 / 3)
    assert payload["gaps"]["rs"] == pytest.approx(0.0)

def test_gap_indefinido(e1_path):
    """Testa o marcador null quando s* = 0"""
    result = runner.invoke(app, ["gap", "--instance", e1_path, "--budget", "0.5"])
    assert result.exit_code == 0
    assert all(value is None for value in json.loads(result.stdout)["gaps"].values())
