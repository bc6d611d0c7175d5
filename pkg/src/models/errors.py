from typing import Optional


class SKPError(Exception):
    """Erro base do solver"""


class InputError(SKPError, ValueError):
    """Entrada inválida (instância, oráculo ou parâmetros)"""


class OracleInputError(InputError):
    """Dados inválidos na construção ou consulta de um oráculo"""

    def __init__(self, message: str, element: Optional[int] = None):
        super().__init__(message)
        self.element = element


class InstanceFormatError(InputError):
    """Erro de sintaxe no arquivo de instância"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"linha {line}: {message}"
        super().__init__(message)


class InstanceValidationError(InputError):
    """Erro semântico no arquivo de instância (índices, probabilidades, pesos)"""

    def __init__(self, message: str, element: Optional[int] = None, line: Optional[int] = None):
        self.element = element
        self.line = line
        if line is not None:
            message = f"linha {line}: {message}"
        super().__init__(message)


class UniverseTooLargeError(InputError):
    """Universo grande demais para enumeração exaustiva"""

    def __init__(self, size: int, limit: int):
        super().__init__(f"Universo com {size} elementos excede o limite de {limit} para força bruta")
        self.size = size
        self.limit = limit
