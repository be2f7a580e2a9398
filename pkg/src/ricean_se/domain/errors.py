#ricean_se/src/ricean_se/domain/errors.py

from typing import List, Tuple, Type


class RiceanSeError(ValueError):
    """Base de todos os erros de regra de negócio do workbench."""


class DimensionError(RiceanSeError):
    pass


class PowerError(RiceanSeError):
    pass


class SpacingError(RiceanSeError):
    pass


class UnsupportedLayout(RiceanSeError):
    pass


class UnboundedLimit(RiceanSeError):
    """Limite de M grande sem contaminação de piloto (célula única): SINR cresce sem limite."""


class SharedKError(RiceanSeError):
    """Limite de K grande exige o mesmo fator K para todos os usuários."""


class InsufficientSamples(RiceanSeError):
    pass


class MomentIndexError(RiceanSeError, IndexError):
    pass


class ScenarioError(RiceanSeError):
    """Falha de parse / validação de arquivo de cenário ou de sweep."""


class ConfigError(RiceanSeError):
    """
    Agrega todas as violações encontradas por validate_config.
    violations = [(classe do erro, mensagem), ...]
    """

    def __init__(self, violations: List[Tuple[Type[RiceanSeError], str]]):
        self.violations = list(violations)
        texto = "; ".join(msg for _, msg in self.violations)
        super().__init__(f"Configuração inválida ({len(self.violations)} violações): {texto}")
