"""Settings resolution for command-line stages."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel

from pmivec.utils.exceptions import UsageError

ModelT = TypeVar("ModelT", bound=BaseModel)


class SettingsResolver:
    """Resolves stage options from a JSON config file and explicit flags.

    The config file holds one object per subcommand, e.g.
    ``{"train": {"variant": "L", "d": 500}}``. Explicit flags win over the
    file; anything given by neither falls back to the model default.
    """

    def __init__(self, config_path: str | Path | None = None) -> None:
        self.config_path = Path(config_path) if config_path is not None else None
        self._sections = self._load(self.config_path) if self.config_path else {}

    @staticmethod
    def _load(path: Path) -> dict[str, Any]:
        """Read the config file.

        Args:
            path: JSON file

        Returns:
            Mapping of subcommand name to option mapping
        """
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise UsageError(f"cannot read config file {path}: {e}", flag="--config") from e
        except json.JSONDecodeError as e:
            raise UsageError(f"{path} is not valid JSON: {e}", flag="--config") from e
        if not isinstance(data, dict) or not all(isinstance(v, dict) for v in data.values()):
            raise UsageError(f"{path} must map subcommand names to objects", flag="--config")
        return data

    def section(self, command: str) -> dict[str, Any]:
        """Options the config file gives for one subcommand.

        Args:
            command: Subcommand name

        Returns:
            Copy of the section, empty when absent
        """
        return dict(self._sections.get(command, {}))

    def resolve(self, model: type[ModelT], command: str, flags: dict[str, Any]) -> ModelT:
        """Build a validated model from file section and flags.

        Args:
            model: Pydantic config model
            command: Subcommand whose file section applies
            flags: Flag values keyed by model field; None means not given

        Returns:
            Validated, frozen model instance

        Raises:
            pydantic.ValidationError: If a merged value violates a constraint
        """
        known = set(model.model_fields)
        merged = {k: v for k, v in self.section(command).items() if k in known}
        merged.update({k: v for k, v in flags.items() if v is not None and k in known})
        return model.model_validate(merged)

    def value(self, command: str, key: str, flag_value: Any, default: Any = None) -> Any:
        """A single option outside any model, with the same precedence."""
        if flag_value is not None:
            return flag_value
        return self.section(command).get(key, default)
