from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from pmivec import __version__
from pmivec.utils.digest import file_digest
from pmivec.utils.exceptions import ArtifactFormatError

MANIFEST_NAME = "manifest.json"


class RunManifest(BaseModel):
    """Record of one pipeline stage: resolved options, seeds and the digests that chain stages.

    parent_manifest is the sha256 of the manifest that produced this stage's
    main input, when one sits next to that input.
    """

    model_config = ConfigDict(extra="forbid")

    command: str
    tool_version: str
    config: dict[str, Any] = Field(default_factory=dict)
    seeds: dict[str, int] = Field(default_factory=dict)
    inputs: dict[str, str] = Field(default_factory=dict)
    outputs: dict[str, str] = Field(default_factory=dict)
    parent_manifest: str | None = None
    started_at: datetime
    finished_at: datetime | None = None

    @classmethod
    def start(cls, command: str, config: BaseModel | dict[str, Any]) -> RunManifest:
        payload = config.model_dump(mode="json") if isinstance(config, BaseModel) else config
        return cls(
            command=command,
            tool_version=__version__,
            config=payload,
            started_at=datetime.now(timezone.utc),
        )

    def add_input(self, name: str, path: str | Path) -> None:
        """Record an input's digest and, for the first input with a manifest beside it, chain to it."""
        path = Path(path)
        self.inputs[name] = file_digest(path)
        sibling = path.parent / MANIFEST_NAME
        if self.parent_manifest is None and sibling.is_file():
            self.parent_manifest = file_digest(sibling)

    def add_output(self, name: str, path: str | Path) -> None:
        self.outputs[name] = file_digest(path)

    def finish(self, path: str | Path) -> Path:
        """Stamp the finish time and write the manifest as JSON."""
        self.finished_at = datetime.now(timezone.utc)
        path = Path(path)
        path.write_text(self.model_dump_json(indent=2), encoding="utf-8")
        return path


def read_manifest(path: str | Path) -> RunManifest:
    """Raises ArtifactFormatError when the file is not a valid manifest."""
    try:
        return RunManifest.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValueError as e:
        raise ArtifactFormatError(f"{path}: not a run manifest: {e}") from e
