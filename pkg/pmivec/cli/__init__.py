from pmivec.cli.manifest import MANIFEST_NAME, RunManifest, read_manifest
from pmivec.cli.settings import SettingsResolver

__all__ = [
    "MANIFEST_NAME",
    "RunManifest",
    "read_manifest",
    "SettingsResolver",
]
