""" This file contains the manifest written next to every set of results."""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from ..configs import MANIFEST_NAME
from ..utils.io import sha256_file, write_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResultManifest:
    """Record of one run: the config snapshot, every produced file with its sha256, versions and timings."""

    subcommand: str
    directory: str
    config: Dict[str, Any]
    files: Dict[str, str]
    versions: Dict[str, str]
    timings: Dict[str, float] = field(default_factory=dict)
    warnings: Tuple[str, ...] = ()
    summary: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def collect(cls, subcommand: str, directory: str, config: Dict[str, Any], names: List[str], **kwargs) -> "ResultManifest":
        """Hashes the named files (relative to directory)."""
        files = {name: sha256_file(os.path.join(directory, name)) for name in sorted(names)}
        return cls(subcommand, directory, config, files, **kwargs)

    @classmethod
    def parse_manifest(cls, path: str) -> "ResultManifest":
        """Reads a manifest back from disk.

        Args:
            path (str): Manifest file, or the directory holding it.

        Returns:
            ResultManifest: Parsed manifest, directory set to the manifest's folder.
        """
        if os.path.isdir(path):
            path = os.path.join(path, MANIFEST_NAME)
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
        return cls(
            document["subcommand"],
            os.path.dirname(os.path.abspath(path)),
            document["config"],
            document["files"],
            document["versions"],
            document.get("timings", {}),
            tuple(document.get("warnings", ())),
            document.get("summary", {}),
        )

    def verify(self) -> List[str]:
        """Names of files that are missing or whose hash changed. Empty when everything matches."""
        problems = []
        for name, expected in self.files.items():
            path = os.path.join(self.directory, name)
            if not os.path.isfile(path):
                problems.append(name)
                logger.warning("Missing result file %s", path)
            elif sha256_file(path) != expected:
                problems.append(name)
                logger.warning("Hash mismatch for %s", path)
        return problems

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "config": self.config,
            "files": self.files,
            "versions": self.versions,
            "timings": self.timings,
            "warnings": list(self.warnings),
            "summary": self.summary,
        }

    def write(self) -> str:
        return write_json(os.path.join(self.directory, MANIFEST_NAME), self.to_dict())

    def __repr__(self) -> str:
        return (
            f"< giantbic.ResultManifest | subcommand: {self.subcommand} | directory: {self.directory} "
            f"| files: {len(self.files)} >"
        )
