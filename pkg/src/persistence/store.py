"""Instance directories: canonical text files plus joblib result snapshots."""

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import joblib

from ..config import OUTPUT_DIR, STORE_FILES
from ..decomp.arboreal import ArborealDecomposition
from ..graph.digraph import Digraph
from ..graph.pattern import StarsPathsPattern
from ..reductions.base import ReductionOutput
from . import formats

logger = logging.getLogger(__name__)


class InstanceStore:
    """Save and load one instance (host, target, roles, decomposition) under canonical names."""

    def __init__(self, directory: str = None):
        """Initialize the store.

        Args:
            directory: Directory holding the instance files (default: OUTPUT_DIR)
        """
        self.directory = directory or OUTPUT_DIR
        Path(self.directory).mkdir(parents=True, exist_ok=True)

    def path_of(self, kind: str) -> str:
        """Absolute path of the file for ``kind`` (a key of STORE_FILES)."""
        if kind not in STORE_FILES:
            raise KeyError(f"Unknown file kind '{kind}', expected one of {sorted(STORE_FILES)}")
        return os.path.join(self.directory, STORE_FILES[kind])

    def exists(self, kind: str) -> bool:
        return os.path.exists(self.path_of(kind))

    # ----- Text files -----

    def save_host(self, d: Digraph) -> str:
        return formats.write_text(self.path_of('host'), formats.format_digraph(d))

    def load_host(self) -> Digraph:
        path = self._existing('host')
        return formats.parse_digraph(formats.read_text(path), path)

    def save_target(self, target: Union[StarsPathsPattern, Digraph]) -> str:
        if isinstance(target, StarsPathsPattern):
            return formats.write_text(self.path_of('pattern'), formats.format_pattern(target))
        return formats.write_text(self.path_of('target'), formats.format_digraph(target))

    def load_target(self) -> Union[StarsPathsPattern, Digraph]:
        """The pattern file wins when both target files are present."""
        if self.exists('pattern'):
            path = self.path_of('pattern')
            return formats.parse_pattern(formats.read_text(path), path)
        path = self._existing('target')
        return formats.parse_digraph(formats.read_text(path), path)

    def save_decomposition(self, dec: ArborealDecomposition) -> str:
        return formats.write_text(self.path_of('decomposition'), formats.format_decomposition(dec))

    def load_decomposition(self) -> Optional[ArborealDecomposition]:
        if not self.exists('decomposition'):
            return None
        path = self.path_of('decomposition')
        return formats.parse_decomposition(formats.read_text(path), path)

    def load_annotations(self) -> formats.Annotations:
        if not self.exists('roles'):
            return formats.Annotations()
        path = self.path_of('roles')
        return formats.parse_roles(formats.read_text(path), path)

    def save_output(self, out: ReductionOutput) -> List[str]:
        """Write host, target (when the construction has one) and the roles sidecar.

        Returns:
            Paths of the written files, in writing order
        """
        written = [self.save_host(out.host)]
        if out.target is not None:
            written.append(self.save_target(out.target))
        written.append(formats.write_text(self.path_of('roles'),
                                          formats.format_roles(out.roles, out.params, out.terminals)))
        logger.debug("Wrote %d files to %s", len(written), self.directory)
        return written

    def load_output(self) -> ReductionOutput:
        notes = self.load_annotations()
        target = self.load_target() if (self.exists('pattern') or self.exists('target')) else None
        return ReductionOutput(host=self.load_host(), target=target, roles=notes.roles,
                               params=notes.params, terminals=notes.terminals)

    # ----- Result snapshots -----

    def save_result(self, result: Any, name: str) -> str:
        """Snapshot any result object (embedding, report, DataFrame) with joblib.

        Args:
            result: Object to save
            name: Snapshot name (e.g., 'embedding', 'benchmark')

        Returns:
            Path to the snapshot
        """
        filepath = os.path.join(self.directory, f"{name}.pkl")
        joblib.dump(result, filepath, compress=3)
        return filepath

    def load_result(self, name: str) -> Any:
        filepath = os.path.join(self.directory, f"{name}.pkl")
        if not os.path.exists(filepath):
            raise FileNotFoundError(f"Result not found: {filepath}")
        return joblib.load(filepath)

    def list_results(self) -> List[str]:
        return sorted(f[:-4] for f in os.listdir(self.directory) if f.endswith('.pkl'))

    def summary(self) -> Dict[str, bool]:
        return {kind: self.exists(kind) for kind in STORE_FILES}

    def _existing(self, kind: str) -> str:
        path = self.path_of(kind)
        if not os.path.exists(path):
            raise FileNotFoundError(f"Instance file not found: {path}")
        return path
