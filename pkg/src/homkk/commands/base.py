"""Base command module containing the shared machinery of every CLI verb.

This module provides the BaseCommand class which all verb families build on. It
loads and validates JSON input documents, times each computation against the
performance threshold of the active profile and assembles the report document.
"""

import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, ClassVar, TypeVar

from pydantic import BaseModel, TypeAdapter, ValidationError

from homkk.constants.json_profile_config import PerformanceFields, TopKey
from homkk.errors import InputValidationError
from homkk.serialization import SCHEMA_VERSION

performance_base_logger = logging.getLogger(f"{__name__}.performance")
performance_logger = logging.LoggerAdapter(
    performance_base_logger,
    {"role": "PERFORMANCE"},
)

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "COMMAND"})

ModelT = TypeVar("ModelT", bound=BaseModel)


@dataclass(frozen=True)
class RunOptions:
    """Per-run options shared by all verbs.

    Attributes
    ----------
    seed : int
        Seed for generated inputs
    max_n : int or None
        Override of ``HOMKK_MAX_N`` for this run
    generate : int or None
        Number of generated modules to run on instead of input files

    """

    seed: int = 0
    max_n: int | None = None
    generate: int | None = None


class BaseCommand:
    """Base class providing input loading, timing and report assembly.

    Subclasses set ``verb`` and the accepted number of inputs and implement
    :meth:`execute`, which returns the ``result`` section of the report.

    Attributes
    ----------
    profile : dict
        Parsed JSON profile of the run
    performance : float
        Duration in seconds above which a run is logged as slow
    options : RunOptions
        Options of the current run

    """

    verb: ClassVar[str]
    min_inputs: ClassVar[int] = 1
    max_inputs: ClassVar[int] = 1
    supports_generate: ClassVar[bool] = False

    def __init__(self, json_profile_config: dict[str, Any], options: RunOptions | None = None) -> None:
        """Initialize the command with the active profile.

        Parameters
        ----------
        json_profile_config : dict
            Parsed JSON profile containing the performance threshold
        options : RunOptions, optional
            Seed, n-bound and generation count of the run

        """
        self.profile = json_profile_config
        self.performance = json_profile_config[TopKey.PERFORMANCE.value][PerformanceFields.PERFORMANCE_THRESHOLD.value]
        self.options = options or RunOptions()
        self.echo: list[dict[str, Any]] = []

    def _log_performance(self, action: str, duration: float) -> None:
        """Log performance metrics for actions with threshold checking.

        Parameters
        ----------
        action : str
            Description of the action performed
        duration : float
            Time taken to complete the action in seconds

        """
        if duration > self.performance:
            performance_logger.warning(
                "Action '%s' took %.2f seconds which exceeds the threshold of %s seconds.",
                action,
                duration,
                self.performance,
            )
        else:
            performance_logger.info("Action '%s' took %.2f seconds.", action, duration)

    @staticmethod
    def read_json(path: Path) -> Any:
        """Parse one input file.

        Raises
        ------
        InputValidationError
            If the file cannot be read or is not JSON; the message names line and column

        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as err:
            logger.warning("Cannot read input %s.", path, exc_info=True)
            msg = f"{path}: cannot read input: {err.strerror}"
            raise InputValidationError(msg) from err
        try:
            return json.loads(text)
        except json.JSONDecodeError as err:
            logger.warning("Input %s is not valid JSON.", path, exc_info=True)
            msg = f"{path}: invalid JSON at line {err.lineno} column {err.colno}: {err.msg}"
            raise InputValidationError(msg) from err

    @staticmethod
    def validate_document(path: Path, raw: Any, model: type[ModelT] | TypeAdapter) -> Any:
        """Validate parsed JSON against a pydantic model, naming the failing field."""
        try:
            if isinstance(model, TypeAdapter):
                return model.validate_python(raw)
            return model.model_validate(raw)
        except ValidationError as err:
            logger.warning("Input %s failed schema validation.", path, exc_info=True)
            first = err.errors()[0]
            location = ".".join(str(part) for part in first["loc"]) or "<root>"
            msg = f"{path}: {location}: {first['msg']} ({err.error_count()} error(s))"
            raise InputValidationError(msg) from err

    def load(self, path: Path, model: type[ModelT] | TypeAdapter) -> Any:
        raw = self.read_json(path)
        document = self.validate_document(path, raw, model)
        self.echo.append({"path": Path(path).name, "document": raw})
        return document

    def check_input_count(self, paths: list[Path]) -> None:
        if self.options.generate is not None and self.supports_generate:
            if paths:
                msg = f"{self.verb} takes either --generate or input files, not both"
                raise InputValidationError(msg)
            return
        if self.options.generate is not None:
            msg = f"{self.verb} does not support --generate"
            raise InputValidationError(msg)
        if not self.min_inputs <= len(paths) <= self.max_inputs:
            expected = str(self.min_inputs) if self.min_inputs == self.max_inputs else f"{self.min_inputs} to {self.max_inputs}"
            msg = f"{self.verb} takes {expected} input file(s), got {len(paths)}"
            raise InputValidationError(msg)

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        raise NotImplementedError

    def run(self, paths: list[Path]) -> dict[str, Any]:
        """Validate the input count, execute and wrap the result in a report.

        Returns
        -------
        dict
            Report with ``schema_version``, ``verb``, ``inputs`` and ``result``

        """
        self.check_input_count(paths)
        self.echo = []
        logger.debug("Running %s on %s.", self.verb, [str(p) for p in paths])
        start_time = time.time()
        result = self.execute(paths)
        duration = time.time() - start_time
        self._log_performance(self.verb, duration)
        return {
            "schema_version": SCHEMA_VERSION,
            "verb": self.verb,
            "status": "computed",
            "inputs": self.echo,
            "options": {"seed": self.options.seed, "generate": self.options.generate},
            "result": result,
        }

    def summarize(self, result: dict[str, Any]) -> list[str]:
        """Human-readable lines for ``--format text``; one line per top-level result key."""
        return [f"{key}: {json.dumps(value, sort_keys=True)}" for key, value in sorted(result.items())]
