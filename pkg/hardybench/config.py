"""
Run configuration for the command line.

A RunConfig comes from a JSON file (``--config``) with command-line flags
layered on top. The job count falls back to ``HARDYBENCH_JOBS`` when no
``--jobs`` flag or config entry sets it.
"""

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from .analysis.report import ExponentParams, Inequality
from .core.group import parse_group, parse_norm
from .core.profiles import parse_profile
from .core.quadrature import QuadratureSpec
from .data.corpus import get_case
from .data.search_spaces import get_search_space
from .utils.exceptions import ConfigError, HardyBenchError
from .utils.formatters import FORMATS

COMMANDS = ("verify", "sweep", "sharpness", "constants", "selftest")
JOBS_ENV = "HARDYBENCH_JOBS"

# Fields holding comma-separated value lists on the command line.
LIST_FIELDS = ("p", "q", "L", "k", "R", "T", "Q", "r_grid", "t_grid")
EXPONENT_FIELDS = ("p", "q", "L", "k", "R", "T")


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one ``hardybench`` invocation needs.

    Exponent fields hold value lists: ``verify`` uses the first entry,
    ``sweep`` and ``constants`` the cross product.

    Attributes:
        command: Subcommand
        inequality: Inequality id
        group: Compact group description
        norm: Compact norm description (None for the group default)
        profile: Profile spec; ``sweep`` falls back to the shipped corpus
        case: Corpus case id used instead of group/norm/profile/exponents
        space: Search space name for ``sharpness``
        p, q, L, k, R, T, Q: Exponent value lists
        r_grid: Explicit R-grid for R-suprema
        t_grid: Explicit T-grid for the critical distance
        quad_tol: Relative quadrature tolerance
        jobs: Worker threads (None: environment, then 1)
        seed: Seed for sampling and probe seeding
        budget: Probe evaluation budget
        restarts: Probe restarts
        variant: Elementary inequality variant
        samples: Elementary inequality sample count
        out: Output directory
        format: ``json``, ``csv`` or ``both``
        verbose: Debug logging
    """

    command: str = "verify"
    inequality: str = "lp-hardy"
    group: str = "euclidean:3"
    norm: Optional[str] = None
    profile: Optional[str] = None
    case: Optional[str] = None
    space: Optional[str] = None
    p: Tuple[float, ...] = ()
    q: Tuple[float, ...] = ()
    L: Tuple[float, ...] = ()
    k: Tuple[int, ...] = ()
    R: Tuple[float, ...] = ()
    T: Tuple[float, ...] = ()
    Q: Tuple[float, ...] = ()
    r_grid: Optional[Tuple[float, ...]] = None
    t_grid: Optional[Tuple[float, ...]] = None
    quad_tol: float = 1e-10
    jobs: Optional[int] = None
    seed: int = 0
    budget: int = 200
    restarts: int = 8
    variant: str = "i"
    samples: int = 100_000
    out: str = "hardybench-out"
    format: str = "json"
    verbose: bool = False

    def __post_init__(self):
        for name in LIST_FIELDS:
            value = getattr(self, name)
            if value is not None and not isinstance(value, tuple):
                object.__setattr__(self, name, _as_tuple(value, name))
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}'. Must be one of {list(COMMANDS)}")
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown format '{self.format}'. Must be one of {list(FORMATS)}")

    # Conversions

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        for name in LIST_FIELDS:
            if data[name] is not None:
                data[name] = list(data[name])
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunConfig":
        """
        Build from a mapping.

        Raises:
            ConfigError: For unknown keys or ill-typed values
        """
        if not isinstance(data, Mapping):
            raise ConfigError("Configuration must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {unknown}")
        try:
            return cls(**dict(data))
        except TypeError as exc:
            raise ConfigError(f"Invalid configuration: {exc}")

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"Malformed JSON configuration: {exc}")
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "RunConfig":
        """
        Read a JSON configuration file.

        Raises:
            ConfigError: If the file cannot be read or parsed
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"Cannot read configuration {path}: {exc}")
        try:
            return cls.from_json(text)
        except ConfigError as exc:
            raise ConfigError(f"{path}: {exc}")

    def merged(self, overrides: Mapping[str, Any]) -> "RunConfig":
        """Config with every non-None override applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        try:
            return replace(self, **changes)
        except TypeError as exc:
            raise ConfigError(f"Invalid override: {exc}")

    # Resolved views

    def resolved_jobs(self, environ: Optional[Mapping[str, str]] = None) -> int:
        """
        Worker count: the config value, else ``HARDYBENCH_JOBS``, else 1.

        Raises:
            ConfigError: If the value is not a positive integer
        """
        environ = os.environ if environ is None else environ
        value: Any = self.jobs
        source = "jobs"
        if value is None and environ.get(JOBS_ENV):
            value, source = environ[JOBS_ENV], JOBS_ENV
        if value is None:
            return 1
        try:
            jobs = int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{source} must be a positive integer, got {value!r}")
        if jobs < 1:
            raise ConfigError(f"{source} must be a positive integer, got {value!r}")
        return jobs

    def quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(rel_tol=self.quad_tol)

    def exponent_params(self) -> ExponentParams:
        """First entry of every set exponent list; unset ones keep their defaults."""
        values = {name: getattr(self, name)[0] for name in EXPONENT_FIELDS if getattr(self, name)}
        try:
            return ExponentParams(**values)
        except TypeError as exc:
            raise ConfigError(f"Invalid exponents: {exc}")

    def exponent_axes(self) -> Dict[str, Tuple[float, ...]]:
        """Exponent lists that were set, for cross products."""
        return {name: getattr(self, name) for name in EXPONENT_FIELDS if getattr(self, name)}

    def validate(self) -> "RunConfig":
        """
        Check every referenced id against the catalogs and the output directory.

        Raises:
            ConfigError: On the first problem found
        """
        try:
            Inequality.parse(self.inequality)
            group = parse_group(self.group)
            parse_norm(self.norm, group)
            if self.profile is not None:
                parse_profile(self.profile)
            if self.case is not None:
                get_case(self.case)
            if self.space is not None:
                get_search_space(self.space)
            self.quadrature()
            self.resolved_jobs()
        except ConfigError:
            raise
        except HardyBenchError as exc:
            raise ConfigError(str(exc))
        _check_writable(Path(self.out))
        return self


def _as_tuple(value: Any, name: str) -> Tuple[float, ...]:
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    elif not isinstance(value, (list, tuple)):
        value = [value]
    try:
        items = tuple(float(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a number or a comma-separated list, got {value!r}")
    if name == "k":
        if any(v != int(v) for v in items):
            raise ConfigError(f"k must be integers, got {value!r}")
        items = tuple(int(v) for v in items)
    return items


def _check_writable(path: Path) -> None:
    existing = path
    while not existing.exists():
        if existing.parent == existing:
            break
        existing = existing.parent
    if not existing.is_dir() or not os.access(existing, os.W_OK):
        raise ConfigError(f"Output directory {path} is not writable")
