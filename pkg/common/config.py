"""
Run configuration for the CLI verbs and the library defaults behind them.

Values are layered: ``settings.BRANCHED`` first, then an optional flat
``KEY=value`` file read with python-dotenv, then explicit overrides (command
flags). The truncation bound is additionally scoped per run through a
context variable so library calls made by a command see the command's bound.
"""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

from django.conf import settings
from dotenv import dotenv_values

from .constants import (
    DEFAULT_BOUND,
    DEFAULT_TEST_FUNCTION,
    MAX_BOUND,
    OUTPUT_FORMATS,
    REGULARITY_STATISTICS,
    UNDECORATED,
)
from .exceptions import BoundExceededError, ConfigurationError

logger = logging.getLogger(__name__)

_FORMATS = {code for code, _ in OUTPUT_FORMATS}

_active_bound: ContextVar[int | None] = ContextVar("active_bound", default=None)


def parse_alphabet(raw: str | tuple[str, ...] | list[str]) -> tuple[str, ...]:
    """Parse a comma separated alphabet; the empty string means undecorated."""
    if isinstance(raw, tuple | list):
        symbols = [str(s).strip() for s in raw]
    else:
        symbols = [s.strip() for s in str(raw).split(",")]
    symbols = [s for s in symbols if s]
    if not symbols:
        return (UNDECORATED,)
    for symbol in symbols:
        if any(ch in symbol for ch in "[]() |") or symbol == "1":
            raise ConfigurationError(f"Invalid label symbol {symbol!r}")
    return tuple(sorted(set(symbols)))


@dataclass(frozen=True)
class RunConfig:
    bound: int = DEFAULT_BOUND
    alphabet: tuple[str, ...] = (UNDECORATED,)
    tol: float = 1e-9
    mc_trials: int = 100
    output_format: str = "text"
    seed: int = 7
    workers: int = 4
    statistic: str = "rms"
    test_function: str = DEFAULT_TEST_FUNCTION

    @classmethod
    def from_settings(cls) -> "RunConfig":
        raw = getattr(settings, "BRANCHED", {})
        return cls._from_mapping(raw, cls())

    @classmethod
    def load(
        cls, config_file: str | Path | None = None, **overrides: Any
    ) -> "RunConfig":
        """
        Build the configuration for one run.

        Args:
            config_file: Optional flat ``KEY=value`` file
            **overrides: Flag values; ``None`` means "not given"

        Returns:
            A validated RunConfig
        """
        config = cls.from_settings()
        if config_file:
            path = Path(config_file)
            if not path.exists():
                raise ConfigurationError(f"Config file not found: {path}")
            values = {k.upper(): v for k, v in dotenv_values(path).items()}
            logger.debug(f"Loaded {len(values)} config keys from {path}")
            config = cls._from_mapping(values, config)
        given = {k: v for k, v in overrides.items() if v is not None}
        if "alphabet" in given:
            given["alphabet"] = parse_alphabet(given["alphabet"])
        config = replace(config, **given)
        config.validate()
        return config

    @classmethod
    def _from_mapping(cls, raw: dict, base: "RunConfig") -> "RunConfig":
        try:
            updates: dict[str, Any] = {}
            if raw.get("BOUND") not in (None, ""):
                updates["bound"] = int(raw["BOUND"])
            if raw.get("ALPHABET") is not None:
                updates["alphabet"] = parse_alphabet(raw["ALPHABET"])
            if raw.get("TOL") not in (None, ""):
                updates["tol"] = float(raw["TOL"])
            if raw.get("MC_TRIALS") not in (None, ""):
                updates["mc_trials"] = int(raw["MC_TRIALS"])
            if raw.get("FORMAT"):
                updates["output_format"] = str(raw["FORMAT"]).lower()
            if raw.get("SEED") not in (None, ""):
                updates["seed"] = int(raw["SEED"])
            if raw.get("WORKERS") not in (None, ""):
                updates["workers"] = int(raw["WORKERS"])
            if raw.get("STATISTIC"):
                updates["statistic"] = str(raw["STATISTIC"]).lower()
            if raw.get("TEST_FUNCTION"):
                updates["test_function"] = str(raw["TEST_FUNCTION"])
        except ValueError as exc:
            raise ConfigurationError(f"Invalid configuration value: {exc}")
        return replace(base, **updates)

    def validate(self) -> None:
        if not 1 <= self.bound <= MAX_BOUND:
            raise ConfigurationError(
                f"Bound must be between 1 and {MAX_BOUND}, got {self.bound}"
            )
        if self.tol <= 0:
            raise ConfigurationError(f"Tolerance must be positive, got {self.tol}")
        if self.mc_trials <= 0:
            raise ConfigurationError("Monte Carlo trial count must be positive")
        if self.workers <= 0:
            raise ConfigurationError("Worker count must be positive")
        if self.statistic not in REGULARITY_STATISTICS:
            raise ConfigurationError(
                f"Unknown regularity statistic {self.statistic!r}; "
                f"expected one of {list(REGULARITY_STATISTICS)}"
            )
        if self.output_format not in _FORMATS:
            raise ConfigurationError(
                f"Unknown output format {self.output_format!r}; "
                f"expected one of {sorted(_FORMATS)}"
            )


def current_bound() -> int:
    """The truncation bound of the active run, or the configured default."""
    bound = _active_bound.get()
    if bound is not None:
        return bound
    return int(getattr(settings, "BRANCHED", {}).get("BOUND", DEFAULT_BOUND))


@contextmanager
def bound_scope(bound: int) -> Iterator[int]:
    """Temporarily set the truncation bound for library calls."""
    if not 1 <= bound <= MAX_BOUND:
        raise ConfigurationError(f"Bound must be between 1 and {MAX_BOUND}")
    token = _active_bound.set(bound)
    try:
        yield bound
    finally:
        _active_bound.reset(token)


def check_weight(weight: int, bound: int | None = None) -> None:
    """Raise BoundExceededError if ``weight`` is above the truncation bound."""
    limit = current_bound() if bound is None else bound
    if weight > limit:
        raise BoundExceededError(weight, limit)
