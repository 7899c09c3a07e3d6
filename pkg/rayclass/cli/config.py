"""Run configuration: defaults, then RAYCLASS_* environment, then a key=value file, then flags."""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import dotenv_values, find_dotenv, load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from rayclass.fields.multiquad import parse_field_spec
from rayclass.types import InputError, OutputFormat, RayClassError

logger = logging.getLogger(__name__)

ENV_PREFIX = "RAYCLASS_"


class RunConfig(BaseModel):
    command: str
    field: Optional[str] = None
    prime: Optional[int] = Field(default=None, ge=2)
    num_primes: Optional[int] = Field(default=None, ge=1)
    cutoff: int = Field(default=100_000, ge=3)
    bound: int = Field(default=2_000, ge=2)
    m: int = Field(default=1, ge=1)
    out: str = "-"
    format: OutputFormat = OutputFormat.TEXT
    workers: int = Field(default=1, ge=1)
    seed: int = 0
    precision: int = Field(default=128, ge=53)
    log_level: str = "WARNING"

    @field_validator("field")
    @classmethod
    def normalize_field(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return None
        try:
            return parse_field_spec(value).spec
        except RayClassError as e:
            raise ValueError(e.message) from e

    @field_validator("log_level")
    @classmethod
    def check_level(cls, value: str) -> str:
        level = value.upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"unknown log level {value!r}")
        return level

    def require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise InputError(f"{self.command} needs --{missing[0].replace('_', '-')}")


def _from_environment() -> Dict[str, Any]:
    load_dotenv(find_dotenv(usecwd=True))
    values = {}
    for name in RunConfig.model_fields:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = raw
    return values


def _from_file(path: str) -> Dict[str, Any]:
    if not Path(path).is_file():
        raise InputError(f"config file {path} does not exist")
    values = {}
    for key, raw in dotenv_values(path).items():
        name = key.lower().replace("-", "_")
        if name.startswith(ENV_PREFIX.lower()):
            name = name[len(ENV_PREFIX) :]
        if name not in RunConfig.model_fields or name == "command":
            raise InputError(f"unknown key {key!r} in config file {path}")
        if raw is not None:
            values[name] = raw
    return values


def load_run_config(command: str, flags: Dict[str, Any], config_path: Optional[str] = None) -> RunConfig:
    values: Dict[str, Any] = _from_environment()
    if config_path:
        values.update(_from_file(config_path))
    values.update({k: v for k, v in flags.items() if v is not None})
    values["command"] = command
    try:
        config = RunConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise InputError(
            f"invalid {location}: {first['msg']}",
            data={"errors": e.errors(include_url=False, include_context=False)},
        ) from e
    logger.debug(f"run config: {config.model_dump()}")
    return config
