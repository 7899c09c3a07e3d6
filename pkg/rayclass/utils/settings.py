"""Resource budgets and precision defaults, overridable through RAYCLASS_* variables."""

import logging
import os
from functools import lru_cache

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, Field, ValidationError

from rayclass.types import InputError

logger = logging.getLogger(__name__)

ENV_PREFIX = "RAYCLASS_"


class Settings(BaseModel):
    # sieve entries (the smallest-prime-factor table holds one int32 each)
    sieve_budget: int = Field(default=30_000_000, gt=0)
    # largest discriminant for the reduced-form class number count
    class_number_bound: int = Field(default=1_000_000, gt=0)
    # element count for the brute-force closure of the image group
    enumeration_budget: int = Field(default=100_000_000, gt=0)
    # largest prime for which a full discrete log table is built
    oracle_prime_bound: int = Field(default=5_000_000, gt=0)
    square_precision_start: int = Field(default=128, ge=53)
    square_precision_cap: int = Field(default=4096, ge=53)
    log_embedding_precision: int = Field(default=200, ge=53)
    # bit length allowed for continued fraction convergents
    unit_bit_budget: int = Field(default=1 << 20, gt=0)

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv(find_dotenv(usecwd=True))
        values = {}
        for name in cls.model_fields:
            raw = os.getenv(ENV_PREFIX + name.upper())
            if raw is not None:
                values[name] = raw
        try:
            return cls(**values)
        except ValidationError as e:
            raise InputError(f"invalid {ENV_PREFIX}* setting: {e}") from e


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = Settings.from_env()
    logger.debug(f"settings: {settings.model_dump()}")
    return settings
