from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from mpmath import mpf, nstr
from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator
from typing_extensions import Self


class NormStatus(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class VerdictReason(str, Enum):
    RAMIFIED = "ramified"
    NON_SPLIT = "non_split"
    NO_NORM_MINUS_ONE = "no_norm_minus_one"
    EVEN_PRIME = "even_prime"
    P_1_MOD_4 = "p_1_mod_4"
    RANK_DEFICIENT = "rank_deficient"
    PASSED = "passed"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    TEXT = "text"


class NormDecision(BaseModel):
    status: NormStatus
    rule: str


class RankCheck(BaseModel):
    l: int
    rank: int
    required: int
    passed: bool

    @model_validator(mode="after")
    def check_rank(self) -> Self:
        if self.rank > self.required:
            raise ValueError(
                f"rank {self.rank} over F_{self.l} exceeds {self.required}; rows cannot sum to zero"
            )
        if self.passed != (self.rank == self.required):
            raise ValueError("passed flag disagrees with rank")
        return self


class PhiRankReport(BaseModel):
    p: int
    split: bool
    p_mod_4: int
    passed_2: bool
    odd_l: List[int] = Field(default_factory=list)
    per_l: Dict[int, RankCheck] = Field(default_factory=dict)
    verdict: bool
    reason: VerdictReason

    @model_validator(mode="after")
    def check_verdict(self) -> Self:
        if self.verdict != (self.reason == VerdictReason.PASSED):
            raise ValueError("verdict disagrees with reason")
        if self.verdict and not (
            self.passed_2
            and set(self.per_l) == set(self.odd_l)
            and all(c.passed for c in self.per_l.values())
        ):
            raise ValueError("a passing verdict needs p = 3 mod 4 and full rank at every odd l")
        return self

    @property
    def ranks(self) -> List[int]:
        return [self.per_l[l].rank for l in self.odd_l if l in self.per_l]


class ScanRow(BaseModel):
    p: int
    split: bool
    p_mod4: int
    odd_ls: List[int]
    ranks: List[int]
    verdict: bool

    @classmethod
    def from_report(cls, report: PhiRankReport) -> "ScanRow":
        return cls(
            p=report.p,
            split=report.split,
            p_mod4=report.p_mod_4,
            odd_ls=report.odd_l,
            ranks=report.ranks,
            verdict=report.verdict,
        )

    def csv_fields(self) -> List[str]:
        return [
            str(self.p),
            "true" if self.split else "false",
            str(self.p_mod4),
            ";".join(str(l) for l in self.odd_ls),
            ";".join(str(r) for r in self.ranks),
            "true" if self.verdict else "false",
        ]


class EmpiricalCount(BaseModel):
    hits: int
    total_primes: int
    ratio: Fraction

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_ratio(self) -> Self:
        if self.total_primes <= 0 or not 0 <= self.hits <= self.total_primes:
            raise ValueError("hits must lie in [0, total_primes] with total_primes > 0")
        if self.ratio != Fraction(self.hits, self.total_primes):
            raise ValueError("ratio must equal hits/total_primes exactly")
        return self

    @field_serializer("ratio")
    def serialize_ratio(self, ratio: Fraction, _info):
        return {"fraction": f"{ratio.numerator}/{ratio.denominator}", "decimal": float(ratio)}


class ScanReport(BaseModel):
    field: str
    seed: int
    rows: List[ScanRow]
    summary: EmpiricalCount


class DensityEstimate(BaseModel):
    field: str
    cutoff: int
    precision_bits: int
    p2: Fraction
    truncated_product: mpf
    tail_lower_factor: mpf
    interval_low: mpf
    interval_high: mpf
    empirical: Optional[EmpiricalCount] = None
    reference_values: Dict[str, str] = Field(default_factory=dict)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_interval(self) -> Self:
        if self.tail_lower_factor > 1 or self.tail_lower_factor < 0:
            raise ValueError("tail factor must lie in [0, 1]")
        if self.interval_low > self.interval_high:
            raise ValueError("interval endpoints out of order")
        return self

    @property
    def width(self) -> mpf:
        return self.interval_high - self.interval_low

    @field_serializer("truncated_product", "tail_lower_factor", "interval_low", "interval_high")
    def serialize_real(self, value: mpf, _info):
        return nstr(value, 25)

    @field_serializer("p2")
    def serialize_p2(self, value: Fraction, _info):
        return f"{value.numerator}/{value.denominator}"


class QuadraticUnitReport(BaseModel):
    d: int
    unit: str
    norm: int
    class_number: Optional[int] = None


class KurodaReport(BaseModel):
    class_number: int
    unit_index: int
    v: int
    subfield_class_numbers: Dict[int, int]
    candidate_based: bool


class FieldReport(BaseModel):
    field: str
    degree: int
    subfields: List[int]
    fundamental_units: List[QuadraticUnitReport]
    totally_real: bool
    norm_minus_one: NormDecision
    unit_generators: List[str] = Field(default_factory=list)
    unit_generator_norms: List[int] = Field(default_factory=list)
    unit_index: Optional[int] = None
    kuroda: Optional[KurodaReport] = None
    criterion_supported: bool
    criterion_note: str
    notes: List[str] = Field(default_factory=list)


class NecessaryConditions(BaseModel):
    totally_real: bool
    norm_minus_one: NormDecision
    criterion_possible: bool


class VerifyRow(BaseModel):
    p: int
    verdict: bool
    psi_order: int
    target_order: int
    agree: bool


class VerifyReport(BaseModel):
    field: str
    bound: int
    rows: List[VerifyRow]
    mismatches: int


class CandidateField(BaseModel):
    radicals: List[int]
    class_number: int
    norm_minus_one: NormStatus


class ErrorReport(BaseModel):
    code: int
    error: str
    message: str
    data: Any | None = None


## Error types


class RayClassError(Exception):
    exit_code: int = 1
    default_message: str = "Computation failed"

    def __init__(self, message: str | None = None, data: Any | None = None):
        self.message = message or self.default_message
        self.data = data
        super().__init__(self.message)

    def to_report(self) -> ErrorReport:
        return ErrorReport(
            code=self.exit_code,
            error=type(self).__name__,
            message=self.message,
            data=self.data,
        )


class InputError(RayClassError):
    exit_code = 1
    default_message = "Invalid input"


class DomainError(InputError):
    default_message = "Mathematical precondition failed"


class UnsupportedFieldError(RayClassError):
    exit_code = 2
    default_message = "This field is not supported by the requested computation"


class ResourceError(RayClassError):
    exit_code = 3
    default_message = "Configured resource budget exceeded"


class UndecidedError(RayClassError):
    exit_code = 4
    default_message = "The computation could not decide the question at the configured precision"


class InvariantViolation(RayClassError):
    exit_code = 5
    default_message = "A mathematical invariant failed"
