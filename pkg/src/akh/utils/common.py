import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, List, Literal, TypeVar

logger = logging.getLogger(__name__)

# Errors
InvariantViolationError = type("InvariantViolationError", (RuntimeError,), {})

T = TypeVar("T")
R = TypeVar("R")

COEFFS = ("rational", "integral")
SUPERGRADINGS = ("default", "kshift")


@dataclass(frozen=True)
class ComputeConfig:
    """Options shared by every computation.

    Args:
        coeff: "rational" computes dimensions over QQ, "integral" additionally
            reports torsion coefficients from Smith normal forms.
        supergrading: "default" reduces (j - |L|) / 2 modulo 2, "kshift" reduces
            (k - m) / 2 modulo 2.
        parallel: number of worker threads for per-vertex and per-block work.
        free_sign: value given to the free variables of the edge-sign solve.
    """

    coeff: Literal["rational", "integral"] = "rational"
    supergrading: Literal["default", "kshift"] = "default"
    parallel: int = 1
    free_sign: Literal[1, -1] = 1

    def __post_init__(self):
        if self.coeff not in COEFFS:
            raise ValueError(f"Unknown coefficient mode {self.coeff}")
        if self.supergrading not in SUPERGRADINGS:
            raise ValueError(f"Unknown supergrading {self.supergrading}")
        if self.parallel < 1:
            raise ValueError(f"parallel must be positive, got {self.parallel}")
        if self.free_sign not in (1, -1):
            raise ValueError(f"free_sign must be +1 or -1, got {self.free_sign}")


@dataclass
class CheckReport:
    """Outcome of a verification. Checks never raise on failure, they report."""

    name: str
    passed: bool
    message: str = ""
    details: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def ok(cls, name: str, **details) -> "CheckReport":
        return cls(name=name, passed=True, details=details)

    @classmethod
    def fail(cls, name: str, message: str, **details) -> "CheckReport":
        logger.debug("check %s failed: %s", name, message)
        return cls(name=name, passed=False, message=message, details=details)

    def raise_if_failed(self) -> "CheckReport":
        if not self.passed:
            raise InvariantViolationError(f"{self.name}: {self.message}")
        return self

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "message": self.message}


def merge_reports(name: str, reports: Iterable[CheckReport]) -> CheckReport:
    """Collapses several reports into one, keeping the first failure."""
    count = 0
    for report in reports:
        count += 1
        if not report.passed:
            return CheckReport.fail(
                name, f"{report.name}: {report.message}", **report.details
            )
    return CheckReport.ok(name, n_checks=count)


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], n_workers: int = 1
) -> List[R]:
    """Maps `fn` over `items`, preserving the input order of the results."""
    items = list(items)
    if n_workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(fn, items))
