"""Acceptance checks run by `ctqw verify`."""

import logging
import time
from typing import Callable

from ..config import Settings
from ..errors import CtqwError
from ..models import CriterionResult

logger = logging.getLogger(__name__)

Criterion = Callable[[Settings], CriterionResult]

# Registry of criteria, in report order
CRITERIA: dict[str, Criterion] = {}


def register_criterion(name: str):
    """Decorator to register a criterion function."""

    def decorator(func: Criterion) -> Criterion:
        CRITERIA[name] = func
        return func

    return decorator


def get_criterion(name: str) -> Criterion | None:
    """Get a criterion by name."""
    return CRITERIA.get(name)


def get_available_criteria() -> list[str]:
    """Get list of criterion names."""
    return list(CRITERIA.keys())


def run_all(settings: Settings) -> list[CriterionResult]:
    """Run every registered criterion; a criterion that raises counts as failed."""
    results = []
    for name, criterion in CRITERIA.items():
        started = time.perf_counter()
        try:
            result = criterion(settings)
        except CtqwError as e:
            logger.exception("Criterion %s raised", name)
            result = CriterionResult(
                criterion=name, passed=False, measured=float("nan"), tolerance=0.0, detail=str(e)
            )
        logger.debug("%s: %s in %.3fs", name, "pass" if result.passed else "FAIL", time.perf_counter() - started)
        results.append(result)
    return results


from . import criteria  # noqa: E402,F401  registers the criteria
