"""Review service: run persistence plus the /api/v1 HTTP surface."""

from .api import ApiError, create_app
from .store import (
    InvalidReviewError,
    ReviewRecord,
    RunStore,
    UnknownFindingError,
    UnknownRunError,
    normalize_status,
)

__all__ = [
    "ApiError",
    "InvalidReviewError",
    "ReviewRecord",
    "RunStore",
    "UnknownFindingError",
    "UnknownRunError",
    "create_app",
    "normalize_status",
]
