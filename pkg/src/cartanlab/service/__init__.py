"""FastAPI service exposing the verification suites."""

from .app import app
from .models import CheckRecord, Report, ScenarioConfig, SuiteParams

__all__ = ["app", "CheckRecord", "Report", "ScenarioConfig", "SuiteParams"]
