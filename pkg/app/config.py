"""
Toolkit settings.

Every value can come from the environment or a local .env file; the CLI flags
override them per invocation. Paths default to the data shipped inside the
package so a fresh checkout runs the verification suite with no setup.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

_DATA_DIR = Path(__file__).resolve().parent / "data"

OUTPUT_MODES = ("text", "structured")
MIN_PROPERTY_CASES = 200


def _norm_path(v: Any, default: Path) -> str:
    s = ("" if v is None else str(v)).strip()
    return s or str(default)


class Settings(BaseSettings):
    """
    Central toolkit settings.

    Notes:
    - Env names keep the TORELLI_ prefix; matching is case-insensitive.
    - Values are normalized by validators so the rest of the code never has to
      re-check casing, blanks or ranges.
    - redacted_dict() is the diagnostics snapshot (nothing here is secret, the
      name is kept for parity with the operator tooling).
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        case_sensitive=False,
    )

    log_level: str = Field(default="INFO", alias="TORELLI_LOG_LEVEL")

    fixtures_dir: str = Field(default=str(_DATA_DIR / "fixtures"), alias="TORELLI_FIXTURES_DIR")
    golden_dir: str = Field(default=str(_DATA_DIR / "golden"), alias="TORELLI_GOLDEN_DIR")

    # seconds allowed per span computation
    time_budget: float = Field(default=600.0, alias="TORELLI_TIME_BUDGET")

    output: str = Field(default="text", alias="TORELLI_OUTPUT")

    property_cases: int = Field(default=MIN_PROPERTY_CASES, alias="TORELLI_PROPERTY_CASES")
    seed: int = Field(default=20260101, alias="TORELLI_SEED")

    verify_workers: int = Field(default=1, alias="TORELLI_VERIFY_WORKERS")

    # -------------------------
    # Validators / normalizers
    # -------------------------

    @field_validator("log_level", mode="before")
    @classmethod
    def _norm_log_level(cls, v: Any) -> str:
        s = ("" if v is None else str(v)).strip().upper()
        return s or "INFO"

    @field_validator("fixtures_dir", mode="before")
    @classmethod
    def _norm_fixtures_dir(cls, v: Any) -> str:
        return _norm_path(v, _DATA_DIR / "fixtures")

    @field_validator("golden_dir", mode="before")
    @classmethod
    def _norm_golden_dir(cls, v: Any) -> str:
        return _norm_path(v, _DATA_DIR / "golden")

    @field_validator("output", mode="before")
    @classmethod
    def _norm_output(cls, v: Any) -> str:
        s = ("" if v is None else str(v)).strip().lower()
        return s or "text"

    @field_validator("verify_workers", mode="before")
    @classmethod
    def _norm_verify_workers(cls, v: Any) -> int:
        s = ("" if v is None else str(v)).strip()
        return max(1, int(s)) if s else 1

    # -------------------------
    # Derived helpers
    # -------------------------

    @property
    def fixtures_path(self) -> Path:
        return Path(self.fixtures_dir)

    @property
    def golden_path(self) -> Path:
        return Path(self.golden_dir)

    @property
    def structured(self) -> bool:
        return self.output == "structured"

    # -------------------------
    # Operator helpers
    # -------------------------

    def redacted_dict(self) -> Dict[str, Any]:
        """Safe snapshot for logs/diagnostics."""
        return {
            "log_level": self.log_level,
            "fixtures_dir": self.fixtures_dir,
            "golden_dir": self.golden_dir,
            "time_budget": self.time_budget,
            "output": self.output,
            "property_cases": self.property_cases,
            "seed": self.seed,
            "verify_workers": self.verify_workers,
        }

    def validate_runtime(self) -> None:
        """
        Fail fast on settings nothing downstream can work with.

        Data folders must exist, the span budget must be positive and the
        output mode must be one the CLI knows.
        """
        if self.output not in OUTPUT_MODES:
            raise RuntimeError(f"TORELLI_OUTPUT must be one of {', '.join(OUTPUT_MODES)} (got {self.output!r})")
        if self.time_budget <= 0:
            raise RuntimeError(f"TORELLI_TIME_BUDGET must be positive (got {self.time_budget})")
        if self.property_cases < 1:
            raise RuntimeError(f"TORELLI_PROPERTY_CASES must be >= 1 (got {self.property_cases})")
        if not self.fixtures_path.is_dir():
            raise RuntimeError(f"fixtures folder not found: {self.fixtures_dir} (TORELLI_FIXTURES_DIR)")
        if not self.golden_path.is_dir():
            raise RuntimeError(f"golden folder not found: {self.golden_dir} (TORELLI_GOLDEN_DIR)")


settings = Settings()
