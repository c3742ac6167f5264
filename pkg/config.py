import os
from pathlib import Path
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError

from services.errors import ConfigError

# -------------------------------
# Load environment variables
# -------------------------------
BASE_DIR = Path(__file__).resolve().parent
DATA_DIR = BASE_DIR / "data"
LEXICON_DIR = DATA_DIR / "lexicons"

load_dotenv()
load_dotenv(BASE_DIR / ".env")

ENV_PREFIX = "VIRALITY_"

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class Settings(BaseModel):
    lexicon_path: Path = LEXICON_DIR / "sample_classes.lex"
    profile_lexicon_path: Path = LEXICON_DIR / "virality_profile.lex"
    seed: int = 13
    report_format: Literal["md", "json", "csv"] = "md"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    fog_exclude_inflected: bool = True


# env var suffix -> Settings field
_ENV_FIELDS = {
    "LEXICON": "lexicon_path",
    "PROFILE_LEXICON": "profile_lexicon_path",
    "SEED": "seed",
    "FORMAT": "report_format",
    "LOG_LEVEL": "log_level",
    "FOG_EXCLUDE_INFLECTED": "fog_exclude_inflected",
}


def _parse_bool(name: str, raw: str) -> bool:
    value = raw.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ConfigError(f"{name} must be a boolean, got '{raw}'")


def load_settings(environ=None) -> Settings:
    """Build settings from ``VIRALITY_*`` variables; unset variables keep defaults."""
    environ = os.environ if environ is None else environ
    values = {}
    for suffix, field in _ENV_FIELDS.items():
        name = ENV_PREFIX + suffix
        raw = environ.get(name)
        if raw is None or raw == "":
            continue
        if field == "fog_exclude_inflected":
            values[field] = _parse_bool(name, raw)
        elif field == "log_level":
            values[field] = raw.strip().upper()
        else:
            values[field] = raw.strip()
    try:
        return Settings(**values)
    except ValidationError as exc:
        bad = ", ".join(ENV_PREFIX + _env_name(err["loc"][0]) for err in exc.errors())
        raise ConfigError(f"invalid configuration in {bad}") from exc


def _env_name(field: str) -> str:
    for suffix, name in _ENV_FIELDS.items():
        if name == field:
            return suffix
    return field.upper()
