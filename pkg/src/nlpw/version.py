"""Version lookup for nlpw."""

import sys
from importlib import metadata
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

_FALLBACK_VERSION = "0.1.0"


def _pyproject_version() -> Optional[str]:
    """Version from the nearest enclosing pyproject.toml of this package, if any."""
    for directory in Path(__file__).resolve().parents:
        candidate = directory / "pyproject.toml"
        if not candidate.is_file():
            continue
        try:
            project = tomllib.loads(candidate.read_text(encoding="utf-8")).get("project", {})
        except (OSError, tomllib.TOMLDecodeError):
            return None
        if project.get("name") == "nlpw":
            return project.get("version")
    return None


def get_version() -> str:
    """Installed distribution version, else the source tree's, else a fallback."""
    try:
        return metadata.version("nlpw")
    except metadata.PackageNotFoundError:
        return _pyproject_version() or _FALLBACK_VERSION


__version__ = get_version()
