"""Version management for semsearch."""

import sys
from importlib import import_module
from typing import Any, Dict, NamedTuple, Optional, Tuple

__version__ = "1.0.0"
__version_info__ = (1, 0, 0)

__title__ = "semsearch"
__description__ = (
    "Keyword search over RDF graphs with summary-graph result augmentation"
)
__license__ = "MIT"
__status__ = "Beta"

__all__ = [
    "__version__",
    "__version_info__",
    "__title__",
    "__description__",
    "__license__",
    "__status__",
    "get_version_info",
    "get_version_string",
    "get_full_version_info",
    "check_python_version",
    "get_dependency_versions",
    "VersionInfo",
]

# distribution name -> importable module
KEY_DEPENDENCIES = {
    "rdflib": "rdflib",
    "nltk": "nltk",
    "numpy": "numpy",
    "scipy": "scipy",
    "pandas": "pandas",
    "flask": "flask",
    "rich": "rich",
    "charset-normalizer": "charset_normalizer",
}


class VersionInfo(NamedTuple):
    major: int
    minor: int
    patch: int
    pre_release: str = ""
    build: str = ""


def get_version_info() -> VersionInfo:
    return VersionInfo(*__version_info__)


def get_version_string() -> str:
    return __version__


def get_full_version_info() -> Dict[str, Any]:
    """
    Get complete version and environment information.
    """
    return {
        "version": __version__,
        "version_info": __version_info__,
        "python_version": sys.version,
        "platform": sys.platform,
        "title": __title__,
        "description": __description__,
        "license": __license__,
        "status": __status__,
        "dependencies": get_dependency_versions(),
    }


def check_python_version(min_version: Optional[Tuple[int, int]] = None) -> bool:
    """
    Check if Python version meets minimum requirements.
    """
    if min_version is None:
        try:
            from semsearch.config import settings

            min_version_str = settings.get("project.min_python_version", "3.10")
            major, minor = map(int, min_version_str.split("."))
            min_version = (major, minor)
        except (ImportError, ValueError, AttributeError):
            min_version = (3, 10)

    return sys.version_info[:2] >= min_version


def get_dependency_versions() -> Dict[str, str]:
    """
    Get versions of key dependencies.
    """
    versions: Dict[str, str] = {}
    for dist_name, module_name in KEY_DEPENDENCIES.items():
        try:
            module = import_module(module_name)
        except ImportError:
            versions[dist_name] = "Not installed"
            continue
        versions[dist_name] = str(getattr(module, "__version__", "unknown"))
    return versions


if not check_python_version():
    import warnings

    warnings.warn(
        f"semsearch {__version__} requires Python 3.10 or higher. "
        f"You are using Python {sys.version}",
        UserWarning,
    )
