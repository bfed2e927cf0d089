"""pam_localisation: simulación y verificación del PAM con potencial de Pareto duplicado."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("pam_localisation")
except PackageNotFoundError:
    __version__ = "0+unknown"

__all__ = ["__version__"]
