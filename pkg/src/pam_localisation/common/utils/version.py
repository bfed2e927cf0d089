"""common/utils/version.py"""

import subprocess
from pathlib import Path
from typing import Optional

from pam_localisation.common.utils.log import logger


def git_describe(cwd: Optional[str] = None) -> Optional[str]:
    """Salida de `git describe --always --dirty`, o None fuera de un repositorio."""
    try:
        result = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=cwd or str(Path(__file__).resolve().parent),
            capture_output=True, text=True, timeout=10, check=False,
        )
    except (OSError, subprocess.SubprocessError) as e:
        logger.debug(f"git describe no disponible: {e}")
        return None
    if result.returncode != 0:
        return None
    return result.stdout.strip() or None


def version_string() -> str:
    """Versión del paquete, con la descripción de git si existe."""
    from pam_localisation import __version__

    described = git_describe()
    return f"{__version__}+git.{described}" if described else __version__
