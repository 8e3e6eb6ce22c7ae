"""
dkk-lab: conditionality constants and greedy-type bounds for DKK spaces
"""

__version__ = "0.1.0"

from .main import main  # noqa: E402

__all__ = ["main", "__version__"]
