from .info import info
from .main import main

__all__ = ["main", "info"]
