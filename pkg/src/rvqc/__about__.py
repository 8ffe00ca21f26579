from importlib import metadata

try:
    __version__ = metadata.version("rvqc")
except Exception:
    __version__ = "unknown"
