from . import benchmark, practical  # noqa: F401
