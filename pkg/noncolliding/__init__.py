from ._noncolliding import NonColliding, SearchBox

__version__ = "0.1.0"
__all__ = [
    "NonColliding",
    "SearchBox",
    "__version__"
]
