"""Distance ideals of strong digraphs over the integers."""

__version__ = "0.1.0"
