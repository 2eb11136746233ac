# core/exceptions.py
from typing import Optional


class SajatiyaError(Exception):
    """Base class for every error the toolkit raises on purpose"""


class ResourceLoadError(SajatiyaError):
    """A data file is missing or malformed"""

    def __init__(self, path: str, message: str, line: Optional[int] = None):
        self.path = str(path)
        self.line = line
        self.message = message
        location = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{location}: {message}")


class ConfigurationError(SajatiyaError):
    """A run was asked for something its resources cannot provide"""


class DomainError(SajatiyaError, ValueError):
    """Numeric input outside an operation's domain"""


class TrainingError(SajatiyaError):
    """Classifier training cannot proceed"""
