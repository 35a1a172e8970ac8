"""Core configuration and error types"""
from app.core.config import Settings, settings
from app.core.exceptions import BaseOptimizationException, exit_code_for

__all__ = [
    "Settings",
    "settings",
    "BaseOptimizationException",
    "exit_code_for",
]
