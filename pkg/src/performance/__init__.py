"""Performance monitoring module."""
from .monitor import PerformanceMonitor

__all__ = ['PerformanceMonitor']
