"""
Common decorators for the branched-algebra project.
"""

from .suites import suite_registry, verification_suite

__all__ = ["suite_registry", "verification_suite"]
