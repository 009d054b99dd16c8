"""Exception types shared across the package."""


class SkillgapError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SkillgapError):
    """Bad configuration, unreadable input or invalid file contents."""


class ExtractionError(SkillgapError):
    """An HTML snapshot did not yield a required field."""


class StatError(SkillgapError):
    """A statistical table is degenerate or otherwise unusable."""


class ConvergenceError(SkillgapError):
    """A numerical routine failed to converge within its iteration cap."""
