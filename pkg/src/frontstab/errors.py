"""Exception types shared across the package."""


class FrontstabError(Exception):
    """Base class for package-specific failures."""


class ConfigError(FrontstabError):
    """Run configuration is missing, malformed, or inconsistent."""


class NumericalError(FrontstabError):
    """A numerical procedure failed to converge or produced invalid output."""
