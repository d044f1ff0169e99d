"""Exception types shared across the toolkit."""


class ConversionError(ValueError):
    """Raised for an unsupported color-space conversion pair."""

    def __init__(self, source: str, target: str):
        super().__init__(f"unsupported color conversion: {source} -> {target}")
        self.source = source
        self.target = target


class FormatError(IOError):
    """Raised for an unsupported or malformed image file."""


class NoFeatureError(RuntimeError):
    """Raised when a detection stage finds nothing to work with.

    ``stage`` names the pipeline step that came up empty so callers can
    report where a composite procedure failed.
    """

    def __init__(self, stage: str, detail: str = ""):
        msg = f"no features found at stage '{stage}'"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.stage = stage
