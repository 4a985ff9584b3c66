class ToolkitError(ValueError):
    """Base class for every domain error raised by the toolkit."""
