from .commands import (
    UsageError as UsageError,
    OutputFormat as OutputFormat,
    CommandRequest as CommandRequest,
    CommandResult as CommandResult,
    execute as execute,
    render as render,
    schema_text as schema_text,
)
