from .log import create_logger as create_logger
from .errors import ToolkitError as ToolkitError
from .config import (
    DEFAULT_TOLERANCE as DEFAULT_TOLERANCE,
    FLOAT_SIGNIFICANT_DIGITS as FLOAT_SIGNIFICANT_DIGITS,
    get_output_dir as get_output_dir,
    get_log_dir as get_log_dir,
    get_log_level as get_log_level,
    get_default_threads as get_default_threads,
)
from .text_manipulation import (
    ParseError as ParseError,
    parse_coefficients as parse_coefficients,
    format_polynomial as format_polynomial,
    format_tuple as format_tuple,
    format_float as format_float,
    round_significant as round_significant,
    enum_from_value as enum_from_value,
)
from .numeric import (
    complex_fsum as complex_fsum,
    roots_of_unity as roots_of_unity,
    phase_power as phase_power,
)
from .concurrency import parallel_map as parallel_map
