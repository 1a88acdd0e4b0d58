from .result_sink import ResultSink, flatten, format_cell
from .run_context import RunContext, DEFAULT_WORKERS, LOG_LEVEL, EXIT_OK, EXIT_INVALID, EXIT_BREAKDOWN
