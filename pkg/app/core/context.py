import contextvars

# One id per CLI run or HTTP request; read by the logging filter.
correlation_id_ctx: contextvars.ContextVar[str] = contextvars.ContextVar(
    "correlation_id", default=""
)

# Kind of the command being dispatched ("isolate", "hyper-ivt", ...).
command_ctx: contextvars.ContextVar[str] = contextvars.ContextVar("command", default="")
