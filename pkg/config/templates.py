# Propagation report lines
DOMAIN_LINE = "domain {name}: {{{values}}}"
BOUNDS_LINE = "bounds {name}: {low}..{high}"
FAIL_LINE = "fail: {reason}"

# Solve report lines
STATUS_LINE = "status: {status}"
OBJECTIVE_LINE = "objective: {value}"
ASSIGN_LINE = "assign {name}: {value}"
STATISTICS_LINE = "statistics: nodes={nodes} propagations={propagations} time={seconds:.3f}s"

# Audit report lines
MATCH_LINE = "MATCH"
MISMATCH_HEADER = "MISMATCH constraint #{index} ({kind} over {variables})"
MISMATCH_DOMAIN_LINE = "  {name}: propagator={propagator} oracle={oracle}"
MISMATCH_BOUND_LINE = "  {name}.min: propagator={propagator} oracle={oracle}"
MISMATCH_FAIL_LINE = "  outcome: propagator={propagator} oracle={oracle}"
GUARD_LINE = "error: {message}"

# Diagnostics
SYNTAX_ERROR_LINE = "{path}:{line}:{column}: error: {message}"
