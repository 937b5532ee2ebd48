"""Exception taxonomy shared by all modules.

The command line front door maps these onto exit codes: invalid input is 2,
resource guardrails are 3, and a failed verification check is 1.
"""


class GraphInputError(ValueError):
    """Malformed input: out-of-range vertex, self-loop, bad file, improper coloring."""


class ResourceLimitError(RuntimeError):
    """A configured guardrail (instance size, node budget) refused the request."""


class CounterexampleError(RuntimeError):
    """A relationship that is mathematically guaranteed failed on concrete data.

    This never indicates a property of the input; it means the implementation
    is buggy (or a proof in the literature is wrong).  Callers must not catch
    and continue.
    """
