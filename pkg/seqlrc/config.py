"""Enumeration limits and numeric defaults.

Every exhaustive search in the package is bounded by a :class:`Limits`
instance. Exceeding a bound raises ``ResourceLimitError``; results are never
silently truncated. Defaults can be overridden through the environment::

    SEQLRC_MAX_GHW_LENGTH   largest block length for GHW enumeration (24)
    SEQLRC_MAX_SUBSETS      largest number of subsets in one scan (10**7)
    SEQLRC_MAX_CODEWORDS    largest code enumerated word by word (2**16)
    SEQLRC_CORE_SAMPLE_SIZE cores sampled when exhaustive checks are too big
"""
import dataclasses
import os

from seqlrc.errors import InvalidParametersError

DEFAULT_PRIME = 65537
DEFAULT_MAX_TRIES = 50

_ENV = {
    "max_ghw_length": "SEQLRC_MAX_GHW_LENGTH",
    "max_subsets": "SEQLRC_MAX_SUBSETS",
    "max_codewords": "SEQLRC_MAX_CODEWORDS",
    "core_sample_size": "SEQLRC_CORE_SAMPLE_SIZE",
}


@dataclasses.dataclass(frozen=True)
class Limits:
    max_ghw_length: int = 24
    max_subsets: int = 10 ** 7
    max_codewords: int = 2 ** 16
    core_sample_size: int = 10 ** 5

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, int) or value < 1:
                raise InvalidParametersError(
                    f"limit {field.name} must be a positive integer, got {value!r}")

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        values = {}
        for name, var in _ENV.items():
            raw = environ.get(var)
            if raw is None or raw.strip() == "":
                continue
            try:
                values[name] = int(raw)
            except ValueError:
                raise InvalidParametersError(f"{var}={raw!r} is not an integer") from None
        return cls(**values)

    def replace(self, **changes):
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})


def resolve(limits):
    """Return ``limits`` or the environment defaults when it is None."""
    return Limits.from_env() if limits is None else limits
