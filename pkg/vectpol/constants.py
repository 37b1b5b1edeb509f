"""A collection of computation free constants.

This module should stay cheap to import.
"""

DEFAULT_MAX_DEGREE: int = 16
"""Largest field degree a space accepts before a computation is abandoned."""

DEFAULT_MAX_DIM: int = 200
"""Largest dimension a bracket closure may reach."""

DEFAULT_WITNESS_DEGREE: int = 3
"""Truncation degree for non-maximality witnesses."""

SCALAR_MODES: tuple[str, ...] = ('rational', 'gaussian')

EXIT_MAXIMAL: int = 0
EXIT_ERROR: int = 2
EXIT_NOT_MAXIMAL: int = 3
EXIT_UNDECIDED: int = 4

CATALOG_PREFIX: str = 'catalog:'
