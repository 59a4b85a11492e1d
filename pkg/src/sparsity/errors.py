"""Exception types shared across the library."""


class GraphFormatError(ValueError):
    """Malformed edge-list, graph6, layout, colouring, or drawing input."""


class DegenerateGeometryError(ValueError):
    """Straight-line drawing with geometry the crossing audits refuse to resolve."""


class MalformedLayoutError(ValueError):
    """Layout whose order is not a bijection or whose pages do not partition E."""


class SizeCapExceeded(ValueError):
    """Input larger than the brute-force cap of the operation."""


class SearchBudgetExceeded(RuntimeError):
    """An exhaustive search ran out of its node budget; the result is unknown."""
