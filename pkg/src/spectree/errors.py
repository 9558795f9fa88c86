"""Shared exception types."""


class DocumentError(ValueError):
    """A structured document (tree, weight, map, or analysis spec) failed
    validation. The message names the offending field or vertex."""
