from __future__ import annotations


__all__ = [
    'ArcAcrossBlocks',
    'ConfigError',
    'DecompositionMismatch',
    'FramingInconsistency',
    'InvalidPartition',
    'InvalidWord',
    'NotAClosedCurve',
    'NotComposable',
    'NotTorelli',
    'SubtorelliError',
    'TauIdentificationFailure',
]


# -- IMPORTS --

# -- Standard libraries --

# -- 3rd party libraries --

# -- Internal libraries --


class SubtorelliError(ValueError):
    """Base class for all errors raised by the package.

    Subclasses :py:class:`ValueError` so that callers guarding against bad
    values in the usual way also catch the errors here.
    """


class InvalidPartition(SubtorelliError):
    """Boundary blocks are empty, overlap, repeat an identifier, or do not cover the boundary."""


class InvalidWord(SubtorelliError):
    """A word string names an unknown generator or is otherwise malformed."""


class NotComposable(SubtorelliError):
    """Two paths do not meet end to start, or arcs do not share both endpoints."""


class NotAClosedCurve(SubtorelliError):
    """An operation defined on closed curves received an arc."""


class ArcAcrossBlocks(SubtorelliError):
    """An arc joins boundary components lying in different partition blocks."""


class DecompositionMismatch(SubtorelliError):
    """A homology class does not live on the surface a decomposition expects."""


class NotTorelli(SubtorelliError):
    """A mapping class moves some basis class of :math:`H_1^{\\mathcal{P}}`.

    The offending basis label is kept on the ``label`` attribute.
    """
    def __init__(self, message: str, /, *, label: str | None = None) -> None:
        super().__init__(message)
        self.label = label


class FramingInconsistency(SubtorelliError):
    """A framing gives a disk face the wrong turning, or a winding difference is odd."""


class TauIdentificationFailure(SubtorelliError):
    """A Magnus coefficient table is not the image of any element of :math:`\\wedge^3 H`."""


class ConfigError(SubtorelliError):
    """Bad configuration: unreadable files, mismatched surface hashes, refused requests."""
