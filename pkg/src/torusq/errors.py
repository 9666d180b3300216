"""Exception types raised across the package.

Names follow the domain vocabulary so that the CLI can surface them verbatim.
"""

from __future__ import annotations


class TorusQError(Exception):
    """Base class for every error raised by torusq."""


class InputError(TorusQError):
    """Malformed input document (JSON syntax, schema, move tokens)."""


class DimensionError(TorusQError, ValueError):
    pass


class PinchedSolid(TorusQError):
    """The voxel solid's boundary is not a 2-manifold at some lattice vertex."""


class NotATorus(TorusQError):
    pass


class CycleNotOnSurface(TorusQError):
    pass


class DependentMarking(TorusQError):
    """Marking cycles do not form a basis of H1(surface; Z/2)."""


class OverlappingComponents(TorusQError):
    pass


class InvalidPath(TorusQError):
    """A lattice path or edge cycle violates its step/simplicity/tautness rules."""


class SharedPoint(TorusQError):
    pass


class KernelDimensionError(TorusQError):
    """Zero or several nonzero classes bound in a region, instead of exactly one."""


class InsufficientMargin(KernelDimensionError):
    pass


class ComponentCountMismatch(TorusQError):
    pass


class NotUnimodular(TorusQError):
    pass


class NotRegularlyHomotopic(TorusQError):
    pass


class NotInTauU(TorusQError):
    pass


class InconsistentMorseData(TorusQError):
    pass


class UnknownGenerator(TorusQError):
    pass
