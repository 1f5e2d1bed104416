"""Exception hierarchy for matred.

Resource-cap errors share a base class so callers (notably the CLI) can map
them to a dedicated exit code.
"""


class MatredError(Exception):
    """Base class for all matred errors."""


class ResourceCapExceeded(MatredError):
    """A computation exceeded a hard size or iteration cap."""


class GroundSetTooLarge(ResourceCapExceeded):
    """Ground set too large for an exhaustive computation."""


class SearchSpaceTooLarge(ResourceCapExceeded):
    """Enumeration space too large for an exhaustive search."""


class TooLarge(ResourceCapExceeded):
    """Instance too large for brute-force certification."""


class IterationCapExceeded(ResourceCapExceeded):
    """The local search exceeded its configured step cap."""


class LoopPresent(MatredError):
    """A matroid constructor received a ground set element that is a loop."""


class SelfLoopPresent(MatredError):
    """A graph contains a self-loop (which would be a matroid loop)."""


class InvalidPartition(MatredError):
    """Classes are not disjoint, not all nonempty, or do not cover the ground set."""


class InvalidFamily(MatredError):
    """A hyperplane family violates its structural conditions."""


class NotLaminar(MatredError):
    """A set family is not laminar."""


class UnsupportedOrder(MatredError):
    """Requested projective plane order is not supported."""


class UnsupportedParameter(MatredError):
    """A generator received an out-of-range parameter."""


class EmptyTruncation(MatredError):
    """Truncation to rank 0 of a nonempty ground set would create only loops."""


class RankNotTwo(MatredError):
    """Operation requires a rank-2 matroid."""


class RankNotThree(MatredError):
    """Operation requires a rank-3 hyperplane family."""


class SinglePartitionClass(MatredError):
    """All elements are pairwise parallel; the matroid has rank 1."""


class ElementOutsideT(MatredError):
    """A queried element is not among the gammoid's sink elements."""


class PresentationNotReduced(MatredError):
    """A bipartite presentation could not be shrunk to |B| = rank."""


class PresentationMismatch(MatredError):
    """A derived bipartite presentation does not present the intended matroid."""


class TightSetMeetsS(MatredError):
    """Splitting off a tight set would delete marked elements; the input
    presentation does not present a loopless gammoid on its marked set."""


class NoB2Forest(MatredError):
    """No forest with every B-vertex of degree two exists (strong Hall fails)."""


class NoLargeComponent(MatredError):
    """The local search was asked to improve a forest with no large component."""


class NoReachableSmall(MatredError):
    """A large component exists but no small component is reachable from one;
    the presentation violates the counting invariant of the local search."""


class BoundViolated(MatredError):
    """A reduction fails the coloring-number bound it is required to satisfy."""


class CutBoundExceeded(MatredError):
    """A peeled cocircuit is larger than the bound the caller asserted."""


class LineWithThreeColors(MatredError):
    """A projective-plane coloring has a line meeting three color classes."""


class NotGallai(MatredError):
    """An edge coloring of a complete graph contains a rainbow triangle."""


class KindMismatch(MatredError):
    """A reduction algorithm is incompatible with the matroid document kind."""


class GroundSetMismatch(MatredError):
    """Two inputs are defined over different ground sets."""
