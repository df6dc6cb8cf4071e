#!/usr/bin/env python3
"""
Exception hierarchy for the toolkit.
Every failure the library can raise derives from ToolkitError, so callers
(and the CLI) can map whole families of errors to exit statuses.
"""


class ToolkitError(Exception):
    """Base class for every toolkit error."""


class GraphError(ToolkitError, ValueError):
    """Invalid graph, hypergraph or certificate content."""


class ParseError(GraphError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class InvalidInstance(GraphError):
    """A 3DM instance that is not tripartite 3-regular 3-uniform."""


class PreconditionViolated(ToolkitError, ValueError):
    """An operation was called on input outside its documented domain."""


class NotOddlyUniform(PreconditionViolated):
    def __init__(self, hyperedge, size):
        self.hyperedge = hyperedge
        self.size = size
        super().__init__(f"hyperedge {hyperedge} has even cardinality {size}")


class NotQuasiRegular(PreconditionViolated):
    def __init__(self, node, degree, delta):
        self.node = node
        self.degree = degree
        self.delta = delta
        super().__init__(f"node {node} has quasi-degree {degree}, expected {delta}")


class ZeroQuasiDegree(PreconditionViolated):
    def __init__(self, node):
        self.node = node
        super().__init__(f"quasi-degree is 0 and node {node} lies in no singleton hyperedge")


class DegreeBoundViolated(PreconditionViolated):
    def __init__(self, node, degree, bound):
        self.node = node
        self.degree = degree
        self.bound = bound
        super().__init__(f"node {node} has degree {degree} > {bound}")


class NotPerfectMatching(PreconditionViolated):
    def __init__(self, witness, message="node not covered exactly once"):
        self.witness = witness
        super().__init__(f"{message}: {witness}")


class NoSaturation(ToolkitError):
    """Hall's condition fails: |N(witness)| < |witness|."""

    def __init__(self, witness, neighbors):
        self.witness = frozenset(witness)
        self.neighbors = frozenset(neighbors)
        super().__init__(
            f"no matching saturates the set: {len(self.witness)} nodes "
            f"share only {len(self.neighbors)} neighbors"
        )


class InternalTheoremViolation(ToolkitError, RuntimeError):
    """A subroutine guaranteed by a theorem failed; this is a bug."""


TheoremViolation = InternalTheoremViolation


class InvalidSolution(ToolkitError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else "unknown"
        super().__init__(f"invalid solution ({len(self.violations)} violations), first: {first}")


class NotVFree(ToolkitError, ValueError):
    def __init__(self, component):
        self.component = component
        super().__init__(f"component is a V-path: {component}")


class CoverageGap(ToolkitError, ValueError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"required node {node} is not covered")


class BudgetExceeded(ToolkitError):
    def __init__(self, limit, value, cap):
        self.limit = limit
        self.value = value
        self.cap = cap
        super().__init__(f"oracle budget exceeded: {limit}={value} (cap {cap})")


class InfeasibleParams(ToolkitError, ValueError):
    """Generator parameters outside their documented ranges."""
