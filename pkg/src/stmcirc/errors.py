"""Exception hierarchy.

Each class carries the CLI exit code it maps to: 2 for configuration
problems, 3 for numerical failures and 4 for requirements that cannot be
met.
"""


class StmError(Exception):
    exit_code = 3


class ConfigError(StmError):
    exit_code = 2


class NumericFailure(StmError):
    exit_code = 3


class Infeasible(StmError):
    exit_code = 4


class SingularConversion(NumericFailure):
    pass


class InvalidModulationDepth(StmError, ValueError):
    exit_code = 2


class PoleProximity(NumericFailure):
    pass


class DegenerateJunction(NumericFailure):
    pass


class SingularNetwork(NumericFailure):
    pass


class NoResonance(NumericFailure):
    pass


class MultipleResonances(NumericFailure):
    pass


class InfeasibleSpecs(Infeasible):
    pass


class GridTooNarrow(NumericFailure):
    pass


class SingularNode(NumericFailure):
    pass


class NoConvergence(NumericFailure):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NonPhysical(NumericFailure):
    pass


class EmptyFeasibleSet(Infeasible):
    pass


class SingularGraph(NumericFailure):
    pass


class SingularSystem(SingularGraph):
    pass


class NoBand(Infeasible):
    pass


class EmptyRow(Infeasible):
    pass


class SingularTruncation(NumericFailure):
    pass
