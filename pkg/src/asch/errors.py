"""Exception hierarchy.

Two families matter to callers: :class:`CheckFailed` means a mathematical
check did not hold (the CLI exits 1 and prints the witness), while
:class:`UsageError` means the input itself was unusable (exit 2).
"""


class AschError(Exception):
    pass


class CheckFailed(AschError):
    pass


class UsageError(AschError):
    pass


# exact linear algebra

class NonSquare(UsageError):
    pass


class NonIntegralEntries(UsageError):
    pass


class Singular(CheckFailed):
    pass


class NonIntegralSpectrum(CheckFailed):
    pass


class JointEigenspaceNotSimple(CheckFailed):
    pass


# scheme axioms

class MalformedPartition(UsageError):
    pass


class NotSymmetric(CheckFailed):
    def __init__(self, x, y, a, b):
        self.witness = (x, y)
        super().__init__(f"rel({x},{y})={a} but rel({y},{x})={b}")


class IdentityViolation(CheckFailed):
    def __init__(self, x, y, value):
        self.witness = (x, y)
        if x == y:
            msg = f"rel({x},{x})={value}, expected 0"
        else:
            msg = f"rel({x},{y})=0 off the diagonal"
        super().__init__(msg)


class IntersectionNumberNotConstant(CheckFailed):
    def __init__(self, i, j, k, witnesses):
        self.i, self.j, self.k = i, j, k
        self.witnesses = witnesses
        (x1, y1, c1), (x2, y2, c2) = witnesses
        super().__init__(
            f"p[{i},{j}]^{k} not constant: pair ({x1},{y1}) counts {c1}, "
            f"pair ({x2},{y2}) counts {c2}"
        )


class NonIntegralMultiplicity(CheckFailed):
    pass


# imprimitivity

class NotClosed(CheckFailed):
    pass


class UnequalBlocks(CheckFailed):
    pass


class NotAFourClassCover(CheckFailed):
    pass


class ArrangementImpossible(CheckFailed):
    pass


# cliques and fission

class EmptySubset(UsageError):
    pass


class NonNegativeTheta(CheckFailed):
    pass


class NotTight(CheckFailed):
    pass


class NotConstant(CheckFailed):
    def __init__(self, relation, witnesses):
        self.relation = relation
        self.witnesses = witnesses
        (x1, c1), (x2, c2) = witnesses
        super().__init__(
            f"|R_{relation}(x) & Y| differs: x={x1} gives {c1}, x={x2} gives {c2}"
        )


class DegenerateFission(CheckFailed):
    pass


class NotAPartition(UsageError):
    pass


class BlockNotClique(CheckFailed):
    def __init__(self, index, profile):
        self.index = index
        self.profile = profile
        super().__init__(f"block {index} has relation profile {sorted(profile)}")


class BlockNotTight(CheckFailed):
    def __init__(self, index, size, bound):
        self.index = index
        super().__init__(f"block {index} has size {size}, bound is {bound}")


# weighing matrices

class MultiplicityMismatch(CheckFailed):
    pass


class NonConstantAngle(CheckFailed):
    pass


class UnbiasednessViolation(CheckFailed):
    def __init__(self, a, c, b, cell):
        self.pair = (a, c)
        self.reference = b
        self.cell = cell
        super().__init__(
            f"W[{a},{b}] W[{c},{b}]^T != (1/alpha) W[{a},{c}] at cell {cell}"
        )


# codes

class EvenDegree(UsageError):
    def __init__(self, m):
        super().__init__(f"m must be odd (got {m})")


class UnsupportedDegree(UsageError):
    pass


class WeightSpectrumViolation(CheckFailed):
    pass


class UnexpectedDistance(CheckFailed):
    def __init__(self, x, y, dist):
        self.witness = (x, y)
        super().__init__(f"codewords {x} and {y} at unexpected distance {dist}")


class FormatError(UsageError):
    def __init__(self, msg, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + msg)


class NotWeighing(CheckFailed):
    pass
