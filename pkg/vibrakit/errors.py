# vibrakit/errors.py
"""Exception hierarchy shared by every vibrakit module."""

from typing import Optional


class VibrakitError(Exception):
    """Base class for all vibrakit errors"""


class InputError(VibrakitError, ValueError):
    """Invalid user input: decks, files, arguments"""


class DeckError(InputError):
    """Model deck could not be turned into a Model"""

    def __init__(self, message: str, line: Optional[int] = None, card: Optional[str] = None):
        self.line = line
        self.card = card
        location = []
        if line is not None:
            location.append(f"line {line}")
        if card:
            location.append(f"card {card}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class DeckSyntaxError(DeckError):
    pass


class DanglingReferenceError(DeckError):
    pass


class DuplicateIdError(DeckError):
    pass


class GeometryError(InputError):
    """Element geometry cannot be formulated (zero length, degenerate quad, ...)"""


class PunchFormatError(InputError):
    """Malformed punch-file content"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(f"{where}{message}")


class ConfigError(InputError):
    """Invalid configuration value or descriptor"""


class BracketError(InputError):
    """Search target is not bracketed by the given bounds"""


class MissingRecordError(InputError):
    """A required result record is absent"""


class OutOfBandError(InputError):
    """Frequency outside the band covered by a profile or curve"""


class SolverError(VibrakitError, RuntimeError):
    """Numerical failure during assembly or solution"""


class AssemblyError(SolverError):
    pass


class ModelTooLargeError(SolverError):
    pass


class SingularStiffnessError(SolverError):
    """Stiffness matrix is singular on the free DOFs"""

    def __init__(self, zero_energy_modes: int, message: Optional[str] = None):
        self.zero_energy_modes = zero_energy_modes
        super().__init__(
            message
            or f"stiffness matrix is singular: {zero_energy_modes} zero-energy mode(s); "
            "check constraints"
        )


class ModalSolverError(SolverError):
    pass


class ConvergenceError(SolverError):
    pass
