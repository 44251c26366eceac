"""Exception types raised across the jury selection pipeline."""


class JurySelectError(Exception):
    """Base class for every library-specific error."""


class InvalidJury(JurySelectError):
    """Jury violates its structural rules (empty, even-sized, duplicate ids)."""


class SizeLimitExceeded(JurySelectError):
    """Input is larger than an exponential-time routine is willing to accept."""


class InvalidDistribution(JurySelectError):
    """Wrong-count mass is malformed (negative beyond round-off, bad total)."""


class EvenSize(JurySelectError):
    """Majority threshold is undefined for an even-sized group."""


class EmptyPool(JurySelectError):
    """A candidate pool must contain at least one juror."""


class NoAffordableJuror(JurySelectError):
    """Every candidate's payment requirement exceeds the budget."""


class EmptyGraph(JurySelectError):
    """Ranking needs a graph with at least one node."""


class DegenerateScores(JurySelectError):
    """All quality scores are identical, so no error rates can be derived."""


class InputFormatError(JurySelectError):
    """A CSV/JSON input file does not match its expected schema."""


class CorpusError(InputFormatError):
    """A corpus record could not be read; carries the offending record index."""

    def __init__(self, message: str, record_index: int | None = None):
        super().__init__(message)
        self.record_index = record_index
