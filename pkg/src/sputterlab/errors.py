"""Exception hierarchy shared across the package."""


class SputterlabError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(SputterlabError, ValueError):
    """An argument violates a documented precondition."""


class InvalidConfigError(SputterlabError, ValueError):
    """A configuration object or file is inconsistent or malformed."""


class DegenerateFitError(SputterlabError):
    """A fit has no signal to work with (e.g. all sensor readings <= 0)."""


class NumericalError(SputterlabError):
    """A linear-algebra operation failed even after jitter escalation."""


class ExhaustedCandidatesError(SputterlabError):
    """Every candidate setpoint has already been queried."""


class ReplayMissError(SputterlabError):
    """An offline-replay oracle was asked for a setpoint not in its dataset."""


class CampaignAbortedError(SputterlabError):
    """The experiment oracle failed mid-campaign.

    The partial query log accumulated so far is preserved on the
    ``partial_result`` attribute.
    """

    def __init__(self, message, partial_result=None):
        super().__init__(message)
        self.partial_result = partial_result
