"""Exception hierarchy shared by the simulator, analysis and CLI layers."""


class CrawlSimError(Exception):
    """Base class for every error raised by crawlsim."""


class InvalidConfig(CrawlSimError, ValueError):
    """A parameter or scenario value violates its invariants."""


class NoOscillation(CrawlSimError):
    """The powered actuator can never out-pull the beam's critical force.

    ``shortfall_N`` is how far the best-case net pull falls short.
    """

    def __init__(self, message, shortfall_N=float("nan")):
        super().__init__(message)
        self.shortfall_N = shortfall_N


class TooFewEvents(CrawlSimError, ValueError):
    pass


class EmptySteps(CrawlSimError, ValueError):
    pass


class TooShort(CrawlSimError, ValueError):
    pass


class NoOscillationDetected(CrawlSimError):
    pass


class InvalidBounds(CrawlSimError, ValueError):
    pass


class Unachievable(CrawlSimError):
    """Calibration target cannot be met anywhere inside the search bracket."""


class MalformedFile(CrawlSimError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
