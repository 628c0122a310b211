"""Exception types shared across the toolkit."""


class TurnkitError(Exception):
    """Base class for all toolkit errors."""


class UnknownFormat(TurnkitError):
    """No format-detection rule matched the input file."""


class MalformedXml(TurnkitError):
    pass


class DanglingTimeSlotRef(TurnkitError):
    """An annotation references a time slot that was never declared."""


class UnresolvableTime(TurnkitError):
    """A time point cannot be interpolated because an anchor is missing."""


class MissingHeader(TurnkitError):
    pass


class MalformedTimeBullet(TurnkitError):
    pass


class MalformedTextGrid(TurnkitError):
    pass


class NonMonotoneIntervals(TurnkitError):
    """Interval starts before the previous one ends (beyond 1 ms tolerance)."""


class DanglingTliRef(TurnkitError):
    """An event references a timeline point that was never declared."""


class NoUtteranceTier(TurnkitError):
    pass


class EmptySelection(TurnkitError):
    """The tier map patterns matched no tier in the document."""


class SchemaMismatch(TurnkitError):
    """A table file is missing core columns or has malformed rows."""


class ZeroRecording(TurnkitError):
    pass


class TooFewTokens(TurnkitError):
    pass


class MediaDirUnreadable(TurnkitError):
    pass


class EmptyTable(TurnkitError):
    pass


class CorpusTooSmall(TurnkitError):
    pass
