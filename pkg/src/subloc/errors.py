"""Exception types shared across the package."""


class NotAFrame(ValueError):
    """The lattice fails the (finite) frame distributivity law."""


class NotACoframe(ValueError):
    """The lattice fails the (finite) coframe distributivity law."""


class NotProper(ValueError):
    """A fitted-sublocale collection failed a properness-dependent check."""


class SizeLimit(RuntimeError):
    """An enumeration or search exceeded its configured bound."""
