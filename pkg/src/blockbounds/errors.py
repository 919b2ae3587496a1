class CapExceeded(ValueError):
    """An exhaustive computation was asked to run beyond its configured size cap."""
