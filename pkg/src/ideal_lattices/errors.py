class ResourceError(RuntimeError):
    """An enumeration or search would exceed its configured budget."""
