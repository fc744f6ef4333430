class SearchLimitExceeded(RuntimeError):
    """A bounded search ran out of room. The answer is unknown, not negative."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DepthLimitExceeded(SearchLimitExceeded):
    pass


class SizeGuardExceeded(SearchLimitExceeded):
    pass


class NotAFactor(ValueError):
    pass


class SpecError(ValueError):
    pass


class NoUniqueExtensionWitness(RuntimeError):
    """No factor with a unique extension of the required length was found.

    For a subshift of finite type this can be a proof of absence; otherwise it
    only means the search bound was exhausted.
    """

    def __init__(self, message, D=None, search_len=None):
        super().__init__(message)
        self.D = D
        self.search_len = search_len
