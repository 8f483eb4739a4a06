from hwtune.shared.util import HwtuneException


class PromptOptionsError(HwtuneException):
    pass


class StaticTooLargeError(HwtuneException):
    def __init__(self, estimate: int, token_cap: int):
        super().__init__(
            f"The static prompt alone needs ~{estimate} tokens, the cap is {token_cap}"
        )
        self.estimate = estimate
        self.token_cap = token_cap


class PromptTooLargeError(HwtuneException):
    def __init__(self, estimate: int, token_cap: int):
        super().__init__(
            f"The prompt needs ~{estimate} tokens after dropping all history, "
            f"the cap is {token_cap}"
        )
        self.estimate = estimate
        self.token_cap = token_cap
