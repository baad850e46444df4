"""
Exceptions raised by the crystal services.
All of them are ValueErrors so callers that only care about bad input can catch one thing.
"""


class CrystalError(ValueError):
    pass


class RankError(CrystalError):
    pass


class IndexOutOfRange(CrystalError):
    pass


class NegativeNotAllowed(CrystalError):
    pass


class ParseError(CrystalError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MissingVariable(CrystalError):
    def __init__(self, name: str):
        super().__init__(f"no value for variable {name!r}")
        self.name = name


class DivisionByZero(CrystalError, ZeroDivisionError):
    pass


class ExpansionTooLarge(CrystalError):
    pass


class UndefinedOnChart(CrystalError):
    pass


class InvalidElement(CrystalError):
    pass
