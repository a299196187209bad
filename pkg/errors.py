class GreyRankError(Exception):
    exit_code = 1

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def with_stage(self, stage):
        if self.stage is None:
            self.stage = stage
        return self

    def __str__(self):
        if self.stage:
            return f'[{self.stage}] {self.message}'
        return self.message


class ValidationError(GreyRankError):
    exit_code = 2


class DomainError(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


class NormalizationError(ValidationError):
    def __init__(self, message, attribute=None, stage=None):
        super().__init__(message, stage=stage)
        self.attribute = attribute


class SchemaError(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, line=None, column=None, stage=None):
        location = ''
        if line is not None:
            location = f'line {line}'
            if column is not None:
                location += f', column {column}'
            location += ': '
        super().__init__(location + message, stage=stage)
        self.line = line
        self.column = column


class UnsupportedSizeError(ValidationError):
    pass


class NumericError(GreyRankError):
    exit_code = 3


class DegenerateDataError(NumericError):
    pass


class ConvergenceError(NumericError):
    pass


class InfeasibleModelError(NumericError):
    def __init__(self, message, status=None, alternative=None, stage=None):
        super().__init__(message, stage=stage)
        self.status = status
        self.alternative = alternative


class DataIOError(GreyRankError):
    exit_code = 4
