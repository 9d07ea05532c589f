EXIT_CODE_SUCCESS = 0
EXIT_CODE_CONFIGURATION = 2
EXIT_CODE_DATA = 3
EXIT_CODE_NUMERICAL = 4


class CommunityGSPError(Exception):
    exit_code = 1


class ConfigurationError(CommunityGSPError):
    exit_code = EXIT_CODE_CONFIGURATION


class DataError(CommunityGSPError):
    exit_code = EXIT_CODE_DATA


class SignalGraphMismatchError(DataError):
    pass


class InvalidPartitionError(DataError):
    pass


class InvalidPassbandError(DataError):
    pass


class InvalidParameterError(DataError):
    pass


class IngestionError(DataError):
    pass


class MalformedFileError(DataError):
    def __init__(self, path, line_number, message):
        super(MalformedFileError, self).__init__(
            "{path}:{line_number}: {message}".format(path=path, line_number=line_number, message=message))
        self.path = path
        self.line_number = line_number


class NumericalFailureError(CommunityGSPError):
    exit_code = EXIT_CODE_NUMERICAL

    def __init__(self, message, residual_norm=None):
        super(NumericalFailureError, self).__init__(
            "{message} (residual norm = {residual_norm})".format(message=message, residual_norm=residual_norm))
        self.residual_norm = residual_norm
