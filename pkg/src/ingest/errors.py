class IngestError(Exception):
    pass


class FormatError(IngestError):
    pass


class ValidationError(IngestError):
    def __init__(self, message, row=None, column=None):
        if row is not None:
            where = 'row {}'.format(row)
            if column is not None:
                where += ', column {}'.format(column)
            message = '{}: {}'.format(where, message)
        super().__init__(message)
        self.row = row
        self.column = column


class ConfigurationError(IngestError):
    pass


class SplitError(IngestError):
    pass
