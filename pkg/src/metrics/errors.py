class MetricError(Exception):
    pass


class UndefinedDenominatorError(MetricError):
    pass


class SchemaMismatch(MetricError):
    pass
