class OrchestrationError(Exception):
    pass


class ConfigurationError(OrchestrationError):
    pass


class SampleError(OrchestrationError):
    pass
