class NetworkError(Exception):
    pass


class ShapeError(NetworkError):
    pass


class StateError(NetworkError):
    pass


class ConfigurationError(NetworkError):
    pass


class TrainingError(NetworkError):
    def __init__(self, message, epoch=None):
        if epoch is not None:
            message = 'epoch {}: {}'.format(epoch, message)
        super().__init__(message)
        self.epoch = epoch


class SerializationError(NetworkError):
    pass
