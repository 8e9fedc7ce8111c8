class ModelError(Exception):
    pass


class ShapeError(ModelError):
    pass


class HyperparameterError(ModelError):
    pass


class SerializationError(ModelError):
    pass
