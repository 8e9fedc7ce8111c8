class FeatureSelectionError(Exception):
    pass


class SampleSizeError(FeatureSelectionError):
    pass


class BoundsError(FeatureSelectionError):
    pass
