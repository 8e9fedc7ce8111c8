from runconf import Document, ParseError, merge, overlay


class Config:
    '''Package defaults merged with site and user configuration files'''

    def __getitem__(self, key):
        return self.__sections.setdefault(key, {})

    def __iter__(self):
        return iter(self.__sections.items())

    def as_dict(self):
        return {key: dict(values) for key, values in self.__sections.items()}

    def __init__(self, filenames, user_config, default_config=''):
        document = Document(default_config)
        for filename in filenames:
            if filename.is_file():
                try:
                    merge(document, Document().load_from_file(filename))
                except ParseError as err:
                    err.filename = filename
                    raise err
            elif filename == user_config and default_config:
                Document(default_config).save_to_file(filename)
        self.__sections = document.as_dict()


def load_settings(schema, configs, experiment=None, overrides=None):
    '''
    Validated settings for a run

    ``configs`` are package configs (their merged defaults and files),
    ``experiment`` an optional experiment file layered on top of them and
    ``overrides`` a final {section: {key: value}} layer from the command line.
    '''
    layers = [config.as_dict() for config in configs]
    if experiment is not None:
        try:
            layers.append(Document().load_from_file(experiment).as_dict())
        except ParseError as err:
            err.filename = experiment
            raise err
    if overrides:
        layers.append(overrides)
    sections = schema.sections()
    values = overlay({}, *layers)
    return schema.validate({key: value for key, value in values.items()
                            if key in sections or value},
                           sections)
