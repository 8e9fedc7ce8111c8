from .errors import ConfigurationError

# Survey signals kept after dropping unweighted, demographic and derived
# columns, in the order of their top-5 frequency across local models.
FEATURE_NAMES = (
    'cmnty_cli',
    'avoid_contact_all_or_most_time',
    'runny_nose',
    'worked_outside_home',
    'hh_cough',
    'self_cough',
    'anosmia_ageusia',
    'hh_sore_throat',
    'none_of_above',
    'self_sore_throat',
    'multiple_symptoms',
    'nasal_congestion',
    'other',
    'high_blood_pressure',
    'hh_shortness_of_breath',
    'hh_difficulty_breathing',
    'hh_cli',
    'self_difficulty_breathing',
    'heart_disease',
    'persistent_pain_pressure_in_chest',
    'muscle_joint_aches',
    'hh_fever',
    'self_shortness_of_breath',
    'multiple_medical_conditions',
    'kidney_disease',
    'diarrhea',
    'chronic_lung_disease',
    'tiredness_or_exhaustion',
    'self_fever',
    'no_above_medical_conditions',
    'cancer',
    'asthma',
    'nausea_vomiting',
    'diabetes',
    'autoimmune_disorder',
)

AGGREGATE_TOKENS = frozenset(['', 'all', 'overall', 'all-ages',
                              'all-genders', 'all_ages', 'all_genders'])


class ColumnManifest:
    '''
    Roles of survey table columns

    ``features`` maps raw column headers onto canonical feature names. When
    it is None, every column without another role is a feature named after
    its header.
    '''

    def role_columns(self):
        return {self.state, self.date, self.gender, self.age_bucket}

    def feature_columns(self, header):
        if self.features is None:
            roles = self.role_columns()
            return {column: column for column in header
                    if column not in roles}
        return {raw: name for raw, name in self.features.items()
                if raw in header}

    def select(self, names):
        '''Manifest parsing only the features called ``names``'''
        names = list(names)
        if self.features is None:
            mapping = {name: name for name in names}
        else:
            mapping = {raw: name for raw, name in self.features.items()
                       if name in names}
            unknown = set(names) - set(mapping.values())
            if unknown:
                raise ConfigurationError(
                    'features not in the column map: {}'
                    .format(', '.join(sorted(unknown))))
        return ColumnManifest(self.state, self.date, self.gender,
                              self.age_bucket, mapping)

    def canonical_names(self):
        if self.features is None:
            return None
        return list(self.features.values())

    def as_dict(self):
        return {'state': self.state, 'date': self.date,
                'gender': self.gender, 'age_bucket': self.age_bucket,
                'features': (None if self.features is None
                             else dict(self.features))}

    def __init__(self, state='state', date='date', gender='gender',
                 age_bucket='age_bucket', features=None):
        self.state = state
        self.date = date
        self.gender = gender
        self.age_bucket = age_bucket
        self.features = None if features is None else dict(features)
        if len({state, date, gender, age_bucket}) != 4:
            raise ConfigurationError('role columns must be distinct')
        if self.features is not None:
            names = list(self.features.values())
            if len(set(names)) != len(names):
                raise ConfigurationError('two columns map onto one feature')
            if self.role_columns() & set(self.features):
                raise ConfigurationError('a role column is mapped as feature')
