from .configs import Config, load_settings
from .managers import ConfigManager, ConfigPaths, manager
