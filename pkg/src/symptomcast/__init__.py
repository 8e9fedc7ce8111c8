from .main import SymptomcastApp, create_app, main
