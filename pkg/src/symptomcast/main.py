import colorama
from cli import ConsoleApp
from ingest import SynthSubcommand
from orchestrate import (TrainSubcommand, SweepSubcommand, EvaluateSubcommand,
                         ImportanceSubcommand)


class SymptomcastApp(ConsoleApp):
    def __init__(self):
        super().__init__('symptomcast')
        self.parser.description = \
            'Symptomcast - daily case regression from symptom surveys'


def create_app():
    app = SymptomcastApp()
    app.add_subcommand(SynthSubcommand())
    app.add_subcommand(TrainSubcommand())
    app.add_subcommand(EvaluateSubcommand())
    app.add_subcommand(SweepSubcommand())
    app.add_subcommand(ImportanceSubcommand())
    return app


def main(args=None):
    colorama.init()
    create_app().run(args)
