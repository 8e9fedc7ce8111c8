import logging
import os
import time
from cli import ExperimentSubcommand, write_manifest, EXIT_OK
from .config import config, add_sections, synth_config
from .errors import ConfigurationError, IngestError
from .synth import generate_synthetic, write_synthetic

logger = logging.getLogger(__name__)


class SynthSubcommand(ExperimentSubcommand):
    configs = (config,)
    schema_parts = (add_sections,)
    usage_errors = (ConfigurationError,)
    runtime_errors = (IngestError,)

    def overrides(self, args):
        result = super().overrides(args)
        if args.seed is not None:
            result['synth'] = {'seed': args.seed}
        return result

    def execute(self, args, settings):
        started = time.monotonic()
        cfg = synth_config(settings['synth'])
        out = self.output_dir(settings)
        panel, truth = generate_synthetic(cfg)
        paths = write_synthetic(panel, truth, out)
        write_manifest(out, 'synth', settings, started=started,
                       outputs=[os.path.basename(path) for path in paths],
                       rows=len(panel))
        logger.info('wrote %d synthetic rows to %s', len(panel), out)
        return EXIT_OK

    def __init__(self):
        super().__init__('synth', 'Generate a synthetic panel with known '
                                  'ground truth')
