"""
Command-line application factory.
"""

import logging
from typing import Optional

import click

from . import settings


def configure_logging(level: str = settings.LOG_LEVEL, log_file: Optional[str] = settings.LOG_FILE) -> None:
    """Configure root logging once: console handler, plus a file handler when requested."""
    logging.basicConfig(level=level, format=settings.LOG_FORMAT)
    if log_file:
        handler = logging.FileHandler(log_file)
        handler.setFormatter(logging.Formatter(settings.LOG_FORMAT))
        logging.getLogger().addHandler(handler)


def create_app() -> click.Group:
    """Initialize and configure the tvrestore command-line application."""
    configure_logging()

    @click.group(name='tvrestore', context_settings={'help_option_names': ['-h', '--help']})
    @click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                                                   case_sensitive=False),
                  help=f"Override TVR_LOG_LEVEL (currently {settings.LOG_LEVEL})")
    def app(log_level):
        """Tensor total-variation denoising and deblurring."""
        if log_level:
            logging.getLogger().setLevel(log_level.upper())

    # Register commands
    from .commands import media, restore
    for command in restore.commands + media.commands:
        app.add_command(command)

    return app
