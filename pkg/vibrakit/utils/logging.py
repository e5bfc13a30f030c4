# vibrakit/utils/logging.py
import logging
import sys
from pathlib import Path


def setup_logging(config_dir: Path, debug: bool = False):
    """Setup logging for vibrakit"""
    root_logger = logging.getLogger('vibrakit')
    root_logger.setLevel(logging.DEBUG)

    level = logging.DEBUG if debug else logging.WARNING

    # Handlers survive repeated CLI invocations in one process; only adjust levels
    if getattr(root_logger, '_vibrakit_configured', False):
        for handler in root_logger.handlers:
            if not isinstance(handler, logging.FileHandler):
                handler.setLevel(level)
                # setStream would flush a stream the previous run may have closed
                handler.stream = sys.stderr  # type: ignore[attr-defined]
        return root_logger

    log_dir = config_dir / "logs"
    log_dir.mkdir(parents=True, exist_ok=True)
    log_file = log_dir / "vibrakit.log"

    # File handler - always detailed
    file_handler = logging.FileHandler(log_file)
    file_handler.setLevel(logging.DEBUG)
    file_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    file_handler.setFormatter(file_formatter)

    # Console handler goes to stderr so reports on stdout stay clean
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_formatter = logging.Formatter('%(levelname)s - %(message)s')
    console_handler.setFormatter(console_formatter)

    root_logger.addHandler(file_handler)
    root_logger.addHandler(console_handler)
    root_logger._vibrakit_configured = True  # type: ignore[attr-defined]

    return root_logger


def get_logger(name: str):
    """Get a logger instance"""
    return logging.getLogger(f'vibrakit.{name}')
