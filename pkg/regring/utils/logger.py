import logging
import sys
from datetime import datetime
from pathlib import Path


class ColoredFormatter(logging.Formatter):
    """Custom formatter to add colors to console output"""

    # ANSI color codes
    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
        'RESET': '\033[0m'        # Reset
    }

    def format(self, record):
        # Color a copy so file handlers sharing the record stay plain
        record = logging.makeLogRecord(record.__dict__)
        if record.levelname in self.COLORS:
            record.levelname = f"{self.COLORS[record.levelname]}{record.levelname}{self.COLORS['RESET']}"

        return super().format(record)


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(config):
    """Setup logging for the command line tool.

    Console output goes to stderr: stdout carries the reports and must stay
    byte-deterministic.
    """
    log_level = str(getattr(config, 'LOG_LEVEL', 'INFO')).upper()

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, log_level, logging.INFO))

    # Clear any existing handlers
    root_logger.handlers.clear()

    detailed_formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)
    if getattr(config, 'LOG_COLOR', False):
        console_handler.setFormatter(ColoredFormatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    else:
        console_handler.setFormatter(detailed_formatter)
    root_logger.addHandler(console_handler)

    # File Handler (if enabled and possible)
    if getattr(config, 'LOG_TO_FILE', False):
        try:
            log_dir = Path(getattr(config, 'LOG_DIR', 'logs'))
            log_dir.mkdir(exist_ok=True)

            file_handler = logging.FileHandler(
                log_dir / f'regring_{datetime.now().strftime("%Y%m%d")}.log',
                encoding='utf-8'
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(detailed_formatter)
            root_logger.addHandler(file_handler)

            get_cli_logger().info(f"[+] File logging enabled: {log_dir}/regring_*.log")
        except OSError as e:
            print(f"Warning: Could not setup file logging: {e}", file=sys.stderr)

    logger = logging.getLogger('regring')
    logger.debug("[+] Logging system initialized")
    logger.debug(f"[i] Log level: {log_level}")
    logger.debug(f"[i] Environment: {getattr(config, 'REGRING_ENV', 'unknown')}")
    logger.debug(f"[i] Enumeration budget: {getattr(config, 'ENUM_BUDGET', 'unknown')}")

    return logger


def get_linear_logger():
    """Get a logger for exact linear algebra"""
    return logging.getLogger('regring.linear')


def get_reduction_logger():
    """Get a logger for reduction runs and certificates"""
    return logging.getLogger('regring.reduction')


def get_scan_logger():
    """Get a logger for exhaustive and sampled scans"""
    return logging.getLogger('regring.scan')


def get_laws_logger():
    """Get a logger for the lattice law suites"""
    return logging.getLogger('regring.laws')


def get_cli_logger():
    """Get a logger for the command surface"""
    return logging.getLogger('regring.cli')


def log_verification_failure(what, context, checks=None):
    """Log a failed verification with the equalities that did not hold"""
    logger = get_reduction_logger()
    failed = ", ".join(k for k, v in (checks or {}).items() if not v)
    failed_info = f" | Failed: {failed}" if failed else ""
    logger.warning(f"❌ VERIFICATION FAILED | {what} | Context: {str(context)[:200]}{failed_info}")


def log_scan_summary(name, cases, failures, mode, ring=None):
    """Log the outcome of a scan over elements, pairs or trials"""
    logger = get_scan_logger()
    ring_info = f" | Ring: {ring}" if ring else ""
    if failures:
        logger.warning(f"🔍 SCAN {name} | Mode: {mode} | Cases: {cases} | Failures: {failures}{ring_info}")
    else:
        logger.info(f"🔍 SCAN {name} | Mode: {mode} | Cases: {cases} | OK{ring_info}")


def log_validation_error(field, value, error_msg, command=None):
    """Log validation errors with context"""
    logger = logging.getLogger('regring.validation')
    command_info = f" | Command: {command}" if command else ""
    logger.warning(f"❌ VALIDATION ERROR | Field: {field} | Value: {str(value)[:100]} | Error: {error_msg}{command_info}")
