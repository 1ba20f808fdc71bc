import logging.config
from typing import Any
from typing import Dict


class DebugOnly(logging.Filter):
    """Pass records below INFO only"""

    def filter(self, record: logging.LogRecord) -> bool:
        return record.levelno < logging.INFO


DEFAULT_LOGGING_CONFIG: Dict[str, Any] = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'brief': {
            'format': '%(message)s',
        },
        'worker': {
            'format': '%(asctime)s %(processName)s %(levelname)s %(message)s',
        },
    },
    'filters': {
        'debug_only': {
            '()': DebugOnly,
        },
    },
    'handlers': {
        'default': {
            'class': 'logging.StreamHandler',
            'formatter': 'brief',
            'level': 'INFO',
            'stream': 'ext://sys.stdout',
        },
        # per-replica detail, reached only once the package logger is lowered to DEBUG
        'debug': {
            'class': 'logging.StreamHandler',
            'formatter': 'worker',
            'filters': ['debug_only'],
            'level': 'DEBUG',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        'pyrwre': {
            'level': 'INFO',
        },
    },
    'root': {
        'handlers': ['default', 'debug'],
        'level': 'WARNING',
    },
}

logger = logging.getLogger('pyrwre')
