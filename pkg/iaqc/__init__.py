"""Photon-level simulator of the three-stage protocol and its intensity-aware variant."""
import logging

from iaqc.config import get_config

__version__ = '1.0.0'

LOG_FORMAT = '%(asctime)s [%(levelname)s] [%(name)s] %(message)s'


def create_app(config_name=None, log_level=None):
    """Load configuration and set up logging.

    Args:
        config_name: 'development', 'testing' or 'production'; IAQC_ENV by default
        log_level: overrides the configured LOG_LEVEL

    Returns:
        The selected Config class
    """
    app_config = get_config(config_name)
    level = (log_level or app_config.LOG_LEVEL).upper()
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
    logging.getLogger(__name__).debug(f"iaqc {__version__} configured ({app_config.__name__}, level={level})")
    return app_config
