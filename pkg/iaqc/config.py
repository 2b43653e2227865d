"""Configuration management for the simulator."""
import os
from dotenv import load_dotenv

# Load environment variables from .env file if present
load_dotenv()


class Config:
    """Base configuration."""
    DEBUG = False
    TESTING = False

    # Logging
    LOG_LEVEL = os.getenv('IAQC_LOG_LEVEL', 'INFO')

    # Output
    OUTPUT_DIR = os.getenv('IAQC_OUTPUT_DIR', 'out')
    CSV_SIGNIFICANT_DIGITS = int(os.getenv('IAQC_CSV_SIGNIFICANT_DIGITS', 9))

    # Execution
    THREADS = int(os.getenv('IAQC_THREADS', 1))

    # Statistics
    CONFIDENCE_Z = float(os.getenv('IAQC_CONFIDENCE_Z', 1.96))
    IDENTIFICATION_THRESHOLD = float(os.getenv('IAQC_IDENTIFICATION_THRESHOLD', 0.95))


class DevelopmentConfig(Config):
    """Development configuration."""
    DEBUG = True


class TestingConfig(Config):
    """Testing configuration."""
    DEBUG = True
    TESTING = True
    LOG_LEVEL = 'WARNING'


class ProductionConfig(Config):
    """Production configuration."""
    THREADS = int(os.getenv('IAQC_THREADS', os.cpu_count() or 1))


# Map config name to config class
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}


def get_config(config_name=None):
    """Return the appropriate configuration object based on the environment."""
    config_name = config_name or os.getenv('IAQC_ENV', 'default')
    return config.get(config_name, config['default'])
