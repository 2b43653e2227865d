"""Services package: configuration files and result output."""
