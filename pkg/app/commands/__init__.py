# app/commands/__init__.py

from . import (
    check_command,
    orbit_command,
    plane_command,
    scott_command,
    selftest_command,
    theta_command,
    wp_command,
    xstar_command,
)

COMMANDS = [
    wp_command,
    orbit_command,
    xstar_command,
    theta_command,
    scott_command,
    check_command,
    plane_command,
    selftest_command,
]

__all__ = ["COMMANDS"]
