#!/usr/bin/env python3

"""Version information for the pirrssi package."""

__version__ = "0.1.0"
