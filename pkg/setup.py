#!/usr/bin/env python3
"""Setup script for the g2kit reproduction driver."""

from setuptools import setup

if __name__ == "__main__":
    setup()
