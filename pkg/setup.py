"""
Minimal setup.py for backward compatibility.
All configuration is in pyproject.toml.
"""
from setuptools import setup

setup()
