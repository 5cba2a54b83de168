"""Tests for app/core module"""

