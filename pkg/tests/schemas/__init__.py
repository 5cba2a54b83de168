"""Tests for app/schemas module"""

