"""Tests for app/services module"""

