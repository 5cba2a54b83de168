"""Tests for app/api module"""

