"""Tests for app/api/v1 module"""

