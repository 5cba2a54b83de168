"""Tests for app/api/v1/endpoints module"""

