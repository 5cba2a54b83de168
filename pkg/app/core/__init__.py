"""Core module for configuration, logging, errors and bitsets"""
