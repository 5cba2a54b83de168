"""RRULES Bench - rule induction toolkit, benchmark harness and API"""

__version__ = "0.1.0"
