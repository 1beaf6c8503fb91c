"""Integration tests for OSP Marketing Tools."""
