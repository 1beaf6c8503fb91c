"""Unit tests for OSP Marketing Tools."""
