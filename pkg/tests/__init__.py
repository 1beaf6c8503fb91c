"""Test package for OSP Marketing Tools."""
