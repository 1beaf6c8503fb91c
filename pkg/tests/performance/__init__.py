"""Performance tests for OSP Marketing Tools."""
