"""Tests package for hsbratteli."""
