"""Unit tests for krank."""
