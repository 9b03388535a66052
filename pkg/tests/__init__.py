"""Test suite for krank."""
