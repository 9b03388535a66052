"""End-to-end tests for krank."""
