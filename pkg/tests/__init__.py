"""Tests for pysilting."""
