"""Tests for dkk-lab."""
