"""Test suite for noisy-select."""
