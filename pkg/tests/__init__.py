"""Tests for the walshsum library."""
