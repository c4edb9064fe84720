"""Tests for docmaker."""
