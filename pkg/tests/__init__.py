"""Tests for InvestorMate."""
