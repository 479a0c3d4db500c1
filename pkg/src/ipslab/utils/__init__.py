"""Utility helpers for ipslab."""
