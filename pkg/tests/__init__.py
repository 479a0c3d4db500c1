"""Test package for ipslab."""
