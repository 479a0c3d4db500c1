"""ipslab - exact desk-scale workbench for IPS lower-bound ingredients."""

__version__ = "0.1.0"
