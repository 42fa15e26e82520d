"""Exact symbolic toolkit for CR maps between hyperquadrics and Winkelmann hypersurfaces."""
__version__ = "0.1.0"
