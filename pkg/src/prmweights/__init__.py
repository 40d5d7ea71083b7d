"""Reed-Muller codes over GF(q): point counts, weight spectra and extremal hypersurfaces."""

__version__ = "0.1.0"
