"""qalt: exact Kauffman bracket and Jones invariants, signed Tait graphs,
tangle extensions, and quasi-alternating certification for link diagrams."""

__version__ = "0.1.0"
