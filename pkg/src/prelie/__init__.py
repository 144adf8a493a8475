"""Pre-Lie algebras: invariants, degeneration witnesses and orbit closures."""
