"""Generalized oscillator algebras from orthogonal-polynomial recurrences."""
