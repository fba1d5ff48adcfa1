"""Iwasawa-algebra arithmetic, structure invariants of torsion Lambda-modules,
pseudo-isomorphism criteria, and a checker for local hypotheses on newform
twists."""

__version__ = "0.1.0"
