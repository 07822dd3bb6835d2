"""Measures, class-C computations, the Vershik map and randomised checks."""
