"""Bell polynomials, Artin-Schreier traces and quadratic class numbers."""
