"""Ray class groups of real multiquadratic fields and the density of primes with trivial quotient."""

__version__ = "0.1.0"
