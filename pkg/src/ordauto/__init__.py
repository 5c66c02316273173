"""Automata on finite transfinite words of length omega^n."""
