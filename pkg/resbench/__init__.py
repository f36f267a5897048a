"""Benchmark of delay-line, NARX and echo state network models on Henon and NARMA tasks."""
