"""Benchmark series generators and train/test assembly."""
from .datasets import make_dataset
from .generators import gen_henon, gen_narma, generate, henon_trajectory, narma_response

__all__ = ["make_dataset", "gen_henon", "gen_narma", "generate", "henon_trajectory", "narma_response"]
