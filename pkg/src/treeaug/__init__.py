"""Distributed tree augmentation over a round-synchronous message-passing
simulator with per-edge token budgets."""

__version__ = "0.1.0"
