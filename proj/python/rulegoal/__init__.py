"""Interpretable hierarchical agent: laws, policies and subgoals mined from transitions."""

from ._rulegoal import (
    Buffer,
    BufferFileError,
    ConfigFileError,
    GridWorld,
    NotationError,
    mine_laws,
    mine_policies,
    policy_fitness,
    resolved_config,
    rule_probability,
    run_episode,
)

__all__ = [
    "Buffer",
    "BufferFileError",
    "ConfigFileError",
    "GridWorld",
    "NotationError",
    "mine_laws",
    "mine_policies",
    "policy_fitness",
    "resolved_config",
    "rule_probability",
    "run_episode",
]
