"""Swarm reinforcement-learning workbench.

Set-invariant policy representations over swarm observation sets, trained
with a from-scratch trust-region optimizer on rendezvous and pursuit-evasion
tasks, with classical consensus and Voronoi controllers as baselines.
"""

from . import baselines, env, experiments, numkit, policy, trpo

__version__ = "0.1.0"

__all__ = ["baselines", "env", "experiments", "numkit", "policy", "trpo", "__version__"]
