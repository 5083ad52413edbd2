"""Run configuration: resource guards and search knobs.

Every guard is echoed verbatim into certificates so that a run can be
reproduced byte for byte from its certificate header.
"""

from __future__ import annotations

import dataclasses
import os


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Engine knobs.

    max_enum_edges: largest drawn-edge count a single enumeration root
        will accept.
    max_oracle_edges: largest edge count the exact oracle accepts.
    max_frontier: hard cap on the number of drawings kept at one search
        level; exceeding it aborts with an inconclusive outcome.
    latent_path_cap: maximum number of internal vertices in a latent path.
    root_strategy: "first" starts Algorithm 1 at part 1; "best" tries all
        rotations of the part sequence and keeps the smallest frontier.
    parallelism: worker count accepted for forward compatibility; the
        current engine explores branches sequentially, which is the
        degenerate schedule the concurrency contract allows.
    automorphism_vertex_guard: largest vertex count automorphism search
        accepts.
    """

    max_enum_edges: int = 24
    max_oracle_edges: int = 18
    max_frontier: int = 200_000
    latent_path_cap: int = 6
    root_strategy: str = "first"
    parallelism: int = 1
    automorphism_vertex_guard: int = 64

    def __post_init__(self):
        for name in (
            "max_enum_edges",
            "max_oracle_edges",
            "max_frontier",
            "latent_path_cap",
            "parallelism",
            "automorphism_vertex_guard",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.root_strategy not in ("first", "best"):
            raise ValueError("root_strategy must be 'first' or 'best'")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        """Build a config, honoring the CROSSBOUND_PARALLELISM override."""
        env = os.environ.get("CROSSBOUND_PARALLELISM")
        if env is not None and "parallelism" not in overrides:
            overrides["parallelism"] = int(env)
        return cls(**overrides)

    def echo_items(self):
        """Stable key=value pairs recorded in certificates."""
        return tuple(
            (field.name, getattr(self, field.name))
            for field in dataclasses.fields(self)
        )


DEFAULT_CONFIG = RunConfig()
