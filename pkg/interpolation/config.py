from dataclasses import dataclass, field, replace

from django.conf import settings

from tableaux.prover import ProofLimits, ProverPolicy
from tableaux.tableau import F, G, LEAST_CONSTANT, NEAREST, PREFER_F, GroundingPolicy


@dataclass(frozen=True)
class InterpolationConfig:
    """
    Every choice the pipeline makes that the input does not fix. side_policy
    is prefer-F, prefer-G or a mapping from dotted node paths to sides.
    """
    side_policy: object = PREFER_F
    grounding: GroundingPolicy = field(default_factory=GroundingPolicy)
    target_policy: str = NEAREST
    c0_side: str = F
    limits: ProofLimits = field(default_factory=ProofLimits)
    prover: ProverPolicy = field(default_factory=ProverPolicy)
    equality: bool = False
    equality_placement: str = 'auto'
    simplify: bool = True
    verify: bool = False
    truth_table_atoms: int = 20

    def __post_init__(self):
        if self.c0_side not in (F, G):
            raise ValueError(f"c0 side must be F or G, not {self.c0_side!r}")

    @classmethod
    def from_settings(cls, **overrides):
        grounding = getattr(settings, 'IPOL_GROUNDING', LEAST_CONSTANT)
        values = {
            'side_policy': getattr(settings, 'IPOL_SIDE_POLICY', PREFER_F),
            'grounding': GroundingPolicy(grounding),
            'target_policy': getattr(settings, 'IPOL_TARGET_POLICY', NEAREST),
            'c0_side': str(getattr(settings, 'IPOL_C0_SIDE', F)).upper(),
            'limits': ProofLimits.from_settings(),
            'prover': ProverPolicy.from_settings(),
            'equality': getattr(settings, 'IPOL_EQUALITY', False),
            'equality_placement': getattr(settings, 'IPOL_EQUALITY_PLACEMENT', 'auto'),
            'simplify': getattr(settings, 'IPOL_SIMPLIFY', True),
            'verify': getattr(settings, 'IPOL_VERIFY', False),
            'truth_table_atoms': getattr(settings, 'IPOL_TRUTH_TABLE_ATOMS', 20),
        }
        values.update(overrides)
        return cls(**values)

    def with_options(self, **changes):
        return replace(self, **changes)


def resolve_config(config):
    return config if config is not None else InterpolationConfig.from_settings()
