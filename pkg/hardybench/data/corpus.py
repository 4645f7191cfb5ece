"""
Shipped verification corpus.

Each case fixes a group, a norm, a profile and the exponents of one
inequality. The corpus is the input of the inequality suite and of
``hardybench sweep``; the recorded floors in :mod:`.constants` are
asserted on it.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .constants import asserted_floor
from ..analysis.functionals import evaluate_inequality
from ..analysis.report import DeficitReport, ExponentParams, Inequality
from ..core.group import GroupSpec, QuasiNormSpec, parse_group, parse_norm
from ..core.profiles import RadialProfile, parse_profile
from ..core.quadrature import QuadratureSpec
from ..utils.exceptions import ValidationError


@dataclass(frozen=True)
class CorpusCase:
    """One corpus entry, in the compact string forms used on the command line."""

    case_id: str
    inequality: str
    group: str
    profile: str
    norm: Optional[str] = None
    params: Dict[str, float] = field(default_factory=dict)

    def build(self) -> Tuple[GroupSpec, QuasiNormSpec, RadialProfile]:
        group = parse_group(self.group)
        return group, parse_norm(self.norm, group), parse_profile(self.profile)

    def exponent_params(self) -> ExponentParams:
        return ExponentParams(**self.params)

    def floor(self, Q: float) -> Optional[float]:
        params = self.exponent_params()
        return asserted_floor(self.inequality, p=params.p, Q=Q, k=params.k)

    def evaluate(self, quad: Optional[QuadratureSpec] = None) -> DeficitReport:
        """Evaluate the case with its asserted floor."""
        group, norm, profile = self.build()
        report = evaluate_inequality(self.inequality, profile, group, norm,
                                     self.exponent_params(), quad,
                                     floor=self.floor(group.Q))
        report.inputs["case_id"] = self.case_id
        return report

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "inequality": self.inequality,
            "group": self.group,
            "norm": self.norm,
            "profile": self.profile,
            "params": dict(self.params),
        }


def _cases(inequality: str, settings, profiles) -> List[CorpusCase]:
    cases = []
    for group, norm, params, names in settings:
        for name in names:
            tag = ",".join(f"{k}={v:g}" for k, v in sorted(params.items()))
            cases.append(CorpusCase(
                case_id=f"{inequality}/{group}/{norm or 'default'}/{tag}/{name}",
                inequality=inequality, group=group, norm=norm,
                profile=profiles[name], params=dict(params),
            ))
    return cases


_HARDY_PROFILES = {
    "bump4": "bump:m=4,R=1",
    "bump2": "bump:m=2,R=0.5",
    "gaussian": "gaussian:sigma=1",
    "shell": "shell:a=0.5,b=2,m=3",
    "mollified": "mollified-power:gamma=-0.5,eps=0.01,M=10,m=3",
}
_ALL_HARDY = tuple(_HARDY_PROFILES)

HARDY_CASES = _cases("lp-hardy", [
    ("euclidean:3", None, {"p": 2.0}, _ALL_HARDY),
    ("euclidean:4", None, {"p": 2.0}, ("bump4", "gaussian", "shell")),
    ("euclidean:4", None, {"p": 3.0}, ("bump4", "gaussian", "shell")),
    ("heisenberg", "koranyi", {"p": 2.0}, ("bump4", "gaussian", "mollified")),
    ("heisenberg", "koranyi", {"p": 3.0}, ("bump4", "gaussian", "mollified")),
    ("abelian:1,1,2", "power:4", {"p": 2.0}, ("bump2", "gaussian", "shell")),
    ("euclidean:5", None, {"p": 2.0}, ("bump4", "gaussian")),
    ("euclidean:5", None, {"p": 3.0}, ("bump4", "gaussian")),
], _HARDY_PROFILES)

_CKN_PROFILES = {
    "shell-narrow": "shell:a=0.5,b=1,m=3",
    "shell-wide": "shell:a=0.2,b=2,m=4",
    "log-power": "log-power:beta=0.5,R=1,m=2,t_min=0.05,t_max=20,ramp=0.25",
    "mollified": "mollified-power:gamma=-0.5,eps=0.01,M=10,m=3",
}
_ALL_CKN = tuple(_CKN_PROFILES)

CKN_CASES = _cases("ckn", [
    ("euclidean:3", None, {"p": 2.0, "R": 1.0}, _ALL_CKN),
    ("euclidean:3", None, {"p": 3.0, "R": 0.5}, _ALL_CKN),
    ("heisenberg", "koranyi", {"p": 2.0, "R": 1.0}, _ALL_CKN),
    ("heisenberg", "koranyi", {"p": 3.0, "R": 2.0}, _ALL_CKN),
    ("euclidean:2", None, {"p": 2.0, "R": 1.0}, _ALL_CKN),
    ("abelian:1,1,2", "power:4", {"p": 2.0, "R": 0.5}, ("shell-narrow", "log-power")),
], _CKN_PROFILES)

_CRITICAL_PROFILES = {
    "bump-half": "bump:m=4,R=0.5",
    "bump-inner": "bump:m=2,R=0.9",
    "bump-outer": "bump:m=3,R=0.95",
    "shell-inner": "shell:a=0.1,b=0.6,m=3",
    "shell-outer": "shell:a=0.3,b=0.95,m=4",
    "mollified": "mollified-power:gamma=0.5,eps=0.01,M=0.8,m=3",
}
_ALL_CRITICAL = tuple(_CRITICAL_PROFILES)

CRITICAL_CASES = _cases("critical-hardy", [
    ("euclidean:2", None, {"R": 1.0}, _ALL_CRITICAL),
    ("euclidean:3", None, {"R": 1.0}, _ALL_CRITICAL),
    ("heisenberg", "koranyi", {"R": 1.0}, _ALL_CRITICAL),
    ("euclidean:4", None, {"R": 1.0}, _ALL_CRITICAL),
], _CRITICAL_PROFILES)

_RADIAL_PROFILES = {
    "bump4": "bump:m=4,R=1",
    "bump2": "bump:m=2,R=0.5",
    "bump3": "bump:m=3,R=0.8",
    "bump6": "bump:m=6,R=1",
}
_ALL_RADIAL = tuple(_RADIAL_PROFILES)
_THREE_RADIAL = ("bump4", "bump2", "bump3")

RADIAL_IMPROVED_CASES = _cases("radial-improved", [
    ("euclidean:3", None, {"q": 1.0, "L": 0.0, "R": 1.0}, _ALL_RADIAL),
    ("euclidean:3", None, {"q": 1.2, "L": -0.5, "R": 1.0}, _ALL_RADIAL),
    ("heisenberg", "koranyi", {"q": 2.0, "L": 0.0, "R": 1.0}, _THREE_RADIAL),
    ("heisenberg", "koranyi", {"q": 4.0 / 3.0, "L": 0.0, "R": 1.0}, _THREE_RADIAL),
    ("heisenberg", "koranyi", {"q": 2.0, "L": 0.5, "R": 1.0}, _THREE_RADIAL),
    ("heisenberg", "koranyi", {"q": 3.0, "L": -0.5, "R": 1.0}, _THREE_RADIAL),
    ("euclidean:5", None, {"q": 2.0, "L": 1.0, "R": 1.0}, _ALL_RADIAL),
], _RADIAL_PROFILES)

_RELLICH_PROFILES = {
    "gaussian": "gaussian:sigma=1",
    "gaussian-narrow": "gaussian:sigma=0.5",
    "bump4": "bump:m=4,R=1",
    "bump3": "bump:m=3,R=2",
    "shell": "shell:a=0.5,b=1.5,m=4",
}
_ALL_RELLICH = tuple(_RELLICH_PROFILES)

RELLICH_CASES = _cases("rellich", [
    ("euclidean:5", None, {"k": 2, "p": 2.0}, _ALL_RELLICH),
    ("euclidean:6", None, {"k": 2, "p": 2.0}, _ALL_RELLICH),
    ("euclidean:7", None, {"k": 2, "p": 2.0}, _ALL_RELLICH),
    ("abelian:1,2,2", "power:4", {"k": 2, "p": 2.0}, _ALL_RELLICH),
    ("abelian:2,2,2", "power:4", {"k": 2, "p": 2.0}, _ALL_RELLICH),
], _RELLICH_PROFILES)

# One profile per parametric family, used by the pointwise identity checks.
CATALOG_PROFILES = (
    "bump:m=4,R=1",
    "gaussian:sigma=1",
    "shell:a=0.5,b=1.5,m=4",
    "mollified-power:gamma=-1,eps=0.01,M=100,m=2",
    "log-power:beta=0.5,R=1,m=2,t_min=0.05,t_max=20,ramp=0.25",
)

CORPUS: Dict[str, List[CorpusCase]] = {
    Inequality.LP_HARDY.value: HARDY_CASES,
    Inequality.CKN.value: CKN_CASES,
    Inequality.CRITICAL_HARDY.value: CRITICAL_CASES,
    Inequality.RADIAL_IMPROVED.value: RADIAL_IMPROVED_CASES,
    Inequality.RELLICH.value: RELLICH_CASES,
}


def get_corpus(inequality: str) -> List[CorpusCase]:
    """
    Shipped cases of one inequality.

    Raises:
        ValidationError: If the inequality has no corpus
    """
    key = Inequality.parse(inequality).value
    if key not in CORPUS:
        raise ValidationError(f"No corpus for '{key}'. Available: {sorted(CORPUS)}")
    return list(CORPUS[key])


def get_case(case_id: str) -> CorpusCase:
    """Look a case up by its id."""
    for cases in CORPUS.values():
        for case in cases:
            if case.case_id == case_id:
                return case
    raise ValidationError(f"Unknown corpus case '{case_id}'")
