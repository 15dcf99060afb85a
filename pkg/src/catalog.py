"""
Built-in reference constructions with their published parameters.

Published values are kept exactly as printed so that the enumerated codes
can be compared against them; several of them do not survive that check.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

try:
    from .constructions import DefiningSet, VerificationReport, build_defining_set, verify_construction
    from .errors import SpecSyntaxError
    from .spectrum import parse_function_spec
except ImportError:
    from constructions import DefiningSet, VerificationReport, build_defining_set, verify_construction
    from errors import SpecSyntaxError
    from spectrum import parse_function_spec

OMEGA = "[0,1,0]"

FG_FIRST = "Tr(2*x^92) @ GF(3^4)"
FG_SECOND = f"Tr({OMEGA}*x^4) @ GF(3^3)"
SYMMETRIC_MIX = f"Tr({OMEGA}^22*x^13 + {OMEGA}^7*x^4 + {OMEGA}*x^2) @ GF(3^3)"
SQUARE_27 = f"Tr({OMEGA}*x^2) @ GF(3^3)"
SQUARE_81 = "Tr([0,1,0,0]*x^2) @ GF(3^4)"


@dataclass(frozen=True)
class CatalogEntry:
    number: int
    title: str
    kind: str
    g: str
    lam: int
    f: Optional[str] = None
    n: Optional[int] = None
    lcd: bool = False
    claim: Dict = field(default_factory=dict)
    note: str = ""

    def build(self, jobs: int = 1) -> DefiningSet:
        g = parse_function_spec(self.g)
        f = parse_function_spec(self.f) if self.f else None
        return build_defining_set(f, g, self.lam, n=self.n, jobs=jobs)

    def run(self, jobs: int = 1, variant: str = "derived") -> VerificationReport:
        return verify_construction(self.build(jobs), lcd=self.lcd, jobs=jobs, reference=self.claim,
                                   variant=variant)


EXAMPLES: Dict[int, CatalogEntry] = {
    1: CatalogEntry(
        1, "fg, even s + k_f + k_g", "fg",
        g=f"Tr({OMEGA}*x^13 + {OMEGA}^7*x^4 + {OMEGA}^7*x^3 + {OMEGA}*x^2) @ GF(3^3)/1+2x+x^3",
        f=FG_FIRST, lam=1,
        claim={"length": 648, "dimension": 8, "min_distance": 486,
               "distribution": {324: 24, 405: 112, 486: 104, 648: 6320}},
        note="g carries a linear term, so it is not symmetric and no weight table applies",
    ),
    2: CatalogEntry(
        2, "fg, odd s + k_f + k_g, lam = 1", "fg", g=FG_SECOND, f=FG_FIRST, lam=1,
        claim={"length": 810, "dimension": 8, "min_distance": 486,
               "distribution": {486: 80, 513: 180, 540: 6048, 567: 160, 594: 90, 810: 2}},
    ),
    3: CatalogEntry(
        3, "fg, odd s + k_f + k_g, lam = 2", "fg", g=SQUARE_27, f=SYMMETRIC_MIX, lam=2,
        claim={"length": 216, "dimension": 7, "min_distance": 126,
               "distribution": {126: 72, 135: 160, 144: 1728, 153: 144, 162: 80, 216: 2}},
        note="the x^13 term vanishes under the trace because its coefficient has trace 0",
    ),
    4: CatalogEntry(
        4, "Tr(x) + g, even m + k_g", "traceg", g=SQUARE_81, n=1, lam=1,
        claim={"length": 81, "dimension": 6, "min_distance": 51,
               "distribution": {51: 324, 54: 240, 60: 162, 81: 2}},
        note="published enumerator corresponds to the opposite Walsh sign",
    ),
    5: CatalogEntry(
        5, "Tr(x) + g, odd m + k_g", "traceg", g=FG_SECOND, n=1, lam=1,
        claim={"length": 27, "dimension": 5, "min_distance": 15,
               "distribution": {15: 54, 18: 132, 21: 54, 27: 2}},
    ),
    6: CatalogEntry(
        6, "LCD lift of entry 3", "fg", g=SQUARE_27, f=SYMMETRIC_MIX, lam=2, lcd=True,
        claim={"lcd": {"length": 223, "dimension": 7, "min_distance": 127, "dual_distance": 3}},
    ),
    7: CatalogEntry(
        7, "LCD lift of entry 4", "traceg", g=SQUARE_81, n=1, lam=1, lcd=True,
        claim={"lcd": {"length": 87, "dimension": 6, "min_distance": 52, "dual_distance": 3}},
        note="the minimum distance of (I | G) depends on the generator basis",
    ),
    8: CatalogEntry(
        8, "LCD lift of entry 5", "traceg", g=FG_SECOND, n=1, lam=1, lcd=True,
        claim={"lcd": {"length": 32, "dimension": 5, "min_distance": 16, "dual_distance": 3}},
        note="the minimum distance of (I | G) depends on the generator basis",
    ),
}


def get_example(number: int) -> CatalogEntry:
    if number not in EXAMPLES:
        raise SpecSyntaxError(f"Unknown example {number} (known: {', '.join(map(str, EXAMPLES))})")
    return EXAMPLES[number]


def example_numbers() -> List[int]:
    return sorted(EXAMPLES)
