from .field import FieldParams, FieldElement, make_field, parse_field_spec, primitive_element, enumerate_elements, trace
from .eisenstein import EisensteinInt, SQRT_NEG3, UNITS, conjugate_pair_sum, from_counts, zeta_power
from .spectrum import TernaryFunction, SpectrumProfile, analyze, parse_function_spec, walsh_spectrum, walsh_transform
from .charsums import PairContext, TraceContext, LemmaRow, sweep
from .codes import LinearCode, WeightDistribution, sphere_packing_max_d, classify
from .constructions import DefiningSet, PredictedCode, build_defining_set, augmented_generator, predict, build_lcd, lift_generator, verify_construction
from .catalog import EXAMPLES
from .visualizer import CodeVisualizer

__all__ = [
    'FieldParams',
    'FieldElement',
    'make_field',
    'parse_field_spec',
    'primitive_element',
    'enumerate_elements',
    'trace',
    'EisensteinInt',
    'SQRT_NEG3',
    'UNITS',
    'conjugate_pair_sum',
    'from_counts',
    'zeta_power',
    'TernaryFunction',
    'SpectrumProfile',
    'analyze',
    'parse_function_spec',
    'walsh_spectrum',
    'walsh_transform',
    'PairContext',
    'TraceContext',
    'LemmaRow',
    'sweep',
    'LinearCode',
    'WeightDistribution',
    'sphere_packing_max_d',
    'classify',
    'DefiningSet',
    'PredictedCode',
    'build_defining_set',
    'augmented_generator',
    'predict',
    'build_lcd',
    'lift_generator',
    'verify_construction',
    'EXAMPLES',
    'CodeVisualizer'
]

__version__ = '1.0.0'
