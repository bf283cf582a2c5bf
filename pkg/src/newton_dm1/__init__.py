"""Specialization chains between minimal DM1 words of Newton polygons."""

from .polygons import (
    NewtonPolygon,
    Segment,
    c_of,
    c_value,
    enumerate_nps,
    is_saturated,
    minimal_word,
    np_eval,
    np_normalize,
    parse_polygon,
    precedes,
)
from .specialization import (
    Chain,
    CaseTag,
    chain_general,
    chain_saturated_two_segment,
    classify_case,
    minus_square_decompose,
    prop3_decompose,
    verify_chain,
)
from .words import (
    b_expansion,
    cycle_decomposition,
    direct_sum,
    dual,
    elementary_moves,
    length_ell,
    leq_oracle,
    minus,
    simple_word,
)

__version__ = "0.1.0"
