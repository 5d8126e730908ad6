# 可定向 Wicks 形式工具包
# 提供校验、亏格、枚举、构造、表示计数与计数界

from .bounds import (
    BoundCheck,
    LogBound,
    check_bound,
    formulas,
    minimal_threshold,
    robbins_log_factorial,
)
from .construct import (
    ConstructionResult,
    Coloring,
    SquareFreeResult,
    build_v,
    build_z,
    check_v_properties,
    color_vertices,
    mirror_triple_free,
)
from .enumeration import Catalog, CatalogStore, catalog_io, enumerate_wicks
from .errors import WicksError
from .represent import (
    Representation,
    Substitution,
    count_representations,
    find_representations,
    genus_of_word,
)
from .surface import (
    EmbeddedGraph,
    GluingStructure,
    ValidationReport,
    WicksForm,
    canonical_form,
    glue,
    topological_genus,
    validate_wicks,
    wicks_form,
)
from .words import (
    CyclicWord,
    cyclic_factors,
    free_reduce,
    is_cyclically_reduced,
    square_free_status,
    thue_word,
)

__version__ = "1.0.0"

__all__ = [
    "BoundCheck",
    "Catalog",
    "CatalogStore",
    "Coloring",
    "ConstructionResult",
    "CyclicWord",
    "EmbeddedGraph",
    "GluingStructure",
    "LogBound",
    "Representation",
    "SquareFreeResult",
    "Substitution",
    "ValidationReport",
    "WicksError",
    "WicksForm",
    "build_v",
    "build_z",
    "canonical_form",
    "catalog_io",
    "check_bound",
    "check_v_properties",
    "color_vertices",
    "count_representations",
    "cyclic_factors",
    "enumerate_wicks",
    "find_representations",
    "formulas",
    "free_reduce",
    "genus_of_word",
    "glue",
    "is_cyclically_reduced",
    "minimal_threshold",
    "mirror_triple_free",
    "robbins_log_factorial",
    "square_free_status",
    "thue_word",
    "topological_genus",
    "validate_wicks",
    "wicks_form",
]
