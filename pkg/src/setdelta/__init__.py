"""Difference-compressed storage for families of finite sets.

Stores a family in space proportional to how much its sets differ from each
other, while answering membership, access, rank, predecessor and successor on
any stored set in logarithmic time.
"""

from ._kernels import default_backend, get_kernels
from .family import (
    EMPTY_NODE,
    UNIV_NODE,
    ConcatText,
    SetFamily,
    build_concat_text,
    family_from_ints,
    family_from_tokens,
    node_set,
    parse_and_map,
    set_node,
    unmap_element,
)
from .graphs import (
    EdgeBag,
    InsertionGraph,
    SymdiffGraph,
    build_insertion_graph,
    build_symdiff_graph,
    split_two_trees,
)
from .lcp import DONE, DiffIterator, LcpIndex, build_lcp_index, diff_advance, diff_full
from .pathtree import (
    LabeledTree,
    PathHierarchy,
    build_hierarchy,
    label_rank,
    label_select,
    nearest_labeled_ancestor,
    path_count_range,
    path_select,
)
from .store import (
    SetStore,
    StoreKind,
    build_indel_store,
    build_insertion_store,
    deserialize,
    serialize,
)

__version__ = "0.1.0"

__all__ = [
    "ConcatText",
    "DONE",
    "DiffIterator",
    "EMPTY_NODE",
    "EdgeBag",
    "InsertionGraph",
    "LabeledTree",
    "LcpIndex",
    "PathHierarchy",
    "SetFamily",
    "SetStore",
    "StoreKind",
    "SymdiffGraph",
    "UNIV_NODE",
    "build_concat_text",
    "build_hierarchy",
    "build_indel_store",
    "build_lcp_index",
    "build_insertion_graph",
    "build_insertion_store",
    "build_symdiff_graph",
    "default_backend",
    "diff_advance",
    "diff_full",
    "family_from_ints",
    "family_from_tokens",
    "get_kernels",
    "label_rank",
    "label_select",
    "nearest_labeled_ancestor",
    "node_set",
    "parse_and_map",
    "path_count_range",
    "path_select",
    "serialize",
    "deserialize",
    "set_node",
    "split_two_trees",
    "unmap_element",
]
