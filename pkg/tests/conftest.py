import numpy as np
import pytest

from setdelta import (
    LcpIndex,
    build_concat_text,
    build_indel_store,
    build_insertion_graph,
    build_insertion_store,
    build_symdiff_graph,
    family_from_ints,
    parse_and_map,
)

F1_TEXT = "1 2\n1 2 3\n2 3 4\n"


@pytest.fixture(scope="session")
def f1():
    return parse_and_map(F1_TEXT)


@pytest.fixture(scope="session")
def f1_idx(f1):
    return LcpIndex(build_concat_text(f1))


@pytest.fixture(scope="session")
def f1_sym(f1, f1_idx):
    return build_symdiff_graph(f1, f1_idx)


@pytest.fixture(scope="session")
def f1_ins(f1, f1_idx):
    return build_insertion_graph(f1, f1_idx)


@pytest.fixture(scope="session")
def f1_sym_store(f1, f1_sym):
    return build_indel_store(f1_sym, f1)


@pytest.fixture(scope="session")
def f1_ins_store(f1, f1_ins):
    return build_insertion_store(f1_ins, f1)


def make_family(*int_sets):
    return family_from_ints(list(int_sets))


def indexed(fam):
    return LcpIndex(build_concat_text(fam))


def random_labeled_tree(rng: np.random.Generator, n: int, labels: int):
    """Random parents-precede-children tree with labels in [1..labels]."""
    parent = [-1]
    label = [0]
    for v in range(1, n):
        parent.append(int(rng.integers(0, v)))
        label.append(int(rng.integers(1, labels + 1)))
    from setdelta import LabeledTree

    return LabeledTree(parent, label)
