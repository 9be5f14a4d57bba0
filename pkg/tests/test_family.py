import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setdelta import build_concat_text, family_from_ints, parse_and_map, unmap_element


def test_parse_maps_tokens_to_dense_ids():
    fam = parse_and_map("5 9\n9 5 12\n")
    assert [s.tolist() for s in fam.sets] == [[1, 2], [1, 2, 3]]
    assert fam.u == 3
    assert fam.tokens == ["5", "9", "12"]
    assert fam.numeric


def test_parse_singleton():
    fam = parse_and_map("7\n")
    assert [s.tolist() for s in fam.sets] == [[1]]
    assert fam.u == 1 and fam.n == 1


def test_parse_running_example(f1):
    assert f1.u == 4 and f1.n == 8 and f1.s == 3
    assert [s.tolist() for s in f1.sets] == [[1, 2], [1, 2, 3], [2, 3, 4]]


def test_parse_comments_tabs_and_duplicate_tokens():
    fam = parse_and_map("# heading\n3\t1 1\n# tail\n2 2\n")
    assert [s.tolist() for s in fam.sets] == [[1, 3], [2]]


def test_parse_lexicographic_fallback():
    fam = parse_and_map("b a\n10 a\n")
    # '10' does not make everything numeric: lexicographic order
    assert fam.tokens == ["10", "a", "b"]
    assert not fam.numeric


def test_parse_numeric_order_not_lexicographic():
    fam = parse_and_map("10 2\n")
    assert fam.tokens == ["2", "10"]


def test_parse_errors():
    with pytest.raises(ValueError, match="empty family"):
        parse_and_map("")
    with pytest.raises(ValueError, match="empty family"):
        parse_and_map("# only a comment\n")
    with pytest.raises(ValueError, match="empty set not allowed in input"):
        parse_and_map("1 2\n\n3\n")


def test_duplicate_sets_are_kept():
    fam = parse_and_map("1 2\n1 2\n")
    assert fam.s == 2
    assert fam.sets[0].tolist() == fam.sets[1].tolist()


def test_unmap_examples(f1):
    fam = parse_and_map("5 9\n9 5 12\n")
    assert unmap_element(fam, 3) == "12"
    assert unmap_element(f1, 1) == "1"
    with pytest.raises(ValueError):
        unmap_element(f1, 5)
    with pytest.raises(ValueError):
        unmap_element(f1, 0)


def test_unmap_roundtrip(f1):
    for e in range(1, f1.u + 1):
        assert f1.id_of(f1.token_of(e)) == e


def test_concat_text_running_example(f1):
    ct = build_concat_text(f1)
    assert ct.text.tolist() == [1, 2, 5, 1, 2, 3, 6, 2, 3, 4, 7]
    assert ct.starts.tolist() == [1, 4, 8]
    assert ct.n == f1.n + f1.s


def test_concat_text_single_set():
    ct = build_concat_text(family_from_ints([[1]]))
    assert ct.text.tolist() == [1, 2]


def test_concat_text_duplicate_sets_distinct_terminators():
    ct = build_concat_text(family_from_ints([[1, 2], [1, 2]]))
    assert ct.text.tolist() == [1, 2, 3, 1, 2, 4]
    terms = ct.text[ct.text > ct.u]
    assert len(set(terms.tolist())) == len(terms)


def test_empty_family_constructible_via_api():
    fam = family_from_ints([])
    assert fam.s == 0 and fam.u == 0 and fam.n == 0
    assert build_concat_text(fam).n == 0


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=1, max_value=40), min_size=1, max_size=12),
        min_size=1,
        max_size=8,
    )
)
def test_mapping_preserves_contents_and_text_splits_back(raw):
    fam = family_from_ints(raw)
    # unmapping restores the original sets (as value sets)
    for orig, mapped in zip(raw, fam.sets):
        assert sorted(set(orig)) == sorted(int(fam.token_of(int(e))) for e in mapped)
    # splitting the text at terminator values reproduces the family
    ct = build_concat_text(fam)
    rebuilt, cur = [], []
    for v in ct.text.tolist():
        if v > fam.u:
            rebuilt.append(cur)
            cur = []
        else:
            cur.append(v)
    assert rebuilt == [s.tolist() for s in fam.sets]
