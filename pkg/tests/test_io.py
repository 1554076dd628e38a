import pytest

from treeburn.errors import HasCycle, TreeError
from treeburn.generators import random_tree
from treeburn.io import (
    format_edge_list,
    format_sequence,
    parse_edge_list,
    parse_sequence,
    read_edge_list,
    read_sequence,
    to_dot,
    write_edge_list,
    write_sequence,
)


def test_edge_list_roundtrip(tmp_path):
    t = random_tree(25, 1)
    p = tmp_path / "t.el"
    write_edge_list(t, p)
    assert read_edge_list(p).edges == t.edges
    assert p.read_bytes().endswith(b"\n") and b"\r" not in p.read_bytes()


def test_comments_and_blank_lines():
    t = parse_edge_list("# a path\n3\n\n0 1\n# middle\n1 2\n")
    assert t.n == 3 and t.edges == ((0, 1), (1, 2))


def test_malformed():
    with pytest.raises(TreeError):
        parse_edge_list("")
    with pytest.raises(TreeError):
        parse_edge_list("3\n0 1 2\n")
    with pytest.raises(HasCycle):
        parse_edge_list("3\n0 1\n1 2\n2 0\n")


def test_sequence_files(tmp_path):
    p = tmp_path / "s.seq"
    write_sequence([4, 1, 8], p)
    assert p.read_text() == "4\n1\n8\n"
    assert read_sequence(p) == [4, 1, 8]
    assert parse_sequence("# c\n3\n\n2\n") == [3, 2]
    assert format_sequence([]) == ""


def test_dot():
    t = parse_edge_list("3\n0 1\n1 2\n")
    dot = to_dot(t, highlight=[1])
    assert dot.startswith("graph T {") and "0 -- 1;" in dot
    assert dot.count("filled") == 1
    assert format_edge_list(t) == "3\n0 1\n1 2\n"
