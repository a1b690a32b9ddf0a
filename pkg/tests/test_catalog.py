"""Packaged definition files describe the same groups as the catalog constructors."""

from __future__ import annotations

from importlib import resources

import pytest

from carnot_sard import catalog
from carnot_sard.filiform import FiliformSpec, build_filiform
from carnot_sard.formats import parse_control, parse_group


def read(kind, name):
    return (resources.files("carnot_sard") / kind / f"{name}.json").read_text()


@pytest.mark.parametrize("name,expected", [
    ("heisenberg-1", catalog.heisenberg(1).algebra),
    ("heisenberg-1-W", catalog.heisenberg(1).algebra),
    ("heisenberg-2", catalog.heisenberg(2).algebra),
    ("heisenberg-3", catalog.heisenberg(3).algebra),
    ("full-support-pencil", catalog.full_support_pencil().algebra),
    ("simple-line-pencil", catalog.simple_line_pencil().algebra),
    ("engel", catalog.engel()),
    ("filiform-I-4", build_filiform(FiliformSpec("I", 4))),
    ("filiform-II-5", build_filiform(FiliformSpec("II", 5))),
    ("filiform-II-7", build_filiform(FiliformSpec("II", 7))),
])
def test_group_files(name, expected):
    assert parse_group(read("groups", name)).algebra == expected


def test_constants_file_matches_quotient():
    g = parse_group(read("groups", "simple-line-constants"))
    assert g.quotient.Wperp2 == catalog.simple_line_pencil().Wperp2


@pytest.mark.parametrize("name,rank", [("staircase-a-1-3", 2), ("constant-1-1", 2), ("zero-2", 2),
                                       ("zero-4", 4), ("line-3-4", 4)])
def test_control_files(name, rank):
    assert parse_control(read("controls", name), rank).rank == rank


def test_upper_triangular_rejects_small_n():
    with pytest.raises(ValueError):
        catalog.upper_triangular(2)
    with pytest.raises(ValueError):
        catalog.heisenberg(0)
