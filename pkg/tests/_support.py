"""Shared loaders for the bundled golden groups and tables."""

import functools
from importlib import resources

from charblock import chartab, io
from charblock.permgrp import read_group_file, subgroup_from_elements

DATA = resources.files("charblock") / "data"

GOLDEN = ["s3", "a4", "s4", "sl2_3", "a5", "psl2_7"]
BRAUER_PRIMES = {
    "s3": [2, 3], "a4": [2, 3], "s4": [2, 3], "sl2_3": [2, 3],
    "a5": [2, 3, 5], "psl2_7": [2, 3, 7],
}
# (group, subgroup file) pairs shipped with the package
EMBEDDINGS = [
    ("s3", "a3_in_s3"), ("s3", "c2_in_s3"), ("a4", "v4_in_a4"), ("a4", "c3_in_a4"),
    ("s4", "s3_in_s4"), ("s4", "a4_in_s4"), ("a5", "a4_in_a5"),
]


@functools.lru_cache(maxsize=None)
def group(name):
    return read_group_file(DATA / "groups" / f"{name}.grp", name)


@functools.lru_cache(maxsize=None)
def computed(name):
    """(G, T, cc) with T computed from the permutation group."""
    G = group(name)
    T, cc = chartab.table_from_group(G, name=name)
    return G, T, cc


def golden(name):
    return io.parse_table_file(DATA / "tables" / f"{name}.json")


def brauer(name, p):
    return io.parse_table_file(DATA / "brauer" / f"{name}_{p}.json")


@functools.lru_cache(maxsize=None)
def embedded(gname, hname):
    """(G, T, cc, H, HT, Hcc) with H realised inside G."""
    G, T, cc = computed(gname)
    H = subgroup_from_elements(G, group(hname).elements, name=hname)
    HT, Hcc = chartab.table_from_group(H, name=hname)
    return G, T, cc, H, HT, Hcc
