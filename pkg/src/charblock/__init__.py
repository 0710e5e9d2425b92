"""Character tables, p-blocks and decomposition numbers of finite permutation groups."""

from .blocks import BrauerTable, block_partition, decomposition_and_cartan
from .chartab import CharacterTable, table_from_group
from .cyclo import Cyclo, E, format_cyclo, parse_cyclo
from .io import parse_table_file, write_table_file
from .permgrp import Perm, PermGroup, conjugacy_data, enumerate_group, read_group_file

__version__ = "0.1.0"

__all__ = [
    "BrauerTable", "CharacterTable", "Cyclo", "E", "Perm", "PermGroup",
    "block_partition", "conjugacy_data", "decomposition_and_cartan", "enumerate_group",
    "format_cyclo", "parse_cyclo", "parse_table_file", "read_group_file",
    "table_from_group", "write_table_file",
]
