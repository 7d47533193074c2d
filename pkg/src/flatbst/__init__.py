from flatbst.types import NONE, BuildOptions, BuildStats, Provenance, TreeArrays
from flatbst.bitops import msb, pow2_trailing, root_index, trailing_ones_level
from flatbst.builder import build, build_perfect, parent_rule
from flatbst.completion import make_complete, right_subtree_levels
from flatbst.implicit import KeySequence, SearchOutcome, implicit_left, implicit_right, search, search_tree
from flatbst.parallel import build_parallel
from flatbst.oracle import LevelProfile, build_halving, height_of, lemma1_missing_edges, level_profile, validate
from flatbst.schemas import ValidationReport
