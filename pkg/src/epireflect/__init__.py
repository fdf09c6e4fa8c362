"""Epireflections of finite topological spaces and finite topological algebras."""
from .errors import *  # noqa: F401,F403
from .partition import Partition, all_partitions, bell
from .fintop import (CMap, FinSpace, cross_product, discrete, enumerate_cmaps,
                     enumerate_preorders, enumerate_topologies, indiscrete, is_homeomorphic,
                     new_space, product, quotient, sierpinski, subspace)
from .axioms import BUILTINS, CategorySpec, generated_class
from .reflector import (coincide, coincide_criterion, product_preservation, preserves_subspace,
                        reflect, verify_universal_property)
from .finalg import Signature, Structure, all_congruences, group_signature, quotient_structure
from .topalg import MaltsevWitness, TopStructure, is_maltsev

__version__ = "0.1.0"
