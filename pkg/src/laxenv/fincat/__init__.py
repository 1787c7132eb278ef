"""Finite categories, functors, transformations and derived constructions."""
from .analysis import (analyze_functor, find_initial_object, find_natural_isomorphism,
                       find_terminal_object, is_conservative, is_essentially_surjective,
                       is_fully_faithful, is_iso_on_objects, is_isomorphism, isomorphism_classes)
from .category import (FinCategory, chain_category, discrete_category, from_graph, monoid_category,
                       pair_id, poset_category, terminal_category, validate_category, walking_arrow,
                       walking_iso)
from .constructions import (Derived, arrow, arrow_functor, comma, construct_derived_category, fiber,
                            full_subcategory, functor_category, functor_category_morphism,
                            functor_category_object, opposite, opposite_functor,
                            opposite_transformation, pairing, postcompose, precompose, product,
                            pullback, pullback_functor, pullback_transformation)
from .enumerate import Search, enumerate, enumerate_functors, enumerate_transformations
from .functor import (CatFunctor, NatTransformation, compose_functors, constant_functor,
                      functor_failures, hcomp, identity_functor, identity_transformation,
                      inverse_transformation, is_identity_transformation, is_invertible,
                      non_invertible_components, transformation_failures, validate_functor,
                      validate_transformation, vcomp, whisker_left, whisker_right)
