"""Finite frames, sublocale coframes, and the subcolocale adjunction."""

from .config import DEFAULT_LIMITS, Limits
from .errors import NotAFrame, NotACoframe, NotProper, SizeLimit
from .lattice import (CoframeWitness, ElementFamily, FrameWitness, Lattice,
                      big_meet, big_join, coframe_difference, covered_primes,
                      covers, heyting, is_complemented, is_exact_meet,
                      is_linear, is_strongly_exact_meet, join_irreducibles,
                      primes, pseudocomplement, supplement)
from .latfile import parse_lattice, serialize_lattice
from .corpus import (CorpusFrame, CorpusSpec, all_topologies, gen_boolean,
                     gen_chain, gen_diamond, gen_downsets_of_poset,
                     gen_opens_of_topology, gen_product, sample_topologies,
                     standard_corpus)
from .sublocales import (FilterSet, Precongruence, Sublocale, SublocaleCoframe,
                         b_sublocale, closed_sublocale, enumerate_sublocales,
                         exact_filters, fit, fitted_subcoframe,
                         is_exact_sublocale, is_precongruence, is_sublocale,
                         ker, nucleus, open_sublocale, phi,
                         precongruence_to_sublocale, strongly_exact_filters,
                         sublocale_join, sublocale_to_precongruence)
from .subcolocales import (Subcolocale, adjunction_check, conucleus, delta,
                           enumerate_subcolocales, fit_image,
                           generated_subcolocale, is_codense, is_essential,
                           is_proper, is_subcolocale, join_closure, leq_f,
                           saturated_elements, sb, se, sigma, ssp)
from .correspondence import (FrameMap, LiftVerdict, RaneyExtension, SZDBF,
                             downset_frame, extend_to_coframe_map,
                             is_exact_map, is_smooth, raney_lift_check,
                             right_adjoint_image, subcolocale_lattice,
                             sublocale_frame, surjection_of, szdbf_lift_check,
                             to_raney, to_szdbf)
from .report import (adjunction_suite, correspondence_suite, frame_report,
                     laws_suite, run_suite)

__version__ = "0.1.0"
