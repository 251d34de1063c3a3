"""Exact computer algebra for polynomial map-germs."""
from .poly import Poly, RingCtx, VectorField, make_ring, parse_poly
from .germ import MapGerm, format_germ, parse_germ
from .gb import BudgetExceeded, SubmoduleRep
from .tangent import codimension, is_stable, open_orbit_test
from .discriminant import DiscriminantData, derlog, verify_liftable
from .unfolding import Unfolding, extend_with_zero, mather_stable_unfolding
from .sections import best_section_codim, vke_codim
from .atlas import classify

__version__ = "0.1.0"
