from .base import BaseBuilder, BuildRequest, boundary_length
from .cayley import XBuilder, build_x
from .radial import YBuilder, build_y
from .two_ended import CORNER_CASE_ALPHA_ZERO, GammaBuilder, build_x_gamma, interior_edge_pieces
