"""Path and cubical homology of finite digraphs over the integers.

Core objects: validated digraphs with products, cones and suspensions;
exact integer linear algebra (Smith normal form, saturated lattices);
the allowed-chain complex and path homology; singular cubical homology
with the comparison map into path homology; grid maps with homotopy
certificates and their induced homology classes.
"""

from .digraphs import (
    Digraph,
    DigraphMap,
    LineSpec,
    box_product,
    build_digraph,
    check_digraph_map,
    cone,
    cycle_digraph,
    digraph_from_json,
    digraph_to_json,
    identity_map,
    inclusion_map,
    is_subdigraph,
    make_grid,
    make_line,
    standard_line,
    suspension,
)
from .intlinalg import (
    AbelianGroup,
    IntMatrix,
    Lattice,
    kernel_lattice,
    quotient_group,
    smith_normal_form,
)
from .chains import (
    ChainComplex,
    ChainComplexPair,
    GroupMap,
    HomologyClass,
    homology_of,
    les_connecting_map,
    verify_exactness,
)
from .paths import (  # noqa: E402
    PathChain,
    allowed_paths,
    build_omega_complex,
    path_homology,
    path_suspension_map,
    pushforward,
    regular_boundary,
    suspension_cycle,
)
from .cubes import (  # noqa: E402
    CubicalChain,
    SingularCube,
    comparison_L,
    cubical_boundary,
    cubical_homology,
    cubical_suspension_map,
    enumerate_cubes,
    face,
    iota,
    is_degenerate,
    omega_generator,
)
from .grids import (  # noqa: E402
    CertificateStep,
    GridMap,
    ShrinkingMap,
    concat_mu,
    direct_homotopy,
    extend,
    find_certificate,
    glmy_hurewicz,
    hurewicz_chain,
    hurewicz_class,
    inverse_j,
    loop_h_prime,
    minimal_path,
    subdivide,
    validate_grid_map,
    verify_homotopy_certificate,
    verify_one_step,
)

__version__ = "0.1.0"
