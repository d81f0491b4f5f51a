//! Multipartite pure states: construction, inner products, superposition,
//! single-party reductions, von Neumann entropy and file I/O.

mod entropy;
mod families;
mod io;
mod state;

pub use entropy::{
    density_spectrum, entropy_profile, reduced_density_matrix, shannon_entropy, von_neumann_entropy,
    EntropyProfile, DENSITY_TOL, EIGEN_CLAMP,
};
pub use families::{
    make_state, random_density_matrix, random_state, random_state_with, random_unit_vector,
    random_unitary, StateFamily,
};
pub use io::{read_state, state_from_json, state_to_json, write_state, AmplitudeEntry, StateFile};
pub use state::{
    basis_size, inner_product, superpose, PureState, SuperpositionSpec, DEGENERATE_NORM, DENSE_LIMIT,
    NORM_TOL,
};
