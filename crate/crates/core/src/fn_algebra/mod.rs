//! Polynomial functions over F_q, their difference operators, and the
//! structural tests built on them.

mod checks;
mod literal;
mod poly;

pub use checks::{
    alltop_witness, delta_planarity_profile, ea_inequiv_to_cube, is_additive, is_additive_by_table,
    is_additive_permutation, is_affine, is_alltop, is_bijection, is_do_shape, is_permutation,
    is_planar, is_planar_do, permutation_witness, planar_witness, table_planar_witness,
    AlltopWitness, CubeEquivalence, PlanarWitness,
};
pub use poly::{reduce_exponent, FnTable, PolyFn};
