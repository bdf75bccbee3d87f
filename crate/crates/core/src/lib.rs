//! Chain polynomials of finite posets and geometric lattices, computed
//! exactly, together with the total-nonnegativity and interlacing machinery
//! used to certify that their zeros are real and lie in `[-1, 0]`.

pub mod constructors;
pub mod dsl;
pub mod lattice;
pub mod par;
pub mod poly;
pub mod poset;
pub mod report;
pub mod tn;
pub mod verify;
