//! Exact computations for linearized Legendrian contact homology.
//!
//! Graded DGAs over `Z`, `Q` and `Z/m`, augmentation enumeration over finite
//! fields, linearized complexes and their homology, the two-copy duality
//! complex, front spinning, and the dimension-level consequences of duality.

pub mod augmentation;
pub mod catalog;
pub mod complex;
pub mod dga;
pub mod duality;
pub mod error;
pub mod grading;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod ring;
pub mod smith;
pub mod spinning;
pub mod text;
pub mod two_copy;

pub use augmentation::{enumerate_augmentations, linearize, Augmentation};
pub use complex::{mapping_cone, poincare_chekanov, BasedChainComplex, HomologyProfile};
pub use dga::{Dga, DgaBuilder, Generator, GeneratorTable};
pub use duality::{arnold_check, feasibility_solve, solve_poincare, sphere_duality_check, DualityInstance};
pub use error::{Error, Result};
pub use grading::{Degree, GradingGroup};
pub use laurent::LaurentPoly;
pub use matrix::Matrix;
pub use poly::{NoncommPoly, Word};
pub use ring::{CoefficientRing, Scalar};
pub use spinning::{kunneth_check, spin_complex};
pub use two_copy::{duality_check, MorseComplex, TwoCopyData};
