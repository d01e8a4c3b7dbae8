//! The lattice L of level N inside the trace-zero 2x2 rational matrices, its discriminant group
//! Z/2N, Heegner class counts, cusp data and the Weil representation.

pub mod cosets;
pub mod cusps;
pub mod forms;
pub mod vector;
pub mod weil;

pub use cosets::{coset_index, gamma0_coset_reps, Mat};
pub use cusps::{alpha_closed_form, alpha_count, cusp_class, cusps, CuspData};
pub use forms::{class_label, heegner_degree, reduced_forms, ClassLabel};
pub use vector::{enumerate_vectors, LatticeVector};
pub use weil::{gamma_to_word, Letter, WeilRep, Word};
