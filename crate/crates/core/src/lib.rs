pub mod budget;
pub mod error;
pub mod lattice;
pub mod sup_map;

pub use budget::Budget;
pub use error::{BudgetExceeded, Error, Result};
pub use lattice::{Elem, FiniteLattice};
pub use sup_map::{enumerate_sup_maps, SupMap};
pub mod quantale;
pub use quantale::{Quantale, SidedSets};
pub mod endo;
pub mod ring;
pub use endo::EndoQuantale;
pub use ring::sub_ring_quantale;
pub mod tensor;
pub use tensor::{tensor_dual_to_endo, BiIdeal, TensorEndoDuality, TensorProduct};
pub mod report;
pub use report::{Check, CheckReport};
pub mod couple;
pub use couple::{identity_couple, product_couple, sub_ideal_couple, zero_couple, Couple, CoupleElem};
pub mod cs;
pub use cs::{cs_couple, CsCouple};
pub mod girard;
pub use girard::{build_g, check_g_of_s, g_of_s, rosenthal, GirardQuantale};
pub mod spectrum;
pub use spectrum::{
    check_girard_sampled, product_algebra_spectrum, subspace_product, trace_perp, MatrixAlgebra, MatrixSubspace,
};
pub mod logic;
pub use logic::{parse, Formula, GirardModel, Valuation};
pub mod format;
pub use format::{emit_couple, emit_girard_quantale, emit_lattice, emit_quantale, parse_couple, parse_definition, parse_lattice, parse_quantale, Definition};
pub mod corpus;
pub use corpus::Builtin;
