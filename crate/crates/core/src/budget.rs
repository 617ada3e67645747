use crate::error::BudgetExceeded;

/// Size limits for the enumerations that grow super-exponentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Candidate count for sup-map enumeration and tautology search.
    pub enumeration: u64,
    /// `|S|·|T|` for tensor products.
    pub tensor_pairs: usize,
    /// Largest base lattice accepted by the endomorphism quantale.
    pub endo_base: usize,
    /// Largest matrix size for spectrum sampling.
    pub matrix_size: usize,
    /// Largest sum of squared block sizes for product algebras.
    pub algebra_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            enumeration: 1_000_000,
            tensor_pairs: 400,
            endo_base: 5,
            matrix_size: 4,
            algebra_dim: 32,
        }
    }
}

impl Budget {
    pub fn check(what: &'static str, needed: u128, limit: u128) -> Result<(), BudgetExceeded> {
        if needed > limit {
            Err(BudgetExceeded {
                what,
                needed,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
