//! Subspace spectra of finite-dimensional matrix algebras.
//!
//! A subspace of `M_n(ℂ)` is stored as an orthonormal basis of vectorized
//! matrices (column-major) under `⟨A, B⟩ = tr(A*B)`. Products are spans of
//! pairwise products. Negation is the trace pairing complement
//! `a⊥ = {C | tr(AC) = 0 for all A ∈ a}`, and the dualizer is the subspace of
//! trace-zero elements. Block-diagonal algebras `⊕ M_{n_i}` are handled as
//! an ambient subspace of `M_N` with `N = Σ n_i`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::report::CheckReport;

pub type C64 = Complex64;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct MatrixSubspace {
    n: usize,
    /// `n² × dim`, orthonormal columns.
    basis: DMatrix<C64>,
}

fn vectorize(m: &DMatrix<C64>) -> DVector<C64> {
    DVector::from_column_slice(m.as_slice())
}

fn unvectorize(n: usize, v: &[C64]) -> DMatrix<C64> {
    DMatrix::from_column_slice(n, n, v)
}

/// Column-pivoted Householder QR of `m`, returning the unitary factor and
/// the numerical rank (diagonal of `R` above `tol·|R₀₀|`).
fn pivoted_qr(m: DMatrix<C64>, tol: f64) -> (DMatrix<C64>, usize) {
    let qr = m.col_piv_qr();
    let r = qr.r();
    let diagonal: Vec<f64> = (0..r.nrows().min(r.ncols())).map(|i| r[(i, i)].norm()).collect();
    let lead = diagonal.first().copied().unwrap_or(0.0);
    let rank = if lead < tol {
        0
    } else {
        diagonal.iter().take_while(|&&x| x > tol * lead).count()
    };
    (qr.q(), rank)
}

/// Orthonormal basis of the column span.
fn orthonormal_span(rows: usize, columns: DMatrix<C64>, tol: f64) -> DMatrix<C64> {
    if columns.ncols() == 0 {
        return DMatrix::zeros(rows, 0);
    }
    let (q, rank) = pivoted_qr(columns, tol);
    q.columns(0, rank).into_owned()
}

/// Orthonormal basis of `{y | M y = 0}`, the complement of the span of `Mᴴ`.
fn null_space(m: DMatrix<C64>, tol: f64) -> DMatrix<C64> {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    let width = m.nrows().max(cols);
    let padded = m.adjoint().resize(cols, width, C64::new(0.0, 0.0));
    let (q, rank) = pivoted_qr(padded, tol);
    q.columns(rank, cols - rank).into_owned()
}

fn trace(m: &DMatrix<C64>) -> C64 {
    m.diagonal().sum()
}

impl MatrixSubspace {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            basis: DMatrix::zeros(n * n, 0),
        }
    }

    /// All of `M_n`.
    pub fn full(n: usize) -> Self {
        Self {
            n,
            basis: DMatrix::identity(n * n, n * n),
        }
    }

    /// Canonical orthonormal basis of the span of `matrices`.
    pub fn span(n: usize, matrices: &[DMatrix<C64>], tol: f64) -> Result<Self> {
        if let Some(m) = matrices.iter().find(|m| m.shape() != (n, n)) {
            return Err(Error::InvalidArgument(format!(
                "expected {n}×{n} matrices, got {}×{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let mut columns = DMatrix::zeros(n * n, matrices.len());
        for (j, m) in matrices.iter().enumerate() {
            columns.set_column(j, &vectorize(m));
        }
        Ok(Self::from_columns(n, columns, tol))
    }

    /// Span of vectorized matrices given as columns.
    pub fn from_columns(n: usize, columns: DMatrix<C64>, tol: f64) -> Self {
        Self {
            n,
            basis: orthonormal_span(n * n, columns, tol),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<C64> {
        &self.basis
    }

    pub fn basis_matrices(&self) -> Vec<DMatrix<C64>> {
        self.basis
            .column_iter()
            .map(|c| unvectorize(self.n, c.as_slice()))
            .collect()
    }

    /// `‖(I − P)X‖_F` for the columns of `x`, maximized.
    fn projection_residual(&self, x: &DMatrix<C64>) -> f64 {
        if x.ncols() == 0 {
            return 0.0;
        }
        let projected = &self.basis * (self.basis.adjoint() * x);
        (x - projected)
            .column_iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// How far `self` is from lying inside `other`.
    pub fn containment_error(&self, other: &MatrixSubspace) -> f64 {
        other.projection_residual(&self.basis)
    }

    pub fn is_within(&self, other: &MatrixSubspace, tol: f64) -> bool {
        self.containment_error(other) < tol
    }

    /// Mutual projection residual; infinite when the dimensions differ.
    pub fn distance(&self, other: &MatrixSubspace) -> f64 {
        if self.n != other.n || self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.containment_error(other).max(other.containment_error(self))
    }

    /// `‖BᴴB − I‖_max`.
    pub fn gram_error(&self) -> f64 {
        let gram = self.basis.adjoint() * &self.basis;
        let k = gram.nrows();
        (gram - DMatrix::<C64>::identity(k, k))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    fn sum(&self, other: &MatrixSubspace, tol: f64) -> MatrixSubspace {
        let mut columns = DMatrix::zeros(self.n * self.n, self.dim() + other.dim());
        columns.columns_mut(0, self.dim()).copy_from(&self.basis);
        columns.columns_mut(self.dim(), other.dim()).copy_from(&other.basis);
        MatrixSubspace::from_columns(self.n, columns, tol)
    }
}

/// `ab = span{AB | A ∈ a, B ∈ b}`.
pub fn subspace_product(a: &MatrixSubspace, b: &MatrixSubspace, tol: f64) -> Result<MatrixSubspace> {
    if a.n != b.n {
        return Err(Error::InvalidArgument(format!(
            "matrix sizes differ: {} and {}",
            a.n, b.n
        )));
    }
    let n = a.n;
    let (left, right) = (a.basis_matrices(), b.basis_matrices());
    let mut columns = DMatrix::zeros(n * n, left.len() * right.len());
    for (i, x) in left.iter().enumerate() {
        for (j, y) in right.iter().enumerate() {
            columns.set_column(i * right.len() + j, &vectorize(&(x * y)));
        }
    }
    Ok(MatrixSubspace::from_columns(n, columns, tol))
}

/// `⊕ M_{n_i}` inside `M_N`, with its spectrum operations.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    blocks: Vec<usize>,
    size: usize,
    ambient: MatrixSubspace,
    tol: f64,
}

impl MatrixAlgebra {
    /// `M_n(ℂ)`.
    pub fn full(n: usize, tol: f64, budget: &Budget) -> Result<Self> {
        Budget::check("matrix size", n as u128, budget.matrix_size as u128)?;
        Self::block_diagonal(&[n], tol, budget)
    }

    pub fn block_diagonal(blocks: &[usize], tol: f64, budget: &Budget) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidArgument("block sizes must be positive".into()));
        }
        let dim: usize = blocks.iter().map(|b| b * b).sum();
        Budget::check("algebra dimension", dim as u128, budget.algebra_dim as u128)?;
        let size: usize = blocks.iter().sum();
        let mut units = Vec::with_capacity(dim);
        let mut offset = 0;
        for &b in blocks {
            for i in 0..b {
                for j in 0..b {
                    let mut m = DMatrix::zeros(size, size);
                    m[(offset + i, offset + j)] = C64::new(1.0, 0.0);
                    units.push(m);
                }
            }
            offset += b;
        }
        let ambient = MatrixSubspace::span(size, &units, tol)?;
        Ok(Self {
            blocks: blocks.to_vec(),
            size,
            ambient,
            tol,
        })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Matrix size `N` of the enclosing `M_N`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn top(&self) -> MatrixSubspace {
        self.ambient.clone()
    }

    pub fn zero(&self) -> MatrixSubspace {
        MatrixSubspace::zero(self.size)
    }

    /// `e = span{I}`.
    pub fn unit(&self) -> MatrixSubspace {
        MatrixSubspace::span(self.size, &[DMatrix::identity(self.size, self.size)], self.tol)
            .expect("square")
    }

    /// The trace-zero elements, `span{I}⊥`.
    pub fn dualizer(&self) -> MatrixSubspace {
        self.trace_perp(&self.unit())
    }

    pub fn product(&self, a: &MatrixSubspace, b: &MatrixSubspace) -> MatrixSubspace {
        subspace_product(a, b, self.tol).expect("same algebra")
    }

    fn combine(&self, coefficients: DMatrix<C64>) -> MatrixSubspace {
        MatrixSubspace::from_columns(self.size, &self.ambient.basis * coefficients, self.tol)
    }

    /// `{C ∈ A | tr(XC) = 0 for all X ∈ a}`, solved from the trace functionals.
    pub fn trace_perp(&self, a: &MatrixSubspace) -> MatrixSubspace {
        let w = self.ambient.basis_matrices();
        let xs = a.basis_matrices();
        let system = DMatrix::from_fn(xs.len(), w.len(), |i, t| trace(&(&xs[i] * &w[t])));
        self.combine(null_space(system, self.tol))
    }

    /// Largest `c` with `c·a ⊆ b`, or `a·c ⊆ b` when `on_left` is set,
    /// solved as a linear condition on the coefficients of `c`.
    fn residual(&self, a: &MatrixSubspace, b: &MatrixSubspace, on_left: bool) -> MatrixSubspace {
        let w = self.ambient.basis_matrices();
        let xs = a.basis_matrices();
        let nn = self.size * self.size;
        let complement = DMatrix::<C64>::identity(nn, nn) - &b.basis * b.basis.adjoint();
        let mut system = DMatrix::zeros(xs.len() * nn, w.len());
        for (i, x) in xs.iter().enumerate() {
            let mut block = DMatrix::zeros(nn, w.len());
            for (t, wt) in w.iter().enumerate() {
                let product = if on_left { x * wt } else { wt * x };
                block.set_column(t, &vectorize(&product));
            }
            system.rows_mut(i * nn, nn).copy_from(&(&complement * block));
        }
        self.combine(null_space(system, self.tol))
    }

    /// `a → b = ⋁{c | c·a ⊆ b}`.
    pub fn residual_right(&self, a: &MatrixSubspace, b: &MatrixSubspace) -> MatrixSubspace {
        self.residual(a, b, false)
    }

    /// `b ← a = ⋁{c | a·c ⊆ b}`.
    pub fn residual_left(&self, b: &MatrixSubspace, a: &MatrixSubspace) -> MatrixSubspace {
        self.residual(a, b, true)
    }

    /// `(a → d, d ← a)` for the trace-zero dualizer `d`.
    pub fn residual_into_d(&self, a: &MatrixSubspace) -> (MatrixSubspace, MatrixSubspace) {
        let d = self.dualizer();
        (self.residual_right(a, &d), self.residual_left(&d, a))
    }

    pub fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }

    /// A complex-Gaussian element of the algebra.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
        let coefficients = DVector::from_fn(self.dim(), |_, _| Self::gaussian(rng));
        unvectorize(self.size, (&self.ambient.basis * coefficients).as_slice())
    }

    /// A random subspace of the given dimension inside `within`.
    pub fn random_subspace_of(&self, within: &MatrixSubspace, dim: usize, rng: &mut ChaCha8Rng) -> MatrixSubspace {
        let k = dim.min(within.dim());
        let coefficients = DMatrix::from_fn(within.dim(), k, |_, _| Self::gaussian(rng));
        MatrixSubspace::from_columns(self.size, &within.basis * coefficients, self.tol)
    }

    pub fn random_subspace(&self, dim: usize, rng: &mut ChaCha8Rng) -> MatrixSubspace {
        self.random_subspace_of(&self.ambient, dim, rng)
    }
}

/// `M_n`-wide trace complement.
pub fn trace_perp(a: &MatrixSubspace, tol: f64) -> MatrixSubspace {
    let algebra = MatrixAlgebra::block_diagonal(&[a.n()], tol, &Budget {
        algebra_dim: usize::MAX,
        ..Budget::default()
    })
    .expect("positive size");
    algebra.trace_perp(a)
}

/// Accumulates the worst error and first failure of one sampled check.
#[derive(Debug, Clone, Default)]
struct Tally {
    error: f64,
    failure: Option<String>,
}

impl Tally {
    fn error(&mut self, sample: usize, value: f64, tol: f64) {
        let value = if value.is_nan() { f64::INFINITY } else { value };
        if value >= tol && self.failure.is_none() {
            self.failure = Some(format!("sample {sample}: error {value:.3e}"));
        }
        self.error = self.error.max(value);
    }

    fn exact(&mut self, sample: usize, ok: bool, detail: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(format!("sample {sample}: {}", detail()));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.error = self.error.max(other.error);
        self.failure = self.failure.or(other.failure);
        self
    }
}

const CHECKS: [(&str, &str); 11] = [
    ("dimension complement", "dim(a) + dim(a⊥) = dim A"),
    ("double perp", "a⊥⊥ = a"),
    ("trace cyclicity", "tr(AC) = tr(CA)"),
    ("cyclic dualizer", "a·c ⊆ d ⟺ c·a ⊆ d"),
    ("residual into d is the trace complement", "a→d = d←a = a⊥"),
    ("dualizing", "d←(a→d) = (d←a)→d = a"),
    ("unit is neutral", "span{I}·a = a·span{I} = a"),
    ("associativity", "(ab)c = a(bc)"),
    ("perp reverses order", "a ⊆ b ⟹ b⊥ ⊆ a⊥"),
    ("ideal annulators", "r→0 is a left ideal with 0←(r→0) = r, and r⊥ = r→0"),
    ("orthonormal bases", "canonical bases are orthonormal"),
];

fn sample_checks(alg: &MatrixAlgebra, seed: u64, sample: usize) -> Vec<Tally> {
    let tol = alg.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample as u64);
    let m = alg.dim();
    let mut t = vec![Tally::default(); CHECKS.len()];
    let d = alg.dualizer();
    let e = alg.unit();
    let top = alg.top();
    let zero = alg.zero();

    let dim_a = rng.random_range(0..=m);
    let a = alg.random_subspace(dim_a, &mut rng);
    let b = alg.random_subspace(rng.random_range(0..=m), &mut rng);
    let c = alg.random_subspace(rng.random_range(0..=m), &mut rng);
    let perp = alg.trace_perp(&a);

    t[0].exact(sample, a.dim() + perp.dim() == m, || {
        format!("dim {} + dim⊥ {} ≠ {m}", a.dim(), perp.dim())
    });
    t[1].error(sample, alg.trace_perp(&perp).distance(&a), tol);

    let (x, y) = (alg.random_element(&mut rng), alg.random_element(&mut rng));
    let scale = x.norm() * y.norm();
    t[2].error(sample, (trace(&(&x * &y)) - trace(&(&y * &x))).norm() / scale, tol);

    let inside = alg.random_subspace_of(&perp, rng.random_range(0..=perp.dim()), &mut rng);
    t[3].error(sample, alg.product(&inside, &a).containment_error(&d), tol);
    t[3].error(sample, alg.product(&a, &inside).containment_error(&d), tol);
    let ac = alg.product(&a, &c).is_within(&d, tol);
    let ca = alg.product(&c, &a).is_within(&d, tol);
    t[3].exact(sample, ac == ca, || format!("a·c ⊆ d is {ac} but c·a ⊆ d is {ca}"));

    let (right, left) = alg.residual_into_d(&a);
    t[4].error(sample, right.distance(&perp).max(left.distance(&perp)), tol);
    let back_right = alg.residual_left(&d, &right);
    let back_left = alg.residual_right(&left, &d);
    t[5].error(sample, back_right.distance(&a).max(back_left.distance(&a)), tol);

    t[6].error(sample, alg.product(&e, &a).distance(&a).max(alg.product(&a, &e).distance(&a)), tol);

    let ab_c = alg.product(&alg.product(&a, &b), &c);
    let a_bc = alg.product(&a, &alg.product(&b, &c));
    t[7].error(sample, ab_c.distance(&a_bc), tol);

    let bigger = a.sum(&alg.random_subspace(1, &mut rng), tol);
    t[8].error(sample, alg.trace_perp(&bigger).containment_error(&perp), tol);

    let r = alg.product(&a, &top);
    let annulator = alg.residual_right(&r, &zero);
    let ideal_error = [
        alg.product(&r, &top).containment_error(&r),
        alg.product(&top, &annulator).containment_error(&annulator),
        alg.residual_left(&zero, &annulator).distance(&r),
        alg.trace_perp(&r).distance(&annulator),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    t[9].error(sample, ideal_error, tol);

    let gram = [&a, &perp, &right, &back_right, &ab_c]
        .iter()
        .map(|s| s.gram_error())
        .fold(0.0, f64::max);
    t[10].error(sample, gram, tol);
    t
}

/// Runs the sampled Girard checks on `alg`, samples in parallel.
pub fn check_algebra_sampled(alg: &MatrixAlgebra, samples: usize, seed: u64) -> CheckReport {
    let tallies = (0..samples)
        .into_par_iter()
        .map(|s| sample_checks(alg, seed, s))
        .reduce(
            || vec![Tally::default(); CHECKS.len()],
            |x, y| x.into_iter().zip(y).map(|(p, q)| p.merge(q)).collect(),
        );
    let mut report = CheckReport::new();
    for ((name, anchor), tally) in CHECKS.iter().zip(tallies) {
        report.record_numeric(name, anchor, tally.error, alg.tol, tally.failure);
    }
    report
}

/// The sampled suite on `M_n`. For `n = 1` the spectrum is the two-element
/// chain `{0, ℂ}` with `d = 0`, which is checked directly as well.
pub fn check_girard_sampled(n: usize, samples: usize, seed: u64, tol: f64, budget: &Budget) -> Result<CheckReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let alg = MatrixAlgebra::full(n, tol, budget)?;
    let mut report = check_algebra_sampled(&alg, samples, seed);
    if n == 1 {
        let d = alg.dualizer();
        report.record_with_witness(
            "one-dimensional spectrum",
            "Max M₁ is the two-element chain",
            d.dim() == 0,
            format!("spectrum {{0, M₁}}, dim d = {}", d.dim()),
        );
    }
    Ok(report)
}

/// The sampled suite on `⊕ M_{n_i}` with `d` the total-trace-zero elements.
pub fn product_algebra_spectrum(
    dims: &[usize],
    samples: usize,
    seed: u64,
    tol: f64,
    budget: &Budget,
) -> Result<CheckReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let alg = MatrixAlgebra::block_diagonal(dims, tol, budget)?;
    Ok(check_algebra_sampled(&alg, samples, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = DEFAULT_TOLERANCE;

    fn unit_matrix(n: usize, i: usize, j: usize) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(n, n);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    fn span(n: usize, ms: &[DMatrix<C64>]) -> MatrixSubspace {
        MatrixSubspace::span(n, ms, TOL).unwrap()
    }

    fn m(n: usize) -> MatrixAlgebra {
        MatrixAlgebra::full(n, TOL, &Budget::default()).unwrap()
    }

    #[test]
    fn matrix_unit_products() {
        let e12 = span(2, &[unit_matrix(2, 0, 1)]);
        let e11 = span(2, &[unit_matrix(2, 0, 0)]);
        assert_eq!(subspace_product(&e12, &e12, TOL).unwrap().dim(), 0);
        assert!(subspace_product(&e11, &e12, TOL).unwrap().distance(&e12) < TOL);
        let alg = m(2);
        assert!(alg.product(&alg.unit(), &e12).distance(&e12) < TOL);
    }

    #[test]
    fn perp_of_matrix_unit() {
        let e11 = span(2, &[unit_matrix(2, 0, 0)]);
        let expected = span(2, &[unit_matrix(2, 0, 1), unit_matrix(2, 1, 0), unit_matrix(2, 1, 1)]);
        assert!(trace_perp(&e11, TOL).distance(&expected) < TOL);
        assert_eq!(trace_perp(&MatrixSubspace::zero(3), TOL).dim(), 9);
        let alg = m(3);
        assert_eq!(alg.dualizer().dim(), 8);
        let (right, left) = alg.residual_into_d(&alg.unit());
        assert!(right.distance(&alg.dualizer()) < TOL);
        assert!(left.distance(&alg.dualizer()) < TOL);
        let (right, _) = alg.residual_into_d(&alg.zero());
        assert_eq!(right.dim(), 9);
    }

    #[test]
    fn left_ideal_of_first_column() {
        let alg = m(3);
        let a = span(3, &[unit_matrix(3, 0, 0), unit_matrix(3, 1, 0), unit_matrix(3, 2, 0)]);
        assert!(alg.product(&alg.top(), &a).distance(&a) < TOL);
    }

    #[test]
    fn diagonal_pair() {
        let alg = MatrixAlgebra::block_diagonal(&[1, 1], TOL, &Budget::default()).unwrap();
        assert_eq!(alg.dim(), 2);
        let d = alg.dualizer();
        let line = span(2, &[DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(-1.0, 0.0),
        ]))]);
        assert!(d.distance(&line) < TOL);
    }

    #[test]
    fn one_by_one_is_the_two_chain() {
        let report = check_girard_sampled(1, 20, 1, TOL, &Budget::default()).unwrap();
        assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.passed("one-dimensional spectrum"));
    }

    #[test]
    fn sampled_suite_is_reproducible() {
        let first = check_girard_sampled(2, 30, 7, TOL, &Budget::default()).unwrap();
        let second = check_girard_sampled(2, 30, 7, TOL, &Budget::default()).unwrap();
        assert!(first.all_passed(), "{:?}", first.failures().collect::<Vec<_>>());
        assert_eq!(first, second);
    }

    #[test]
    fn size_budget() {
        assert!(MatrixAlgebra::full(5, TOL, &Budget::default()).is_err());
        assert!(product_algebra_spectrum(&[4, 4, 1], 1, 0, TOL, &Budget::default()).is_err());
    }
}
