//! Exact dense operator algebra on small multi-qubit Hilbert spaces.
//!
//! Conventions, fixed once for the whole crate:
//! - spin operators are S = sigma / 2,
//! - basis state |up> maps to index 0,
//! - qubit 1 is the leftmost tensor factor (most significant bit).

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 float math under no_std
use num_traits::Float;

use crate::error::CoreError;
use crate::linalg::{self, Matrix};
use crate::MAX_QUBITS;

/// Spin component label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Dense complex operator on an `n`-qubit Hilbert space (dimension `2^n`).
///
/// The universal value type for generators, gates, and circuit products.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    n_qubits: usize,
    mat: Matrix,
}

/// Operator-Schmidt spectrum of a two-qubit operator across the {1}|{2}
/// bipartition. Singular values are non-increasing and satisfy
/// `sum(s^2) == ||U||_F^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub singular_values: Vec<f64>,
    /// Qubit sets (A, B) of the bipartition, 1-based.
    pub bipartition: (Vec<usize>, Vec<usize>),
}

/// Schmidt-rank tolerance: singular values at or below this are counted as
/// zero. Well above accumulated round-off, far below any genuine
/// entanglement signal.
pub const RANK_TOLERANCE: f64 = 1e-10;

fn check_qubit_count(n: usize) -> Result<(), CoreError> {
    if n == 0 || n > MAX_QUBITS {
        return Err(CoreError::UnsupportedQubitCount { n });
    }
    Ok(())
}

fn check_site(site: usize, n: usize) -> Result<(), CoreError> {
    if site == 0 || site > n {
        return Err(CoreError::SiteOutOfRange { site, n });
    }
    Ok(())
}

impl Operator {
    pub fn from_matrix(n_qubits: usize, mat: Matrix) -> Result<Self, CoreError> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if mat.rows != dim || mat.cols != dim {
            return Err(CoreError::DimensionMismatch { left: mat.rows, right: dim });
        }
        Ok(Operator { n_qubits, mat })
    }

    pub fn identity(n_qubits: usize) -> Self {
        Operator { n_qubits, mat: Matrix::identity(1 << n_qubits) }
    }

    pub fn zeros(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        Operator { n_qubits, mat: Matrix::zeros(dim, dim) }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.rows
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.mat[(r, c)]
    }

    pub fn adjoint(&self) -> Operator {
        Operator { n_qubits: self.n_qubits, mat: self.mat.adjoint() }
    }

    pub fn mul(&self, other: &Operator) -> Operator {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        Operator { n_qubits: self.n_qubits, mat: self.mat.mul(&other.mat) }
    }

    pub fn add(&self, other: &Operator) -> Operator {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        Operator { n_qubits: self.n_qubits, mat: self.mat.add(&other.mat) }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        Operator { n_qubits: self.n_qubits, mat: self.mat.sub(&other.mat) }
    }

    pub fn scale(&self, s: Complex64) -> Operator {
        Operator { n_qubits: self.n_qubits, mat: self.mat.scale(s) }
    }

    pub fn scale_re(&self, s: f64) -> Operator {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.max_abs()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.mat.hermiticity_deviation()
    }

    /// Max-entry deviation of `U U^dag` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        self.mat.mul(&self.mat.adjoint()).max_dev_from_identity()
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, k: usize) -> Operator {
        let mut out = Operator::identity(self.n_qubits);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

/// `S^axis` acting on `site` (1-based, leftmost factor = site 1) and
/// identity elsewhere, on an `n`-qubit space. `S = sigma / 2`.
pub fn embed_spin(axis: Axis, site: usize, n: usize) -> Result<Operator, CoreError> {
    check_qubit_count(n)?;
    check_site(site, n)?;
    let dim = 1usize << n;
    // Bit of `site` counted from the most significant end.
    let bit = n - site;
    let mask = 1usize << bit;
    let mut mat = Matrix::zeros(dim, dim);
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    for row in 0..dim {
        match axis {
            Axis::Z => {
                // +1/2 on |up> (bit clear), -1/2 on |down> (bit set).
                let sign = if row & mask == 0 { 0.5 } else { -0.5 };
                mat[(row, row)] = Complex64::new(sign, 0.0);
            }
            Axis::X => {
                mat[(row, row ^ mask)] = half;
            }
            Axis::Y => {
                // <r'|S^y|r>: sigma^y |up> = i |down>, sigma^y |down> = -i |up>.
                let col = row ^ mask;
                // column state has the bit value of `col`; |up> column (bit clear)
                // maps up -> i|down>, i.e. entry (down_row, up_col) = i/2.
                if col & mask == 0 {
                    mat[(row, col)] = half_i;
                } else {
                    mat[(row, col)] = -half_i;
                }
            }
        }
    }
    Operator::from_matrix(n, mat)
}

/// `exp(-i H)` for Hermitian `H`, via eigendecomposition. The result is
/// unitary to machine precision.
pub fn expm_evolve(h: &Operator) -> Result<Operator, CoreError> {
    let dev = h.hermiticity_deviation();
    if dev > 1e-12 {
        return Err(CoreError::NotHermitian { deviation: dev });
    }
    let (vals, vecs) = linalg::eigh(&h.mat);
    let n = h.dim();
    let mut phased = Matrix::zeros(n, n);
    // columns of V scaled by exp(-i lambda)
    for c in 0..n {
        let phase = Complex64::new(0.0, -vals[c]).exp();
        for r in 0..n {
            phased[(r, c)] = vecs[(r, c)] * phase;
        }
    }
    Ok(Operator { n_qubits: h.n_qubits, mat: phased.mul(&vecs.adjoint()) })
}

/// `AB - BA`.
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator, CoreError> {
    if a.dim() != b.dim() {
        return Err(CoreError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(a.mul(b).sub(&b.mul(a)))
}

/// `AB + BA`.
pub fn anticommutator(a: &Operator, b: &Operator) -> Result<Operator, CoreError> {
    if a.dim() != b.dim() {
        return Err(CoreError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(a.mul(b).add(&b.mul(a)))
}

/// Unchecked global-phase-insensitive trace fidelity `|tr(U^dag V)| / d`.
/// Also valid on restricted (possibly slightly non-unitary) blocks.
pub fn fidelity_raw(u: &Matrix, v: &Matrix) -> f64 {
    let d = u.rows as f64;
    u.adjoint().mul(v).trace().norm() / d
}

/// Frobenius distance after optimal global-phase alignment, computed
/// directly from the difference matrix so that identical inputs report
/// round-off-level distance.
pub fn phase_aligned_distance_raw(u: &Matrix, v: &Matrix) -> f64 {
    let tr = u.adjoint().mul(v).trace();
    let phase = if tr.norm() > 0.0 { tr / tr.norm() } else { Complex64::new(1.0, 0.0) };
    u.sub(&v.scale(phase.conj())).frobenius_norm()
}

/// Global-phase-insensitive fidelity `|tr(U^dag V)| / d` between unitaries.
/// Equals 1 exactly when `U = e^{i theta} V`.
pub fn phase_fidelity(u: &Operator, v: &Operator) -> Result<f64, CoreError> {
    if u.dim() != v.dim() {
        return Err(CoreError::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    for (name, op) in [("u", u), ("v", v)] {
        let dev = op.unitarity_deviation();
        if dev > 1e-10 {
            let _ = name;
            return Err(CoreError::NotUnitary { deviation: dev });
        }
    }
    Ok(fidelity_raw(&u.mat, &v.mat))
}

/// Phase-aligned Frobenius distance between unitaries (checked).
pub fn phase_aligned_distance(u: &Operator, v: &Operator) -> Result<f64, CoreError> {
    if u.dim() != v.dim() {
        return Err(CoreError::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    Ok(phase_aligned_distance_raw(&u.mat, &v.mat))
}

/// A state vector on the full space (a `dim`-entry column).
pub type StateVector = Vec<Complex64>;

/// Computational basis state |b_1 b_2 ... b_n> with qubit 1 leftmost;
/// `bits[k] = true` means spin-down on qubit k+1.
pub fn basis_state(bits: &[bool]) -> StateVector {
    let n = bits.len();
    let dim = 1usize << n;
    let mut idx = 0usize;
    for &b in bits {
        idx = (idx << 1) | usize::from(b);
    }
    let mut v = alloc::vec![Complex64::new(0.0, 0.0); dim];
    v[idx] = Complex64::new(1.0, 0.0);
    v
}

fn gram_deviation(basis: &[StateVector]) -> f64 {
    let mut dev = 0.0f64;
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let g: Complex64 = bi.iter().zip(bj).map(|(a, b)| a.conj() * b).sum();
            let expect = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((g - Complex64::new(expect, 0.0)).norm());
        }
    }
    dev
}

/// Restriction of `U` to the span of an orthonormal `basis`.
///
/// Returns the restricted matrix with entries `<b_i|U|b_j>` and the
/// leakage: the operator norm of the block coupling the subspace to its
/// orthogonal complement (max over the out-coupling and in-coupling
/// blocks). Leakage at round-off level certifies the restriction is
/// unitary on the subspace.
pub fn subspace_restrict(
    u: &Operator,
    basis: &[StateVector],
) -> Result<(Matrix, f64), CoreError> {
    let dim = u.dim();
    for b in basis {
        if b.len() != dim {
            return Err(CoreError::DimensionMismatch { left: b.len(), right: dim });
        }
    }
    let gdev = gram_deviation(basis);
    if gdev > 1e-12 {
        return Err(CoreError::NotOrthonormal { deviation: gdev });
    }
    let k = basis.len();
    // P: dim x k with basis columns.
    let p = Matrix::from_fn(dim, k, |r, c| basis[c][r]);
    let up = u.mat.mul(&p); // dim x k
    let restricted = p.adjoint().mul(&up); // k x k

    // Out-coupling: (I - P P^dag) U P. In-coupling: P^dag U (I - P P^dag),
    // whose norm equals the norm of (I - P P^dag) U^dag P.
    let ppd = p.mul(&p.adjoint());
    let mut proj_out = up.clone();
    let ppd_up = ppd.mul(&up);
    proj_out = proj_out.sub(&ppd_up);
    let udp = u.mat.adjoint().mul(&p);
    let proj_in = udp.sub(&ppd.mul(&udp));
    let leakage = linalg::spectral_norm(&proj_out).max(linalg::spectral_norm(&proj_in));
    Ok((restricted, leakage))
}

/// Operator-Schmidt spectrum of a two-qubit operator across {1}|{2}.
///
/// Reshuffles `U[(a1 a2),(b1 b2)] -> M[(a1 b1),(a2 b2)]` and takes the
/// singular values of `M`. `U` is a tensor product iff the Schmidt rank
/// (values above [`RANK_TOLERANCE`]) is 1.
pub fn operator_schmidt(u: &Operator) -> Result<SchmidtSpectrum, CoreError> {
    if u.n_qubits != 2 {
        return Err(CoreError::UnsupportedDimension { dim: u.dim() });
    }
    let m = Matrix::from_fn(4, 4, |rc, cc| {
        let (a1, b1) = (rc >> 1, rc & 1);
        let (a2, b2) = (cc >> 1, cc & 1);
        u.mat[((a1 << 1) | a2, (b1 << 1) | b2)]
    });
    Ok(SchmidtSpectrum {
        singular_values: linalg::singular_values(&m),
        bipartition: (alloc::vec![1], alloc::vec![2]),
    })
}

impl SchmidtSpectrum {
    /// Number of singular values above [`RANK_TOLERANCE`].
    pub fn rank(&self) -> usize {
        self.singular_values.iter().filter(|&&s| s > RANK_TOLERANCE).count()
    }

    pub fn second_value(&self) -> f64 {
        self.singular_values.get(1).copied().unwrap_or(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn embed_spin_z_single_qubit() {
        let s = embed_spin(Axis::Z, 1, 1).unwrap();
        assert!(approx(s.entry(0, 0).re, 0.5, 1e-15));
        assert!(approx(s.entry(1, 1).re, -0.5, 1e-15));
        assert!(approx(s.entry(0, 1).norm(), 0.0, 1e-15));
    }

    #[test]
    fn embed_spin_z_on_leftmost_of_two() {
        // S^z (x) I under qubit-1-leftmost ordering.
        let s = embed_spin(Axis::Z, 1, 2).unwrap();
        let expect = [0.5, 0.5, -0.5, -0.5];
        for (i, e) in expect.iter().enumerate() {
            assert!(approx(s.entry(i, i).re, *e, 1e-15));
        }
    }

    #[test]
    fn embed_spin_x_on_site_two() {
        // I (x) (sigma^x / 2): off-diagonal 1/2 within each 2-block.
        let s = embed_spin(Axis::X, 2, 2).unwrap();
        assert!(approx(s.entry(0, 1).re, 0.5, 1e-15));
        assert!(approx(s.entry(1, 0).re, 0.5, 1e-15));
        assert!(approx(s.entry(2, 3).re, 0.5, 1e-15));
        assert!(approx(s.entry(0, 2).norm(), 0.0, 1e-15));
    }

    #[test]
    fn embed_spin_rejects_bad_site() {
        assert!(matches!(embed_spin(Axis::X, 3, 2), Err(CoreError::SiteOutOfRange { .. })));
        assert!(matches!(embed_spin(Axis::X, 0, 2), Err(CoreError::SiteOutOfRange { .. })));
        assert!(matches!(embed_spin(Axis::X, 1, 9), Err(CoreError::UnsupportedQubitCount { .. })));
    }

    #[test]
    fn su2_commutator_on_one_qubit() {
        let sx = embed_spin(Axis::X, 1, 1).unwrap();
        let sy = embed_spin(Axis::Y, 1, 1).unwrap();
        let sz = embed_spin(Axis::Z, 1, 1).unwrap();
        let lhs = commutator(&sx, &sy).unwrap();
        let rhs = sz.scale(Complex64::new(0.0, 1.0));
        assert!(lhs.sub(&rhs).max_abs() < 1e-15);
        // [A, A] = 0 and disjoint supports commute.
        assert!(commutator(&sx, &sx).unwrap().max_abs() == 0.0);
        let s1z = embed_spin(Axis::Z, 1, 2).unwrap();
        let s2z = embed_spin(Axis::Z, 2, 2).unwrap();
        assert!(commutator(&s1z, &s2z).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn expm_zero_is_identity() {
        let u = expm_evolve(&Operator::zeros(2)).unwrap();
        assert!(u.matrix().max_dev_from_identity() < 1e-15);
    }

    #[test]
    fn expm_pi_sz_matches_z_gate_relation() {
        // exp(-i pi S^z) = diag(-i, +i); times i gives diag(1, -1).
        let h = embed_spin(Axis::Z, 1, 1).unwrap().scale_re(core::f64::consts::PI);
        let u = expm_evolve(&h).unwrap();
        assert!((u.entry(0, 0) - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((u.entry(1, 1) - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        let z = u.scale(Complex64::new(0.0, 1.0));
        assert!((z.entry(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((z.entry(1, 1) + Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn expm_rejects_non_hermitian() {
        let mut m = Matrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        let op = Operator::from_matrix(1, m).unwrap();
        match expm_evolve(&op) {
            Err(CoreError::NotHermitian { deviation }) => assert!(deviation > 0.9),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn phase_fidelity_examples() {
        let h = embed_spin(Axis::X, 1, 2).unwrap().scale_re(0.83);
        let u = expm_evolve(&h).unwrap();
        assert!(approx(phase_fidelity(&u, &u).unwrap(), 1.0, 1e-14));
        let phased = u.scale(Complex64::new(0.0, 0.7).exp());
        assert!(approx(phase_fidelity(&u, &phased).unwrap(), 1.0, 1e-14));
        // I vs sigma^z (x) I is traceless: fidelity 0.
        let sz = embed_spin(Axis::Z, 1, 2).unwrap().scale_re(2.0);
        assert!(phase_fidelity(&Operator::identity(2), &sz).unwrap() < 1e-15);
    }

    #[test]
    fn phase_fidelity_rejects_non_unitary() {
        let h = embed_spin(Axis::X, 1, 1).unwrap();
        assert!(matches!(
            phase_fidelity(&h, &Operator::identity(1)),
            Err(CoreError::NotUnitary { .. })
        ));
    }

    #[test]
    fn distance_consistent_with_fidelity() {
        let u = expm_evolve(&embed_spin(Axis::Y, 1, 2).unwrap().scale_re(1.3)).unwrap();
        let d = phase_aligned_distance(&u, &u).unwrap();
        assert!(d < 1e-8);
    }

    #[test]
    fn subspace_restrict_identity_and_full_leak() {
        let basis = [basis_state(&[false, true]), basis_state(&[true, false])];
        let (r, leak) = subspace_restrict(&Operator::identity(2), &basis).unwrap();
        assert!(r.max_dev_from_identity() < 1e-15);
        assert!(leak < 1e-15);

        // exp(-i pi S1^x) maps the |ud>,|du> subspace fully out.
        let h = embed_spin(Axis::X, 1, 2).unwrap().scale_re(core::f64::consts::PI);
        let u = expm_evolve(&h).unwrap();
        let (_, leak) = subspace_restrict(&u, &basis).unwrap();
        assert!(approx(leak, 1.0, 1e-12));
    }

    #[test]
    fn subspace_restrict_rejects_skewed_basis() {
        let mut b0 = basis_state(&[false, true]);
        let b1 = basis_state(&[false, true]);
        b0[2] = Complex64::new(0.3, 0.0); // no longer orthonormal
        assert!(matches!(
            subspace_restrict(&Operator::identity(2), &[b0, b1]),
            Err(CoreError::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn schmidt_of_pauli_product_and_swap() {
        // sigma^x (x) sigma^y -> spectrum (2, 0, 0, 0), rank 1.
        let sx = embed_spin(Axis::X, 1, 2).unwrap().scale_re(2.0);
        let sy = embed_spin(Axis::Y, 2, 2).unwrap().scale_re(2.0);
        let prod = sx.mul(&sy);
        let spec = operator_schmidt(&prod).unwrap();
        assert!(approx(spec.singular_values[0], 2.0, 1e-12));
        assert!(spec.second_value() < 1e-13);
        assert_eq!(spec.rank(), 1);

        // SWAP has rank 4 with equal singular values 1.
        let mut m = Matrix::zeros(4, 4);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(1, 2)] = Complex64::new(1.0, 0.0);
        m[(2, 1)] = Complex64::new(1.0, 0.0);
        m[(3, 3)] = Complex64::new(1.0, 0.0);
        let swap = Operator::from_matrix(2, m).unwrap();
        let spec = operator_schmidt(&swap).unwrap();
        assert_eq!(spec.rank(), 4);
        for s in &spec.singular_values {
            assert!(approx(*s, 1.0, 1e-12));
        }
    }

    #[test]
    fn schmidt_of_cnot_is_rank_two() {
        let mut m = Matrix::zeros(4, 4);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(1, 1)] = Complex64::new(1.0, 0.0);
        m[(2, 3)] = Complex64::new(1.0, 0.0);
        m[(3, 2)] = Complex64::new(1.0, 0.0);
        let cnot = Operator::from_matrix(2, m).unwrap();
        let spec = operator_schmidt(&cnot).unwrap();
        assert_eq!(spec.rank(), 2);
        let r2 = 2.0f64.sqrt();
        assert!(approx(spec.singular_values[0], r2, 1e-12));
        assert!(approx(spec.singular_values[1], r2, 1e-12));
        assert!(spec.singular_values[2] < 1e-13);
    }
}
