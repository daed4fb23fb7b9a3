//! Physical generators: Zeeman terms, the anisotropic exchange Hamiltonian,
//! the Z gate, the two-spin logical encoding, and the in-plane frame
//! rotation.
//!
//! The exchange Hamiltonian per unit pulse angle is
//!
//! ```text
//! h_ij = S_i . S_j  +  beta . (S_i x S_j)  +  gamma (beta . S_i)(beta . S_j)
//! ```
//!
//! with the cross product in right-handed Levi-Civita form,
//! `(S_i x S_j)_a = eps_abc S_i^b S_j^c`, `i` the left factor.

use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 float math under no_std
use num_traits::Float;

use crate::error::CoreError;
use crate::spin_algebra::{commutator, embed_spin, expm_evolve, Axis, Operator, StateVector};

/// Dimensionless spin-orbit parameters of the exchange interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnisotropyParams {
    /// Spin-orbit vector beta (3 components).
    pub beta: [f64; 3],
    /// Scalar strength of the symmetric (beta.S_i)(beta.S_j) correction.
    pub gamma: f64,
}

impl AnisotropyParams {
    pub const fn new(beta: [f64; 3], gamma: f64) -> Self {
        AnisotropyParams { beta, gamma }
    }

    /// beta entirely along z (field parallel to beta).
    pub const fn along_z(beta: f64, gamma: f64) -> Self {
        AnisotropyParams { beta: [0.0, 0.0, beta], gamma }
    }

    /// beta entirely along x (field perpendicular to the dot plane).
    pub const fn along_x(beta: f64, gamma: f64) -> Self {
        AnisotropyParams { beta: [beta, 0.0, 0.0], gamma }
    }

    pub fn beta_norm(&self) -> f64 {
        let [x, y, z] = self.beta;
        (x * x + y * y + z * z).sqrt()
    }

    /// Regime warnings (never errors): typical magnitudes are |beta| of a
    /// few percent with gamma beta^2 around 1e-4, and out-of-regime studies
    /// stay possible.
    pub fn validate(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let b = self.beta_norm();
        if !b.is_finite() || !self.gamma.is_finite() {
            warnings.push(String::from("non-finite anisotropy parameters"));
            return warnings;
        }
        if b > 0.2 {
            warnings.push(alloc::format!(
                "|beta| = {b:.3} far above the few-percent regime"
            ));
        }
        if self.gamma * b * b > 1e-2 {
            warnings.push(alloc::format!(
                "gamma |beta|^2 = {:.3e} far above the 1e-4 regime",
                self.gamma * b * b
            ));
        }
        warnings
    }
}

/// Field/dot-plane geometry selecting which circuit family applies.
#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    /// Field parallel to beta; beta = (0, 0, b).
    BetaParallelB { beta: f64, gamma: f64 },
    /// Field perpendicular to the dot plane, beta along x: beta = (b, 0, 0).
    BetaAlongX { beta: f64, gamma: f64 },
    /// Field perpendicular, beta anywhere in the x-y plane.
    BetaInPlane { beta_x: f64, beta_y: f64, gamma: f64 },
    /// Time-dependent in-plane parameters, sampled once per short-time
    /// slice (value at the slice midpoint).
    TimeDependent { schedule: Vec<AnisotropyParams> },
}

impl Geometry {
    /// The anisotropy parameters for the time-independent geometries.
    pub fn params(&self) -> Option<AnisotropyParams> {
        match *self {
            Geometry::BetaParallelB { beta, gamma } => Some(AnisotropyParams::along_z(beta, gamma)),
            Geometry::BetaAlongX { beta, gamma } => Some(AnisotropyParams::along_x(beta, gamma)),
            Geometry::BetaInPlane { beta_x, beta_y, gamma } => {
                Some(AnisotropyParams::new([beta_x, beta_y, 0.0], gamma))
            }
            Geometry::TimeDependent { .. } => None,
        }
    }
}

/// Logical qubit `i` encoded in the physical pair `(2i-1, 2i)` with
/// `|0_L> = |up down>`, `|1_L> = |down up>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogicalQubit {
    pub index: usize,
}

impl LogicalQubit {
    pub const fn new(index: usize) -> Self {
        LogicalQubit { index }
    }

    pub fn physical_pair(&self) -> (usize, usize) {
        (2 * self.index - 1, 2 * self.index)
    }

    /// Logical basis states on the full `n`-qubit space, all other qubits
    /// spin-up. Ordered `[|0_L>, |1_L>]`.
    pub fn basis(&self, n: usize) -> Result<[StateVector; 2], CoreError> {
        let (a, b) = self.physical_pair();
        if b > n {
            return Err(CoreError::SiteOutOfRange { site: b, n });
        }
        let mut bits0 = alloc::vec![false; n];
        bits0[b - 1] = true; // |up down>
        let mut bits1 = alloc::vec![false; n];
        bits1[a - 1] = true; // |down up>
        Ok([crate::spin_algebra::basis_state(&bits0), crate::spin_algebra::basis_state(&bits1)])
    }
}

/// Basis of the two-logical-qubit code space on 4 physical qubits,
/// ordered |00_L>, |01_L>, |10_L>, |11_L>.
pub fn two_logical_basis() -> [StateVector; 4] {
    use crate::spin_algebra::basis_state;
    [
        basis_state(&[false, true, false, true]),
        basis_state(&[false, true, true, false]),
        basis_state(&[true, false, false, true]),
        basis_state(&[true, false, true, false]),
    ]
}

/// The exchange generator `H_ij(phi) = phi * h_ij` (see module docs).
/// Hermitian by construction since operators on distinct sites commute.
pub fn exchange_generator(
    i: usize,
    j: usize,
    phi: f64,
    params: &AnisotropyParams,
    n: usize,
) -> Result<Operator, CoreError> {
    if i == j {
        return Err(CoreError::CoincidentSites { site: i });
    }
    if !phi.is_finite() {
        return Err(CoreError::NonFiniteAngle { value: phi });
    }
    let si = [
        embed_spin(Axis::X, i, n)?,
        embed_spin(Axis::Y, i, n)?,
        embed_spin(Axis::Z, i, n)?,
    ];
    let sj = [
        embed_spin(Axis::X, j, n)?,
        embed_spin(Axis::Y, j, n)?,
        embed_spin(Axis::Z, j, n)?,
    ];

    // S_i . S_j
    let mut h = Operator::zeros(n);
    for a in 0..3 {
        h = h.add(&si[a].mul(&sj[a]));
    }

    // beta . (S_i x S_j)
    let cross = [
        si[1].mul(&sj[2]).sub(&si[2].mul(&sj[1])),
        si[2].mul(&sj[0]).sub(&si[0].mul(&sj[2])),
        si[0].mul(&sj[1]).sub(&si[1].mul(&sj[0])),
    ];
    for a in 0..3 {
        if params.beta[a] != 0.0 {
            h = h.add(&cross[a].scale_re(params.beta[a]));
        }
    }

    // gamma (beta . S_i)(beta . S_j)
    if params.gamma != 0.0 {
        let mut bsi = Operator::zeros(n);
        let mut bsj = Operator::zeros(n);
        for a in 0..3 {
            if params.beta[a] != 0.0 {
                bsi = bsi.add(&si[a].scale_re(params.beta[a]));
                bsj = bsj.add(&sj[a].scale_re(params.beta[a]));
            }
        }
        h = h.add(&bsi.mul(&bsj).scale_re(params.gamma));
    }

    Ok(h.scale_re(phi))
}

/// The Zeeman generator `eta * S_j^z`.
pub fn zeeman_generator(j: usize, eta: f64, n: usize) -> Result<Operator, CoreError> {
    if !eta.is_finite() {
        return Err(CoreError::NonFiniteAngle { value: eta });
    }
    Ok(embed_spin(Axis::Z, j, n)?.scale_re(eta))
}

/// The Z gate `i exp(-i pi S_j^z)`, a 180-degree rotation about z.
/// Equals `sigma^z` on site `j` under the crate conventions; squares to
/// the identity.
pub fn z_gate(j: usize, n: usize) -> Result<Operator, CoreError> {
    let u = expm_evolve(&zeeman_generator(j, core::f64::consts::PI, n)?)?;
    Ok(u.scale(Complex64::new(0.0, 1.0)))
}

/// Encoded su(2) operator for logical qubit `i` on the full `n`-qubit
/// space:
///
/// ```text
/// Sx_bar = S_{2i-1} . S_{2i} - S^z_{2i-1} S^z_{2i}
/// Sy_bar = -(S_{2i-1} x S_{2i})_z
/// Sz_bar = (S^z_{2i-1} - S^z_{2i}) / 2
/// ```
pub fn encoded_operator(axis: Axis, logical: LogicalQubit, n: usize) -> Result<Operator, CoreError> {
    let (a, b) = logical.physical_pair();
    if b > n {
        return Err(CoreError::SiteOutOfRange { site: b, n });
    }
    match axis {
        Axis::X => {
            let mut h = Operator::zeros(n);
            for ax in [Axis::X, Axis::Y, Axis::Z] {
                h = h.add(&embed_spin(ax, a, n)?.mul(&embed_spin(ax, b, n)?));
            }
            Ok(h.sub(&embed_spin(Axis::Z, a, n)?.mul(&embed_spin(Axis::Z, b, n)?)))
        }
        Axis::Y => {
            let xy = embed_spin(Axis::X, a, n)?.mul(&embed_spin(Axis::Y, b, n)?);
            let yx = embed_spin(Axis::Y, a, n)?.mul(&embed_spin(Axis::X, b, n)?);
            Ok(xy.sub(&yx).scale_re(-1.0))
        }
        Axis::Z => {
            Ok(embed_spin(Axis::Z, a, n)?.sub(&embed_spin(Axis::Z, b, n)?).scale_re(0.5))
        }
    }
}

/// Outcome of rotating an in-plane beta onto the x axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameRotation {
    /// Rotation angle `omega = arctan(beta_y / beta_x)`.
    pub omega: f64,
    /// Equivalent x-aligned parameters with `|beta| = sqrt(bx^2 + by^2)`.
    pub rotated: AnisotropyParams,
}

/// Rotation taking in-plane `beta = (bx, by, 0)` onto the x axis.
///
/// Under the crate's Levi-Civita convention the conjugation that holds
/// entrywise is
///
/// ```text
/// exp(-i omega (S_1^z + S_2^z)) H_x-aligned exp(+i omega (S_1^z + S_2^z)) = H_original
/// ```
///
/// (equivalently `e^{+i omega Z_tot} H_original e^{-i omega Z_tot}` is
/// x-aligned), with `omega = arctan(beta_y / beta_x)`.
pub fn beta_frame_rotation(params: &AnisotropyParams) -> Result<FrameRotation, CoreError> {
    let [bx, by, bz] = params.beta;
    if bz != 0.0 {
        return Err(CoreError::WrongGeometry { expected: "in-plane beta (beta_z = 0)" });
    }
    if bx == 0.0 && by == 0.0 {
        return Err(CoreError::ZeroInPlaneBeta);
    }
    let omega = by.atan2(bx);
    let magnitude = (bx * bx + by * by).sqrt();
    Ok(FrameRotation {
        omega,
        rotated: AnisotropyParams::along_x(magnitude, params.gamma),
    })
}

/// `exp(-i omega (S_1^z + ... + S_n^z))`-type frame unitary over the given
/// sites.
pub fn frame_unitary(omega: f64, sites: &[usize], n: usize) -> Result<Operator, CoreError> {
    let mut h = Operator::zeros(n);
    for &s in sites {
        h = h.add(&embed_spin(Axis::Z, s, n)?);
    }
    expm_evolve(&h.scale_re(omega))
}

/// Max-entry deviation over the su(2) relations of the encoded operators,
/// `max over cyclic (a,b,c) of max-entry |[Sa_bar, Sb_bar] - i Sc_bar|`.
pub fn su2_deviation(logical: LogicalQubit, n: usize) -> Result<f64, CoreError> {
    let sx = encoded_operator(Axis::X, logical, n)?;
    let sy = encoded_operator(Axis::Y, logical, n)?;
    let sz = encoded_operator(Axis::Z, logical, n)?;
    let i = Complex64::new(0.0, 1.0);
    let mut dev = 0.0f64;
    for (a, b, c) in [(&sx, &sy, &sz), (&sy, &sz, &sx), (&sz, &sx, &sy)] {
        dev = dev.max(commutator(a, b)?.sub(&c.scale(i)).max_abs());
    }
    Ok(dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_algebra::{basis_state, phase_fidelity};

    const PI: f64 = core::f64::consts::PI;

    #[test]
    fn isotropic_exchange_spectrum() {
        // S1.S2 has the singlet/triplet split {-3/4, 1/4, 1/4, 1/4}.
        let h = exchange_generator(1, 2, 1.0, &AnisotropyParams::new([0.0; 3], 0.0), 2).unwrap();
        // Eigenvalues via trace moments: tr H = 0, tr H^2 = 3/4 etc. Use
        // direct action instead: H |uu> = 1/4 |uu>.
        let uu = basis_state(&[false, false]);
        let mut got = [Complex64::new(0.0, 0.0); 4];
        for r in 0..4 {
            for c in 0..4 {
                got[r] += h.entry(r, c) * uu[c];
            }
        }
        assert!((got[0].re - 0.25).abs() < 1e-15);
        // Singlet (|ud> - |du>)/sqrt(2) has eigenvalue -3/4.
        let mut singlet = [Complex64::new(0.0, 0.0); 4];
        singlet[1] = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
        singlet[2] = Complex64::new(-1.0 / 2.0f64.sqrt(), 0.0);
        let mut hs = [Complex64::new(0.0, 0.0); 4];
        for r in 0..4 {
            for c in 0..4 {
                hs[r] += h.entry(r, c) * singlet[c];
            }
        }
        for r in 0..4 {
            assert!((hs[r] - singlet[r] * Complex64::new(-0.75, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn exchange_commutes_with_total_sz_when_beta_parallel_z() {
        let p = AnisotropyParams::along_z(0.05, 0.1);
        let h = exchange_generator(1, 2, 0.9, &p, 2).unwrap();
        let sz_tot = embed_spin(Axis::Z, 1, 2)
            .unwrap()
            .add(&embed_spin(Axis::Z, 2, 2).unwrap());
        assert!(commutator(&h, &sz_tot).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn exchange_dm_term_entrywise() {
        // beta = (0.05, 0, 0), gamma = 0: H - S1.S2 = 0.05 (S1^y S2^z - S1^z S2^y).
        let p = AnisotropyParams::along_x(0.05, 0.0);
        let h = exchange_generator(1, 2, 1.0, &p, 2).unwrap();
        let iso = exchange_generator(1, 2, 1.0, &AnisotropyParams::new([0.0; 3], 0.0), 2).unwrap();
        let yz = embed_spin(Axis::Y, 1, 2).unwrap().mul(&embed_spin(Axis::Z, 2, 2).unwrap());
        let zy = embed_spin(Axis::Z, 1, 2).unwrap().mul(&embed_spin(Axis::Y, 2, 2).unwrap());
        let dm = yz.sub(&zy).scale_re(0.05);
        assert!(h.sub(&iso).sub(&dm).max_abs() < 1e-16);
    }

    #[test]
    fn exchange_linear_in_phi() {
        let p = AnisotropyParams::new([0.02, 0.04, 0.01], 0.3);
        let h1 = exchange_generator(1, 2, 0.37, &p, 2).unwrap();
        let h2 = exchange_generator(1, 2, 3.0 * 0.37, &p, 2).unwrap();
        assert!(h1.scale_re(3.0).sub(&h2).max_abs() < 1e-15);
        assert!(h1.hermiticity_deviation() < 1e-15);
    }

    #[test]
    fn exchange_rejects_coincident_sites() {
        let p = AnisotropyParams::along_z(0.05, 0.0);
        assert!(matches!(
            exchange_generator(2, 2, 1.0, &p, 2),
            Err(CoreError::CoincidentSites { .. })
        ));
    }

    #[test]
    fn zeeman_examples() {
        assert!(zeeman_generator(1, 0.0, 2).unwrap().max_abs() == 0.0);
        let h = zeeman_generator(1, PI, 1).unwrap();
        assert!((h.entry(0, 0).re - PI / 2.0).abs() < 1e-15);
        assert!((h.entry(1, 1).re + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn z_gate_values_and_involution() {
        let z = z_gate(1, 1).unwrap();
        assert!((z.entry(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((z.entry(1, 1) + Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let z2 = z_gate(2, 2).unwrap();
        let expect = [1.0, -1.0, 1.0, -1.0];
        for (i, e) in expect.iter().enumerate() {
            assert!((z2.entry(i, i) - Complex64::new(*e, 0.0)).norm() < 1e-14);
        }
        assert!(z2.mul(&z2).matrix().max_dev_from_identity() < 1e-14);
    }

    #[test]
    fn encoded_su2_and_action_on_code_states() {
        assert!(su2_deviation(LogicalQubit::new(1), 2).unwrap() < 1e-14);
        assert!(su2_deviation(LogicalQubit::new(1), 4).unwrap() < 1e-14);
        assert!(su2_deviation(LogicalQubit::new(2), 4).unwrap() < 1e-14);

        let l = LogicalQubit::new(1);
        let sz = encoded_operator(Axis::Z, l, 2).unwrap();
        let [zero_l, one_l] = l.basis(2).unwrap();
        // Sz_bar |0_L> = +1/2 |0_L>, Sz_bar |1_L> = -1/2 |1_L>.
        for (state, want) in [(&zero_l, 0.5), (&one_l, -0.5)] {
            for r in 0..4 {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..4 {
                    acc += sz.entry(r, c) * state[c];
                }
                assert!((acc - state[r] * Complex64::new(want, 0.0)).norm() < 1e-15);
            }
        }
        // Sx_bar |0_L> = 1/2 |1_L>; annihilates |uu> and |dd>.
        let sx = encoded_operator(Axis::X, l, 2).unwrap();
        for r in 0..4 {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..4 {
                acc += sx.entry(r, c) * zero_l[c];
            }
            assert!((acc - one_l[r] * Complex64::new(0.5, 0.0)).norm() < 1e-15);
        }
        for bits in [[false, false], [true, true]] {
            let s = basis_state(&bits);
            for r in 0..4 {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..4 {
                    acc += sx.entry(r, c) * s[c];
                }
                assert!(acc.norm() < 1e-15);
            }
        }
    }

    #[test]
    fn corrupted_encoded_sy_breaks_su2() {
        // Sign-flipped Sy_bar should violate the algebra at O(1).
        let l = LogicalQubit::new(1);
        let sx = encoded_operator(Axis::X, l, 2).unwrap();
        let sy_bad = encoded_operator(Axis::Y, l, 2).unwrap().scale_re(-1.0);
        let sz = encoded_operator(Axis::Z, l, 2).unwrap();
        let dev = commutator(&sx, &sy_bad)
            .unwrap()
            .sub(&sz.scale(Complex64::new(0.0, 1.0)))
            .max_abs();
        assert!(dev > 0.5);
    }

    #[test]
    fn frame_rotation_angles() {
        let r = beta_frame_rotation(&AnisotropyParams::new([0.05, 0.0, 0.0], 0.0)).unwrap();
        assert!(r.omega.abs() < 1e-15);
        assert!((r.rotated.beta[0] - 0.05).abs() < 1e-15);

        let r = beta_frame_rotation(&AnisotropyParams::new([0.0, 0.05, 0.0], 0.0)).unwrap();
        assert!((r.omega - PI / 2.0).abs() < 1e-15);
        assert!((r.rotated.beta[0] - 0.05).abs() < 1e-15);

        let r = beta_frame_rotation(&AnisotropyParams::new([0.03, 0.04, 0.0], 0.1)).unwrap();
        assert!((r.omega - (4.0f64 / 3.0).atan()).abs() < 1e-15);
        assert!((r.rotated.beta[0] - 0.05).abs() < 1e-15);

        assert!(matches!(
            beta_frame_rotation(&AnisotropyParams::new([0.0, 0.0, 0.0], 0.0)),
            Err(CoreError::ZeroInPlaneBeta)
        ));
        assert!(matches!(
            beta_frame_rotation(&AnisotropyParams::new([0.0, 0.0, 0.05], 0.0)),
            Err(CoreError::WrongGeometry { .. })
        ));
    }

    #[test]
    fn frame_rotation_conjugation_identity() {
        // exp(-i w Ztot) H_x exp(+i w Ztot) = H_orig, entrywise, for a grid
        // of phi and gamma.
        for &(bx, by) in &[(0.03, 0.04), (0.0, 0.05), (-0.02, 0.07)] {
            for &gamma in &[0.0, 0.1, 1.0] {
                for &phi in &[0.3, 1.0, 2.2] {
                    let orig = AnisotropyParams::new([bx, by, 0.0], gamma);
                    let fr = beta_frame_rotation(&orig).unwrap();
                    let h_orig = exchange_generator(1, 2, phi, &orig, 2).unwrap();
                    let h_x = exchange_generator(1, 2, phi, &fr.rotated, 2).unwrap();
                    let r = frame_unitary(fr.omega, &[1, 2], 2).unwrap();
                    let conj = r.mul(&h_x).mul(&r.adjoint());
                    assert!(
                        conj.sub(&h_orig).max_abs() < 1e-12,
                        "conjugation failed at bx={bx} by={by} gamma={gamma} phi={phi}"
                    );
                }
            }
        }
    }

    #[test]
    fn zeeman_z_gate_relation_via_fidelity() {
        let u = expm_evolve(&zeeman_generator(1, PI, 1).unwrap()).unwrap();
        let z = z_gate(1, 1).unwrap();
        assert!((phase_fidelity(&u, &z).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn validation_warnings() {
        assert!(AnisotropyParams::along_z(0.05, 0.1).validate().is_empty());
        assert_eq!(AnisotropyParams::along_z(0.5, 0.0).validate().len(), 1);
        assert_eq!(AnisotropyParams::along_z(0.5, 1.0).validate().len(), 2);
    }
}
