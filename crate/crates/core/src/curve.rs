//! The generalized Fermat curve `C(λ₁,…,λ_{n−2}; k) ⊂ ℙⁿ`:
//!
//! ```text
//!      x₁ᵏ + x₂ᵏ + x₃ᵏ     = 0
//!   λⱼ x₁ᵏ + x₂ᵏ + x_{j+3}ᵏ = 0    (j = 1, …, n−2)
//! ```
//!
//! together with its generalized Fermat group `H ≅ ℤₖⁿ`, the quotient map
//! `π([x]) = −(x₂/x₁)ᵏ` and point-level helpers.

use std::f64::consts::PI;

use rand::Rng;

use crate::config::ConeConfiguration;
use crate::error::{Error, Result};
use crate::lift::CurveAutomorphism;
use crate::perm::Permutation;
use crate::sphere::{max_modulus, root_of_unity, Complex, SpherePoint, ONE, ZERO};

/// Generalized Fermat curve of type `(k, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermatCurve {
    k: u32,
    lambdas: Vec<Complex>,
    /// `(n−1) × (n+1)` coefficient matrix acting on `(x₁ᵏ, …, x_{n+1}ᵏ)`.
    q: Vec<Vec<Complex>>,
}

impl FermatCurve {
    /// Validates the λ's (not 0 or 1, pairwise distinct, chordally) and
    /// assembles the coefficient matrix.
    pub fn build(k: u32, lambdas: Vec<Complex>, eps: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidLambda(format!("k must be at least 2, got {k}")));
        }
        let forbidden = [SpherePoint::zero(), SpherePoint::one()];
        for (i, l) in lambdas.iter().enumerate() {
            if !(l.re.is_finite() && l.im.is_finite()) {
                return Err(Error::InvalidLambda(format!("λ{} is not finite", i + 1)));
            }
            let p = SpherePoint::finite(*l);
            if forbidden.iter().any(|f| f.chordal_distance(&p) <= eps) {
                return Err(Error::InvalidLambda(format!("λ{} is 0 or 1", i + 1)));
            }
            if lambdas[..i]
                .iter()
                .any(|m| SpherePoint::finite(*m).chordal_distance(&p) <= eps)
            {
                return Err(Error::InvalidLambda(format!("λ{} is repeated", i + 1)));
            }
        }
        let n = lambdas.len() + 2;
        let mut q = vec![vec![ZERO; n + 1]; n - 1];
        q[0][0] = ONE;
        q[0][1] = ONE;
        q[0][2] = ONE;
        for (j, l) in lambdas.iter().enumerate() {
            q[j + 1][0] = *l;
            q[j + 1][1] = ONE;
            q[j + 1][j + 3] = ONE;
        }
        Ok(Self { k, lambdas, q })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.lambdas.len() + 2
    }

    pub fn lambdas(&self) -> &[Complex] {
        &self.lambdas
    }

    pub fn coefficients(&self) -> &[Vec<Complex>] {
        &self.q
    }

    /// `(n−1)(k−1) > 2`; the types (2,2), (2,3), (3,2) are not hyperbolic.
    pub fn is_hyperbolic(&self) -> bool {
        (self.n() - 1) * (self.k as usize - 1) > 2
    }

    pub fn genus(&self) -> Result<u64> {
        genus(self.k, self.n())
    }

    /// `k^n`, the order of `H` and the degree of `π`.
    pub fn group_order(&self) -> Option<u128> {
        (self.k as u128).checked_pow(self.n() as u32)
    }

    /// Basis `K₁, K₂` of the kernel of the coefficient matrix. A vector lies
    /// in the row space iff it annihilates both.
    pub(crate) fn kernel_basis(&self) -> [Vec<Complex>; 2] {
        let m = self.n() + 1;
        let mut k1 = vec![ZERO; m];
        let mut k2 = vec![ZERO; m];
        k1[0] = ONE;
        k2[1] = ONE;
        k1[2] = -ONE;
        k2[2] = -ONE;
        for (j, l) in self.lambdas.iter().enumerate() {
            k1[j + 3] = -l;
            k2[j + 3] = -ONE;
        }
        [k1, k2]
    }

    /// Relative distance of `v` from the row space of the coefficient matrix.
    pub(crate) fn rowspace_defect(&self, v: &[Complex]) -> f64 {
        let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if vmax == 0.0 {
            return 0.0;
        }
        self.kernel_basis()
            .iter()
            .map(|k| {
                let dot: Complex = v.iter().zip(k).map(|(a, b)| a * b).sum();
                let knorm: f64 = k.iter().map(|z| z.norm()).sum();
                dot.norm() / (vmax * knorm)
            })
            .fold(0.0, f64::max)
    }

    /// The generators `a₁, …, aₙ` of `H`; `aⱼ` multiplies `xⱼ` by `e^{2πi/k}`.
    pub fn h_generators(&self) -> Vec<CurveAutomorphism> {
        let m = self.n() + 1;
        let zeta = root_of_unity(1, self.k as u64);
        (0..self.n())
            .map(|j| {
                let mut c = vec![ONE; m];
                c[j] = zeta;
                CurveAutomorphism::new(Permutation::identity(m), c, false)
                    .expect("nonzero constants")
            })
            .collect()
    }

    /// All `k^n` elements of `H` as `x_{j+1} ↦ ζ^{e_j} x_{j+1}` for
    /// `j = 1..n` (projectively `x₁` stays fixed), exponent vectors in
    /// lexicographic order.
    pub fn h_elements(&self) -> Vec<CurveAutomorphism> {
        let m = self.n() + 1;
        exponent_vectors(self.k, self.n())
            .map(|e| {
                let mut c = vec![ONE; m];
                for (j, &ej) in e.iter().enumerate() {
                    c[j + 1] = root_of_unity(ej as i64, self.k as u64);
                }
                CurveAutomorphism::new(Permutation::identity(m), c, false).expect("nonzero")
            })
            .collect()
    }

    /// Largest row residual `|Σ Q_ri x_iᵏ|` at the canonical representative.
    pub fn residual(&self, p: &CurvePoint) -> f64 {
        let powers: Vec<Complex> = p.coords().iter().map(|x| x.powu(self.k)).collect();
        self.q
            .iter()
            .map(|row| row.iter().zip(&powers).map(|(a, b)| a * b).sum::<Complex>().norm())
            .fold(0.0, f64::max)
    }

    pub fn on_curve(&self, p: &CurvePoint, eps: f64) -> bool {
        p.coords().len() == self.n() + 1 && self.residual(p) < eps
    }

    /// `π([x]) = −(x₂/x₁)ᵏ`, with `x₁ = 0` going to `∞`.
    pub fn quotient_map(&self, p: &CurvePoint, eps: f64) -> Result<SpherePoint> {
        if !self.on_curve(p, eps) {
            return Err(Error::NotOnCurve {
                residual: self.residual(p),
            });
        }
        let x = p.coords();
        SpherePoint::new(-x[1].powu(self.k), x[0].powu(self.k)).ok_or(Error::NotOnCurve {
            residual: self.residual(p),
        })
    }

    /// Point of the fiber of `π` over `z` selected by `root_choice`:
    /// `x₁ = 1`, `x₂ᵏ = −z`, `x₃ᵏ = z − 1`, `x_{j+3}ᵏ = z − λⱼ`, each
    /// coordinate the principal root times `e^{2πi·choice/k}`.
    pub fn fiber_point(&self, z: &SpherePoint, root_choice: &[u32], eps: f64) -> Result<CurvePoint> {
        let m = self.n() + 1;
        if root_choice.len() != m {
            return Err(Error::InvalidConfiguration(format!(
                "root choice needs {m} entries, got {}",
                root_choice.len()
            )));
        }
        let cones = self.cone_points();
        if cones.points().iter().any(|c| c.chordal_distance(z) <= eps) {
            return Err(Error::RamifiedFiber);
        }
        let z = z.to_finite().expect("∞ is a cone point");
        let mut values = Vec::with_capacity(m);
        values.push(ONE);
        values.push(-z);
        values.push(z - ONE);
        values.extend(self.lambdas.iter().map(|l| z - l));
        let coords = values
            .iter()
            .zip(root_choice)
            .map(|(w, &e)| principal_root(*w, self.k) * root_of_unity(e as i64, self.k as u64))
            .collect();
        Ok(CurvePoint::new(coords).expect("x₁ ≠ 0"))
    }

    /// `(∞, 0, 1, λ₁, …, λ_{n−2})`.
    pub fn cone_points(&self) -> ConeConfiguration {
        let mut pts = vec![SpherePoint::infinity(), SpherePoint::zero(), SpherePoint::one()];
        pts.extend(self.lambdas.iter().map(|l| SpherePoint::finite(*l)));
        // the λ's were validated at construction
        ConeConfiguration::new(pts, 0.0).expect("valid cone points")
    }

    /// Random point off the branch locus: `z` uniform in a box, kept away
    /// from the cone points, with random root choices.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> CurvePoint {
        let cones = self.cone_points();
        loop {
            let z = SpherePoint::finite(Complex::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
            if cones.points().iter().any(|c| c.chordal_distance(&z) < 1e-3) {
                continue;
            }
            let choice: Vec<u32> = (0..=self.n()).map(|_| rng.gen_range(0..self.k)).collect();
            return self.fiber_point(&z, &choice, 0.0).expect("z is not a cone point");
        }
    }
}

/// `g(k, n) = 1 + k^{n−1}((n−1)(k−1) − 2)/2`.
pub fn genus(k: u32, n: usize) -> Result<u64> {
    if k < 2 || n < 2 {
        return Err(Error::InvalidConfiguration(format!("genus needs k, n ≥ 2, got ({k}, {n})")));
    }
    let n = i128::try_from(n).map_err(|_| Error::Overflow)?;
    let power = i128::from(k)
        .checked_pow(u32::try_from(n - 1).map_err(|_| Error::Overflow)?)
        .ok_or(Error::Overflow)?;
    let factor = (n - 1)
        .checked_mul(i128::from(k) - 1)
        .and_then(|x| x.checked_sub(2))
        .ok_or(Error::Overflow)?;
    let twice = power.checked_mul(factor).ok_or(Error::Overflow)?;
    debug_assert!(twice % 2 == 0);
    let g = 1 + twice / 2;
    u64::try_from(g).map_err(|_| Error::Overflow)
}

/// Principal k-th root: argument in `(−π, π]`, root `|w|^{1/k} e^{i·arg/k}`.
pub fn principal_root(w: Complex, k: u32) -> Complex {
    // adding 0.0 clears negative zeros so arg lands in (−π, π]
    let w = Complex::new(w.re + 0.0, w.im + 0.0);
    let mut arg = w.arg();
    if arg <= -PI {
        arg += 2.0 * PI;
    }
    Complex::from_polar(w.norm().powf(1.0 / k as f64), arg / k as f64)
}

/// Iterator over `{0..k}^len` in lexicographic order.
pub(crate) fn exponent_vectors(k: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (k as u128).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut e = vec![0u32; len];
        for slot in e.iter_mut().rev() {
            *slot = (idx % k as u128) as u32;
            idx /= k as u128;
        }
        e
    })
}

/// Point of `ℙⁿ`, stored with its max-modulus coordinate scaled to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    x: Vec<Complex>,
}

impl CurvePoint {
    pub fn new(x: Vec<Complex>) -> Option<Self> {
        let (idx, m) = max_modulus(&x)?;
        if !m.is_finite() || m <= 0.0 {
            return None;
        }
        let s = x[idx];
        Some(Self {
            x: x.iter().map(|z| z / s).collect(),
        })
    }

    pub fn coords(&self) -> &[Complex] {
        &self.x
    }

    pub fn approx_eq(&self, other: &CurvePoint, eps: f64) -> bool {
        crate::sphere::projectively_equal(&self.x, &other.x, eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::DEFAULT_EPSILON as EPS;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hidalgo() -> FermatCurve {
        let l2 = Complex::new(-2.0, 2f64.sqrt());
        FermatCurve::build(2, vec![Complex::new(-6.0, 0.0), l2, -l2], EPS).unwrap()
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(2, 5), Ok(17));
        assert_eq!(genus(2, 2), Ok(0));
        assert_eq!(genus(2, 3), Ok(1));
        assert_eq!(genus(3, 2), Ok(1));
        assert_eq!(genus(2, 4), Ok(5));
        assert_eq!(genus(1000, 40), Err(Error::Overflow));
    }

    #[test]
    fn riemann_hurwitz() {
        // k(2g − 2) = kⁿ(−2k + (n+1)(k−1))
        for k in 2..=8u32 {
            for n in 2..=8usize {
                let g = genus(k, n).unwrap() as i128;
                let k = k as i128;
                let lhs = k * (2 * g - 2);
                let rhs = k.pow(n as u32) * (-2 * k + (n as i128 + 1) * (k - 1));
                assert_eq!(lhs, rhs, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn build_examples() {
        let c = hidalgo();
        assert_eq!(c.n(), 5);
        assert_eq!(c.coefficients().len(), 4);
        assert_eq!(c.coefficients()[3][0], Complex::new(2.0, -(2f64.sqrt())));
        assert!(c.is_hyperbolic());
        assert_eq!(c.genus(), Ok(17));

        let real = FermatCurve::build(2, vec![Complex::new(-2.0, 0.0), Complex::new(3.0, 0.0)], EPS)
            .unwrap();
        assert!(real.coefficients().iter().flatten().all(|z| z.im == 0.0));

        assert!(matches!(
            FermatCurve::build(2, vec![ZERO, Complex::new(2.0, 0.0)], EPS),
            Err(Error::InvalidLambda(_))
        ));
        assert!(matches!(
            FermatCurve::build(2, vec![Complex::new(2.0, 0.0), Complex::new(2.0, 0.0)], EPS),
            Err(Error::InvalidLambda(_))
        ));
        assert!(!FermatCurve::build(2, vec![], EPS).unwrap().is_hyperbolic());
        assert!(!FermatCurve::build(3, vec![], EPS).unwrap().is_hyperbolic());
        assert!(!FermatCurve::build(2, vec![Complex::new(2.0, 0.0)], EPS).unwrap().is_hyperbolic());
    }

    #[test]
    fn cone_points_order() {
        let c = hidalgo();
        let pts = c.cone_points();
        assert_eq!(pts.len(), 6);
        assert!(pts.points()[0].is_infinity());
        assert!(pts.points()[4].approx_eq(&SpherePoint::finite(Complex::new(-2.0, 2f64.sqrt())), 1e-15));
        assert_eq!(FermatCurve::build(3, vec![], EPS).unwrap().cone_points().len(), 3);
    }

    #[test]
    fn fiber_points_and_quotient() {
        let c = hidalgo();
        let z = SpherePoint::finite(Complex::new(2.0, 0.0));
        let p = c.fiber_point(&z, &[0; 6], EPS).unwrap();
        assert!(c.residual(&p) < 1e-12);
        assert!(c.quotient_map(&p, EPS).unwrap().approx_eq(&z, 1e-12));
        let q = c.fiber_point(&z, &[0, 1, 0, 0, 0, 0], EPS).unwrap();
        assert!(!p.approx_eq(&q, 1e-6));
        assert!(c.quotient_map(&q, EPS).unwrap().approx_eq(&z, 1e-12));

        assert_eq!(c.fiber_point(&SpherePoint::one(), &[0; 6], EPS), Err(Error::RamifiedFiber));
        assert_eq!(c.fiber_point(&SpherePoint::infinity(), &[0; 6], EPS), Err(Error::RamifiedFiber));
    }

    #[test]
    fn branch_points_project_to_cone_points() {
        let c = hidalgo();
        let l1 = Complex::new(-6.0, 0.0);
        // x₃ = 0: x₂ᵏ = −x₁ᵏ; pick x₁ = 1, x₂ = i, remaining from the rows
        let x3_zero = CurvePoint::new(vec![
            ONE,
            Complex::i(),
            ZERO,
            principal_root(-(l1 - ONE), 2),
            principal_root(-(c.lambdas()[1] - ONE), 2),
            principal_root(-(c.lambdas()[2] - ONE), 2),
        ])
        .unwrap();
        assert!(c.on_curve(&x3_zero, EPS));
        assert!(c.quotient_map(&x3_zero, EPS).unwrap().approx_eq(&SpherePoint::one(), 1e-12));

        // x₄ = 0: x₂ᵏ = −λ₁x₁ᵏ
        let x2 = principal_root(-l1, 2);
        let x4_zero = CurvePoint::new(vec![
            ONE,
            x2,
            principal_root(l1 - ONE, 2),
            ZERO,
            principal_root(l1 - c.lambdas()[1], 2),
            principal_root(l1 - c.lambdas()[2], 2),
        ])
        .unwrap();
        assert!(c.on_curve(&x4_zero, EPS));
        assert!(c
            .quotient_map(&x4_zero, EPS)
            .unwrap()
            .approx_eq(&SpherePoint::finite(l1), 1e-12));

        // x₁ = 0 ⇒ ∞
        let x1_zero = CurvePoint::new(vec![
            ZERO,
            ONE,
            principal_root(-ONE, 2),
            principal_root(-ONE, 2),
            principal_root(-ONE, 2),
            principal_root(-ONE, 2),
        ])
        .unwrap();
        assert!(c.on_curve(&x1_zero, EPS));
        assert!(c.quotient_map(&x1_zero, EPS).unwrap().is_infinity());
    }

    #[test]
    fn on_curve_tolerance() {
        let c = hidalgo();
        let bad = CurvePoint::new(vec![ONE, ZERO, ZERO, ZERO, ZERO, ZERO]).unwrap();
        assert!(!c.on_curve(&bad, EPS));
        assert!(matches!(c.quotient_map(&bad, EPS), Err(Error::NotOnCurve { .. })));

        let p = c.fiber_point(&SpherePoint::finite(Complex::new(0.5, 0.7)), &[0; 6], EPS).unwrap();
        assert!(c.on_curve(&p, EPS));
        let noisy: Vec<Complex> = p.coords().iter().map(|x| x + 1e-3).collect();
        assert!(!c.on_curve(&CurvePoint::new(noisy).unwrap(), EPS));
    }

    #[test]
    fn fiber_has_k_to_the_n_points() {
        for (k, lambdas) in [
            (2u32, vec![Complex::new(-6.0, 0.0), Complex::new(0.3, 1.0)]),
            (3, vec![Complex::new(2.0, 1.0)]),
        ] {
            let c = FermatCurve::build(k, lambdas, EPS).unwrap();
            let z = SpherePoint::finite(Complex::new(0.7, -1.3));
            let mut pts: Vec<CurvePoint> = Vec::new();
            for tail in exponent_vectors(k, c.n()) {
                let mut choice = vec![0];
                choice.extend(tail);
                let p = c.fiber_point(&z, &choice, EPS).unwrap();
                if !pts.iter().any(|q| q.approx_eq(&p, 1e-9)) {
                    pts.push(p);
                }
            }
            assert_eq!(pts.len() as u128, c.group_order().unwrap());
        }
    }

    #[test]
    fn quotient_is_h_invariant() {
        let c = hidalgo();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let gens = c.h_generators();
        for _ in 0..100 {
            let p = c.random_point(&mut rng);
            let z = c.quotient_map(&p, EPS).unwrap();
            for a in &gens {
                let w = c.quotient_map(&a.apply(&p), EPS).unwrap();
                assert!(w.chordal_distance(&z) < 1e-9);
            }
        }
    }

    #[test]
    fn h_generators_scale_one_coordinate() {
        let c = hidalgo();
        let gens = c.h_generators();
        assert_eq!(gens.len(), 5);
        let p = c.random_point(&mut ChaCha8Rng::seed_from_u64(2));
        let image = gens[0].apply(&p);
        let mut expected = p.coords().to_vec();
        expected[0] *= root_of_unity(1, 2);
        assert!(image.approx_eq(&CurvePoint::new(expected).unwrap(), 1e-12));
    }

    #[test]
    fn principal_root_branch() {
        let r = principal_root(Complex::new(-4.0, -0.0), 2);
        assert!((r - Complex::new(0.0, 2.0)).norm() < 1e-15);
        let r = principal_root(Complex::new(-8.0, 0.0), 3);
        assert!((r.powu(3) - Complex::new(-8.0, 0.0)).norm() < 1e-12);
        assert!(r.im > 0.0);
    }
}
