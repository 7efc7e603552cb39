//! Lifting orbifold symmetries to automorphisms of the curve.
//!
//! A symmetry permuting the cone points by `σ` lifts to
//! `[x] ↦ [c₁ x_{σ⁻¹(1)} : … : c_{n+1} x_{σ⁻¹(n+1)}]`, with the coordinates
//! conjugated first when the symmetry is anticonformal. The `k`-th powers
//! `tᵢ = cᵢᵏ` are forced (up to scale) by asking that the pulled-back
//! equations stay in the row space of the coefficient matrix; the `k^n`
//! choices of roots then form one coset of `H`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::ConfigSymmetry;
use crate::curve::{exponent_vectors, principal_root, CurvePoint, FermatCurve};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::perm::Permutation;
use crate::sphere::{projectively_equal, root_of_unity, Complex, ONE, ZERO};

/// Seed for the random points used by [`is_curve_automorphism`].
pub const DEFAULT_SEED: u64 = 0x5eed_f3a7;

/// Number of random curve points checked by [`is_curve_automorphism`].
const SAMPLE_POINTS: usize = 20;

/// Default cap on the number of lifts enumerated per symmetry.
pub const DEFAULT_LIFT_CAP: u64 = 1_000_000;

/// `x_i ↦ c_i · x̃_{σ⁻¹(i)}`, where `x̃ = x̄` for anticonformal maps.
/// Constants are normalized so that `c₁ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveAutomorphism {
    perm: Permutation,
    c: Vec<Complex>,
    anticonformal: bool,
}

impl CurveAutomorphism {
    /// Returns `None` if the sizes differ or some constant vanishes.
    pub fn new(perm: Permutation, c: Vec<Complex>, anticonformal: bool) -> Option<Self> {
        if perm.len() != c.len() || c.is_empty() || c.iter().any(|z| *z == ZERO || !z.is_finite()) {
            return None;
        }
        let c0 = c[0];
        Some(Self {
            perm,
            c: c.iter().map(|z| z / c0).collect(),
            anticonformal,
        })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            perm: Permutation::identity(m),
            c: vec![ONE; m],
            anticonformal: false,
        }
    }

    /// Coordinatewise conjugation `J`.
    pub fn conjugation(m: usize) -> Self {
        Self {
            anticonformal: true,
            ..Self::identity(m)
        }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn constants(&self) -> &[Complex] {
        &self.c
    }

    pub fn is_anticonformal(&self) -> bool {
        self.anticonformal
    }

    pub fn apply(&self, p: &CurvePoint) -> CurvePoint {
        let x = p.coords();
        let inv = self.perm.inverse();
        let y = (0..x.len())
            .map(|i| {
                let xi = x[inv.apply(i)];
                self.c[i] * if self.anticonformal { xi.conj() } else { xi }
            })
            .collect();
        CurvePoint::new(y).expect("constants are nonzero")
    }

    /// `self ∘ other`: permutation `σ₁σ₂`, orientation XOR, constants
    /// `c_i = c1_i · χ₁(c2_{σ₁⁻¹(i)})`.
    pub fn compose(&self, other: &CurveAutomorphism) -> CurveAutomorphism {
        let inv = self.perm.inverse();
        let c = (0..self.c.len())
            .map(|i| {
                let z = other.c[inv.apply(i)];
                self.c[i] * if self.anticonformal { z.conj() } else { z }
            })
            .collect();
        CurveAutomorphism::new(
            self.perm.compose(&other.perm),
            c,
            self.anticonformal ^ other.anticonformal,
        )
        .expect("product of nonzero constants")
    }

    pub fn inverse(&self) -> CurveAutomorphism {
        // y_{σ(j)} = c_{σ(j)} x̃_j  ⇒  x_j = χ(y_{σ(j)} / c_{σ(j)})
        let c = (0..self.c.len())
            .map(|j| {
                let z = self.c[self.perm.apply(j)].inv();
                if self.anticonformal {
                    z.conj()
                } else {
                    z
                }
            })
            .collect();
        CurveAutomorphism::new(self.perm.inverse(), c, self.anticonformal).expect("nonzero")
    }

    pub fn pow(&self, e: u64) -> CurveAutomorphism {
        let mut acc = CurveAutomorphism::identity(self.c.len());
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn approx_eq(&self, other: &CurveAutomorphism, eps: f64) -> bool {
        self.anticonformal == other.anticonformal
            && self.perm == other.perm
            && projectively_equal(&self.c, &other.c, eps)
    }

    pub fn is_identity(&self, eps: f64) -> bool {
        !self.anticonformal && self.perm.is_identity() && projectively_equal(&self.c, &vec![ONE; self.c.len()], eps)
    }

    pub fn order(&self, cap: u64, eps: f64) -> Result<u64> {
        let mut power = self.clone();
        for q in 1..=cap {
            if power.is_identity(eps) {
                return Ok(q);
            }
            power = self.compose(&power);
        }
        Err(Error::NotFiniteOrder { cap })
    }

    /// `self² = id` without `self = id`.
    pub fn is_involution(&self, eps: f64) -> bool {
        !self.is_identity(eps) && self.compose(self).is_identity(eps)
    }

    /// Involution test for anticonformal maps: `σ² = id` and
    /// `c_i · c̄_{σ(i)}` constant.
    pub fn is_anticonformal_involution(&self, eps: f64) -> bool {
        if !self.anticonformal || !self.perm.compose(&self.perm).is_identity() {
            return false;
        }
        let d: Vec<Complex> = (0..self.c.len())
            .map(|i| self.c[i] * self.c[self.perm.apply(i)].conj())
            .collect();
        projectively_equal(&d, &vec![ONE; d.len()], eps)
    }

    /// `k`-th powers of the constants.
    pub fn powers(&self, k: u32) -> Vec<Complex> {
        self.c.iter().map(|z| z.powu(k)).collect()
    }
}

/// Vector `v_m = ρ_{σ(m)} t_{σ(m)}` describing the pull-back of `row`.
fn pulled_back_row(row: &[Complex], t: &[Complex], perm: &Permutation, anticonformal: bool) -> Vec<Complex> {
    (0..row.len())
        .map(|m| {
            let j = perm.apply(m);
            let v = row[j] * t[j];
            if anticonformal {
                v.conj()
            } else {
                v
            }
        })
        .collect()
}

/// The values `tᵢ = cᵢᵏ` (normalized to `t₁ = 1`) of any lift of `s`.
///
/// Unknowns are `t` for conformal `s` and `t̄` otherwise; each row of the
/// coefficient matrix contributes the two row-space membership conditions.
pub fn solve_lift_constants(curve: &FermatCurve, s: &ConfigSymmetry, eps: f64) -> Result<Vec<Complex>> {
    let m = curve.n() + 1;
    if s.perm.len() != m {
        return Err(Error::InvalidPermutation(format!(
            "symmetry acts on {} points, curve has {m} cone points",
            s.perm.len()
        )));
    }
    let anti = s.is_anticonformal();
    let kernel = curve.kernel_basis();
    let mut system: Vec<Vec<Complex>> = Vec::new();
    for row in curve.coefficients() {
        let rho: Vec<Complex> = if anti {
            row.iter().map(|z| z.conj()).collect()
        } else {
            row.clone()
        };
        for kvec in &kernel {
            let mut eq = vec![ZERO; m];
            for (mm, w) in kvec.iter().enumerate() {
                let j = s.perm.apply(mm);
                eq[j] += w * rho[j];
            }
            system.push(eq);
        }
    }
    let basis = nullspace(&system, m, eps);
    if basis.len() != 1 {
        return Err(Error::NoLift { nullity: basis.len() });
    }
    let v = &basis[0];
    let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if v.iter().any(|z| z.norm() <= eps * vmax) {
        return Err(Error::NoLift { nullity: 1 });
    }
    let v0 = v[0];
    Ok(v.iter()
        .map(|z| {
            let t = z / v0;
            if anti {
                t.conj()
            } else {
                t
            }
        })
        .collect())
}

/// All lifts of one orbifold symmetry.
#[derive(Debug, Clone)]
pub struct LiftFamily {
    pub symmetry: ConfigSymmetry,
    pub tk: Vec<Complex>,
    /// Sorted by exponent vector `(e₂, …, e_{n+1})`.
    pub lifts: Vec<CurveAutomorphism>,
}

/// Lift with constants `cᵢ = principal root of tᵢ · e^{2πi·eᵢ/k}`, `e₁ = 0`.
pub fn lift_with_exponents(
    curve: &FermatCurve,
    s: &ConfigSymmetry,
    tk: &[Complex],
    exponents: &[u32],
) -> CurveAutomorphism {
    let k = curve.k();
    let c = tk
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let e = if i == 0 { 0 } else { exponents[i - 1] };
            principal_root(*t, k) * root_of_unity(e as i64, k as u64)
        })
        .collect();
    CurveAutomorphism::new(s.perm.clone(), c, s.is_anticonformal()).expect("t has no zero entries")
}

/// Enumerates the `k^n` lifts of `s`, verifying each one.
pub fn enumerate_lifts(curve: &FermatCurve, s: &ConfigSymmetry, cap: u64, eps: f64) -> Result<LiftFamily> {
    let needed = curve.group_order().unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(Error::CapExceeded { needed, cap });
    }
    let tk = solve_lift_constants(curve, s, eps)?;
    let mut lifts = Vec::with_capacity(needed as usize);
    let mut sampler = AutomorphismSampler::new(curve, DEFAULT_SEED);
    for e in exponent_vectors(curve.k(), curve.n()) {
        let lift = lift_with_exponents(curve, s, &tk, &e);
        if !sampler.check(&lift, eps) {
            return Err(Error::NoLift { nullity: 1 });
        }
        lifts.push(lift);
    }
    Ok(LiftFamily {
        symmetry: s.clone(),
        tk,
        lifts,
    })
}

/// Fixed set of sample points shared by many automorphism checks.
struct AutomorphismSampler<'a> {
    curve: &'a FermatCurve,
    points: Vec<CurvePoint>,
}

impl<'a> AutomorphismSampler<'a> {
    fn new(curve: &'a FermatCurve, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..SAMPLE_POINTS).map(|_| curve.random_point(&mut rng)).collect();
        Self { curve, points }
    }

    fn check(&mut self, a: &CurveAutomorphism, eps: f64) -> bool {
        if a.c.len() != self.curve.n() + 1 {
            return false;
        }
        let t = a.powers(self.curve.k());
        let rows_ok = self.curve.coefficients().iter().all(|row| {
            let v = pulled_back_row(row, &t, &a.perm, a.anticonformal);
            self.curve.rowspace_defect(&v) < eps
        });
        rows_ok && self.points.iter().all(|p| self.curve.on_curve(&a.apply(p), eps))
    }
}

/// Row-space test on the pulled-back equations plus 20 random curve points
/// mapped back onto the curve.
pub fn is_curve_automorphism(curve: &FermatCurve, a: &CurveAutomorphism, eps: f64) -> bool {
    is_curve_automorphism_seeded(curve, a, eps, DEFAULT_SEED)
}

pub fn is_curve_automorphism_seeded(curve: &FermatCurve, a: &CurveAutomorphism, eps: f64, seed: u64) -> bool {
    AutomorphismSampler::new(curve, seed).check(a, eps)
}
