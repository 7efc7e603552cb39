//! Points of the Riemann sphere and extended Möbius transformations.
//!
//! Points are projective pairs `[u:v]`, so infinity needs no special case.
//! An [`ExtendedMobius`] is a 2×2 complex matrix together with an orientation
//! flag; anticonformal maps conjugate their argument before the matrix acts.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Default relative tolerance for every numerical comparison.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Ceiling applied to every order computation.
pub const ORDER_CAP_CEILING: u64 = 40320;

pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);
pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);

/// `exp(2πi·num/den)`.
pub fn root_of_unity(num: i64, den: u64) -> Complex {
    Complex::from_polar(1.0, 2.0 * PI * num as f64 / den as f64)
}

/// Default order cap for a configuration of `size` points: `2·size!`, at
/// most [`ORDER_CAP_CEILING`].
pub fn default_order_cap(size: usize) -> u64 {
    let mut f: u64 = 2;
    for i in 2..=size as u64 {
        f = f.saturating_mul(i);
        if f >= ORDER_CAP_CEILING {
            return ORDER_CAP_CEILING;
        }
    }
    f
}

/// Compares two complex vectors up to a common nonzero scalar.
///
/// Both vectors are scaled by the entry of maximal modulus in `a`; entries
/// must then agree within `eps` relative to that modulus.
pub fn projectively_equal(a: &[Complex], b: &[Complex], eps: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (idx, amax) = match max_modulus(a) {
        Some(m) if m.1 > 0.0 => m,
        _ => return false,
    };
    let bmax = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if b[idx].norm() <= eps * bmax || bmax == 0.0 {
        return false;
    }
    let scale = a[idx] / b[idx];
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y * scale).norm() <= eps * amax)
}

pub(crate) fn max_modulus(v: &[Complex]) -> Option<(usize, f64)> {
    v.iter()
        .map(|z| z.norm())
        .enumerate()
        .fold(None, |acc, (i, m)| match acc {
            Some((_, best)) if best >= m => acc,
            _ => Some((i, m)),
        })
}

/// Point `[u:v]` of the complex projective line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    u: Complex,
    v: Complex,
}

impl SpherePoint {
    /// Builds `[u:v]`, returning `None` for `(0,0)` or non-finite input.
    pub fn new(u: Complex, v: Complex) -> Option<Self> {
        let finite = u.re.is_finite() && u.im.is_finite() && v.re.is_finite() && v.im.is_finite();
        if !finite || (u == ZERO && v == ZERO) {
            return None;
        }
        Some(Self { u, v }.canonical())
    }

    pub fn finite(z: Complex) -> Self {
        Self { u: z, v: ONE }
    }

    pub fn infinity() -> Self {
        Self { u: ONE, v: ZERO }
    }

    pub fn zero() -> Self {
        Self::finite(ZERO)
    }

    pub fn one() -> Self {
        Self::finite(ONE)
    }

    pub fn coords(&self) -> (Complex, Complex) {
        (self.u, self.v)
    }

    /// Representative with `v = 1`, or `[1:0]` at infinity. A point whose
    /// affine value overflows is treated as infinity.
    fn canonical(self) -> Self {
        if self.v == ZERO {
            return Self::infinity();
        }
        let z = self.u / self.v;
        if z.re.is_finite() && z.im.is_finite() {
            Self::finite(z)
        } else {
            Self::infinity()
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.v == ZERO
    }

    /// Affine coordinate, `None` at infinity.
    pub fn to_finite(&self) -> Option<Complex> {
        if self.is_infinity() {
            None
        } else {
            Some(self.u / self.v)
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            u: self.u.conj(),
            v: self.v.conj(),
        }
    }

    /// Chordal distance on the unit sphere (values in `[0, 2]`).
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        let (a, b) = (self.u, self.v);
        let (c, d) = (other.u, other.v);
        let num = (a * d - b * c).norm();
        let den = (a.norm_sqr() + b.norm_sqr()).sqrt() * (c.norm_sqr() + d.norm_sqr()).sqrt();
        2.0 * num / den
    }

    pub fn approx_eq(&self, other: &SpherePoint, eps: f64) -> bool {
        self.chordal_distance(other) <= eps
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::literal::format_point(self))
    }
}

/// Möbius transformation, optionally precomposed with complex conjugation.
///
/// The conformal map is `z ↦ (az + b)/(cz + d)`; the anticonformal one is
/// `z ↦ (a z̄ + b)/(c z̄ + d)`. Matrices are stored unnormalized; equality is
/// projective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedMobius {
    m: [[Complex; 2]; 2],
    anticonformal: bool,
}

impl ExtendedMobius {
    /// Returns `None` when the determinant is (relatively) zero.
    pub fn new(m: [[Complex; 2]; 2], anticonformal: bool) -> Option<Self> {
        let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if !scale.is_finite() || scale <= 0.0 || det.norm() <= 1e-14 * scale * scale {
            return None;
        }
        Some(Self { m, anticonformal })
    }

    pub fn identity() -> Self {
        Self {
            m: [[ONE, ZERO], [ZERO, ONE]],
            anticonformal: false,
        }
    }

    /// Complex conjugation `z ↦ z̄`.
    pub fn conjugation() -> Self {
        Self {
            anticonformal: true,
            ..Self::identity()
        }
    }

    /// `z ↦ (az+b)/(cz+d)`; panics on a singular matrix.
    pub fn conformal(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Self::new([[a, b], [c, d]], false).expect("singular Möbius matrix")
    }

    /// `z ↦ (a z̄ + b)/(c z̄ + d)`; panics on a singular matrix.
    pub fn anticonformal(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Self::new([[a, b], [c, d]], true).expect("singular Möbius matrix")
    }

    /// `z ↦ w / z̄`.
    pub fn anti_inversion(w: Complex) -> Self {
        Self::anticonformal(ZERO, w, ONE, ZERO)
    }

    /// `z ↦ w·z`.
    pub fn rotation(w: Complex) -> Self {
        Self::conformal(w, ZERO, ZERO, ONE)
    }

    pub fn matrix(&self) -> [[Complex; 2]; 2] {
        self.m
    }

    pub fn is_anticonformal(&self) -> bool {
        self.anticonformal
    }

    fn entries(&self) -> [Complex; 4] {
        [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]
    }

    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        let (mut u, mut v) = p.coords();
        if self.anticonformal {
            u = u.conj();
            v = v.conj();
        }
        let [[a, b], [c, d]] = self.m;
        SpherePoint { u: a * u + b * v, v: c * u + d * v }.canonical()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ExtendedMobius) -> ExtendedMobius {
        let rhs = if self.anticonformal {
            conj_matrix(other.m)
        } else {
            other.m
        };
        ExtendedMobius {
            m: rescale(mat_mul(self.m, rhs)),
            anticonformal: self.anticonformal ^ other.anticonformal,
        }
    }

    pub fn inverse(&self) -> ExtendedMobius {
        let [[a, b], [c, d]] = self.m;
        let adj = [[d, -b], [-c, a]];
        ExtendedMobius {
            m: if self.anticonformal { conj_matrix(adj) } else { adj },
            anticonformal: self.anticonformal,
        }
    }

    /// Same orientation and matrices equal up to a nonzero scalar.
    pub fn approx_eq(&self, other: &ExtendedMobius, eps: f64) -> bool {
        self.anticonformal == other.anticonformal
            && projectively_equal(&self.entries(), &other.entries(), eps)
    }

    pub fn is_identity(&self, eps: f64) -> bool {
        self.approx_eq(&Self::identity(), eps)
    }

    /// Smallest `q ≥ 1` with `self^q` the identity.
    pub fn order(&self, cap: u64, eps: f64) -> Result<u64> {
        let mut power = *self;
        for q in 1..=cap.min(ORDER_CAP_CEILING) {
            if power.is_identity(eps) {
                return Ok(q);
            }
            power = self.compose(&power);
        }
        Err(Error::NotFiniteOrder { cap })
    }

    /// Conjugates this anticonformal map of finite order to `z ↦ u/z̄` with
    /// `u` a root of unity of multiplicative order `N`.
    pub fn anticonformal_normal_form(&self, cap: u64, eps: f64) -> Result<NormalForm> {
        if !self.anticonformal {
            return Err(Error::NotAnticonformal);
        }
        let order = self.order(cap, eps)?;
        debug_assert!(order % 2 == 0);
        let half = order / 2;
        let square = self.compose(self);

        let conjugator = if half == 1 {
            self.involution_conjugator(eps)?
        } else {
            // t swaps the two fixed points of the elliptic map t²; send them
            // to 0 and ∞ so that t becomes z ↦ α/z̄.
            let (f0, f1) = fixed_points(&square).ok_or(Error::NotFiniteOrder { cap })?;
            let g = mobius_sending_to_zero_infinity(&f0, &f1)?;
            let t = g.compose(self).compose(&g.inverse());
            let [[a, b], [c, d]] = t.m;
            let alpha = b / c;
            if !(alpha.norm().is_finite()) || a.norm() > 1e-6 * b.norm() || d.norm() > 1e-6 * c.norm()
            {
                return Err(Error::NotFiniteOrder { cap });
            }
            let s = alpha.norm().sqrt().recip();
            ExtendedMobius::rotation(Complex::new(s, 0.0)).compose(&g)
        };

        let mut conjugator = conjugator;
        let mut parameter = normal_parameter(&conjugator.compose(self).compose(&conjugator.inverse()));
        // z ↦ 1/z conjugates u/z̄ to ū/z̄; prefer arg(u) in [0, π].
        if parameter.im < 0.0 {
            conjugator = ExtendedMobius::conformal(ZERO, ONE, ONE, ZERO).compose(&conjugator);
            parameter = parameter.conj();
        }
        let n = if half == 1 {
            if parameter.re > 0.0 {
                1
            } else {
                2
            }
        } else {
            root_order(parameter, order).ok_or(Error::NotFiniteOrder { cap })?
        };
        if ExtendedMobius::anti_inversion(parameter).approx_eq(self, eps) {
            conjugator = ExtendedMobius::identity();
        }
        Ok(NormalForm {
            n,
            order,
            parameter,
            conjugator,
        })
    }

    /// Conjugator taking an anticonformal involution to `1/z̄` (reflection)
    /// or `-1/z̄` (fixed-point free).
    fn involution_conjugator(&self, eps: f64) -> Result<ExtendedMobius> {
        let [[a, b], [c, d]] = self.m;
        let mm = mat_mul(self.m, conj_matrix(self.m));
        // t² = id means M·M̄ = λI with λ real; the sign of λ is invariant.
        let lambda = if mm[0][0].norm() >= mm[1][1].norm() {
            mm[0][0]
        } else {
            mm[1][1]
        };
        if lambda.re > 0.0 {
            // y + M ȳ is fixed for every y once M·M̄ = I.
            let scale = lambda.re.sqrt().recip();
            let m = [[a * scale, b * scale], [c * scale, d * scale]];
            // The fixed vectors y + Mȳ form a totally real plane W ⊂ ℂ²;
            // two ℝ-independent vectors of W are ℂ-independent, so they
            // and their sum give three distinct fixed points.
            let basis = [(ONE, ZERO), (Complex::i(), ZERO), (ZERO, ONE), (ZERO, Complex::i())];
            let images: Vec<(Complex, Complex)> = basis
                .iter()
                .map(|&(u, v)| {
                    (
                        u + m[0][0] * u.conj() + m[0][1] * v.conj(),
                        v + m[1][0] * u.conj() + m[1][1] * v.conj(),
                    )
                })
                .collect();
            let mut best = (0.0, 0, 1);
            for i in 0..4 {
                for j in i + 1..4 {
                    let d = (images[i].0 * images[j].1 - images[i].1 * images[j].0).norm();
                    if d > best.0 {
                        best = (d, i, j);
                    }
                }
            }
            let (w1, w2) = (images[best.1], images[best.2]);
            let fixed: Vec<SpherePoint> = [w1, w2, (w1.0 + w2.0, w1.1 + w2.1)]
                .into_iter()
                .map(|(u, v)| SpherePoint::new(u, v).ok_or(Error::DegenerateTriple))
                .collect::<Result<_>>()?;
            let to_std = mobius_to_standard(&fixed[0], &fixed[1], &fixed[2], eps)?;
            let circle = [
                SpherePoint::one(),
                SpherePoint::finite(Complex::i()),
                SpherePoint::finite(-ONE),
            ];
            let from_std = mobius_to_standard(&circle[0], &circle[1], &circle[2], eps)?.inverse();
            Ok(from_std.compose(&to_std))
        } else {
            let z0 = [SpherePoint::zero(), SpherePoint::one(), SpherePoint::infinity()]
                .into_iter()
                .find(|p| p.chordal_distance(&self.apply(p)) > 1e-3)
                .ok_or(Error::DegenerateTriple)?;
            let g = mobius_sending_to_zero_infinity(&z0, &self.apply(&z0))?;
            let t = g.compose(self).compose(&g.inverse());
            let alpha = t.m[0][1] / t.m[1][0];
            let s = alpha.norm().sqrt().recip();
            Ok(ExtendedMobius::rotation(Complex::new(s, 0.0)).compose(&g))
        }
    }
}

impl fmt::Display for ExtendedMobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::literal::format_complex as c;
        let [[a, b], [cc, d]] = self.m;
        let z = if self.anticonformal { "conj(z)" } else { "z" };
        write!(
            f,
            "z -> ({}*{z} + {}) / ({}*{z} + {})",
            c(a),
            c(b),
            c(cc),
            c(d)
        )
    }
}

/// Result of [`ExtendedMobius::anticonformal_normal_form`].
#[derive(Debug, Clone, Copy)]
pub struct NormalForm {
    /// Multiplicative order of `parameter`.
    pub n: u64,
    /// Order `2M` of the transformation.
    pub order: u64,
    /// Unit-modulus `u` with `conjugator ∘ t ∘ conjugator⁻¹ = (z ↦ u/z̄)`.
    pub parameter: Complex,
    pub conjugator: ExtendedMobius,
}

/// Conformal map sending `p ↦ ∞`, `q ↦ 0`, `r ↦ 1`.
pub fn mobius_to_standard(
    p: &SpherePoint,
    q: &SpherePoint,
    r: &SpherePoint,
    eps: f64,
) -> Result<ExtendedMobius> {
    if p.chordal_distance(q) <= eps || p.chordal_distance(r) <= eps || q.chordal_distance(r) <= eps
    {
        return Err(Error::DegenerateTriple);
    }
    // L_w(x) = x₁w₂ − x₂w₁ vanishes exactly at w.
    let lin = |w: &SpherePoint| {
        let (w1, w2) = w.coords();
        [w2, -w1]
    };
    let eval = |l: [Complex; 2], x: &SpherePoint| {
        let (x1, x2) = x.coords();
        l[0] * x1 + l[1] * x2
    };
    let (lp, lq) = (lin(p), lin(q));
    let (sp, sq) = (eval(lp, r), eval(lq, r));
    let m = [[lq[0] * sp, lq[1] * sp], [lp[0] * sq, lp[1] * sq]];
    ExtendedMobius::new(rescale(m), false).ok_or(Error::DegenerateTriple)
}

/// Conformal map sending the triple `from` to the triple `to`.
pub fn mobius_through(from: [&SpherePoint; 3], to: [&SpherePoint; 3], eps: f64) -> Result<ExtendedMobius> {
    let a = mobius_to_standard(from[0], from[1], from[2], eps)?;
    let b = mobius_to_standard(to[0], to[1], to[2], eps)?;
    Ok(b.inverse().compose(&a))
}

fn mobius_sending_to_zero_infinity(zero: &SpherePoint, inf: &SpherePoint) -> Result<ExtendedMobius> {
    // Rows scale independently without moving the zero or the pole.
    let row = |p: &SpherePoint| {
        let (x1, x2) = p.coords();
        let s = x1.norm().max(x2.norm());
        [x2 / s, -x1 / s]
    };
    ExtendedMobius::new([row(zero), row(inf)], false).ok_or(Error::DegenerateTriple)
}

/// Fixed points of a conformal non-parabolic, non-identity map.
fn fixed_points(t: &ExtendedMobius) -> Option<(SpherePoint, SpherePoint)> {
    let [[a, b], [c, d]] = t.m;
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    let mu0 = (tr + disc) / 2.0;
    let mu1 = (tr - disc) / 2.0;
    let eig = |mu: Complex| {
        let v1 = (b, mu - a);
        let v2 = (mu - d, c);
        let n1 = v1.0.norm() + v1.1.norm();
        let n2 = v2.0.norm() + v2.1.norm();
        let ((u, v), s) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
        SpherePoint::new(u / s, v / s)
    };
    let (p, q) = (eig(mu0)?, eig(mu1)?);
    if p.chordal_distance(&q) < 1e-8 {
        return None;
    }
    Some((p, q))
}

/// Parameter `u/|u|` of a map already of the form `z ↦ u/z̄`.
fn normal_parameter(t: &ExtendedMobius) -> Complex {
    let w = t.m[0][1] / t.m[1][0];
    w / w.norm()
}

/// Multiplicative order of a unit complex number known to divide `bound`.
fn root_order(u: Complex, bound: u64) -> Option<u64> {
    (1..=bound)
        .filter(|d| bound.is_multiple_of(*d))
        .find(|&d| (u.powu(d as u32) - ONE).norm() < 1e-5)
}

fn mat_mul(x: [[Complex; 2]; 2], y: [[Complex; 2]; 2]) -> [[Complex; 2]; 2] {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

fn conj_matrix(m: [[Complex; 2]; 2]) -> [[Complex; 2]; 2] {
    [[m[0][0].conj(), m[0][1].conj()], [m[1][0].conj(), m[1][1].conj()]]
}

/// Divides by the largest modulus so repeated products stay bounded.
fn rescale(m: [[Complex; 2]; 2]) -> [[Complex; 2]; 2] {
    let s = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if s > 0.0 && s.is_finite() {
        let f = Complex::new(s.recip(), 0.0);
        [[m[0][0] * f, m[0][1] * f], [m[1][0] * f, m[1][1] * f]]
    } else {
        m
    }
}
