//! Cone-point configurations: normalization, symmetry enumeration, orbit
//! profiles of anticonformal symmetries and the orbit-type equation
//! `n + 1 = 2NA + NB + 2C`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sphere::{
    mobius_through, mobius_to_standard, root_of_unity, Complex, ExtendedMobius, SpherePoint,
};

/// Ordered set of `n + 1 ≥ 3` pairwise distinct points of the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeConfiguration {
    points: Vec<SpherePoint>,
}

impl ConeConfiguration {
    pub fn new(points: Vec<SpherePoint>, eps: f64) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidConfiguration(format!(
                "need at least 3 points, got {}",
                points.len()
            )));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].chordal_distance(&points[j]) <= eps {
                    return Err(Error::InvalidConfiguration(format!(
                        "points {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `n`, one less than the number of points.
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    /// Image of every point under `t`.
    pub fn transformed(&self, t: &ExtendedMobius, eps: f64) -> Result<Self> {
        Self::new(self.points.iter().map(|p| t.apply(p)).collect(), eps)
    }

    /// Index `j` with `points[j]` within `eps` of `p`, if unique.
    pub fn index_of(&self, p: &SpherePoint, eps: f64) -> Option<usize> {
        let mut hits = self
            .points
            .iter()
            .enumerate()
            .filter(|(_, q)| q.chordal_distance(p) <= eps)
            .map(|(j, _)| j);
        let first = hits.next()?;
        hits.next().is_none().then_some(first)
    }

    /// Permutation induced by `t`, or `None` if `t` does not preserve the set.
    pub fn induced_permutation(&self, t: &ExtendedMobius, eps: f64) -> Option<Permutation> {
        let images: Option<Vec<usize>> = self
            .points
            .iter()
            .map(|p| self.index_of(&t.apply(p), eps))
            .collect();
        Permutation::from_images(images?).ok()
    }
}

/// Normalized configuration: the first three points sent to `∞, 0, 1`.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub lambdas: Vec<Complex>,
    /// Conformal map used for the normalization.
    pub used: ExtendedMobius,
}

/// Sends points 1, 2, 3 to `∞, 0, 1` and returns the images of the rest.
pub fn normalize(cfg: &ConeConfiguration, eps: f64) -> Result<Normalized> {
    let p = cfg.points();
    let used = mobius_to_standard(&p[0], &p[1], &p[2], eps)?;
    let fixed = [SpherePoint::infinity(), SpherePoint::zero(), SpherePoint::one()];
    let mut lambdas: Vec<Complex> = Vec::with_capacity(p.len() - 3);
    for (i, q) in p.iter().enumerate().skip(3) {
        let image = used.apply(q);
        if fixed.iter().any(|f| f.chordal_distance(&image) <= eps) {
            return Err(Error::DegenerateConfiguration(format!(
                "point {} collides with 0, 1 or ∞ after normalization",
                i + 1
            )));
        }
        let z = image.to_finite().expect("checked against ∞");
        if lambdas
            .iter()
            .any(|l| SpherePoint::finite(*l).chordal_distance(&image) <= eps)
        {
            return Err(Error::DegenerateConfiguration(format!(
                "point {} collides with another point after normalization",
                i + 1
            )));
        }
        lambdas.push(z);
    }
    Ok(Normalized { lambdas, used })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Conformal,
    Anticonformal,
    Both,
}

impl Orientation {
    fn includes(self, anticonformal: bool) -> bool {
        match self {
            Orientation::Conformal => !anticonformal,
            Orientation::Anticonformal => anticonformal,
            Orientation::Both => true,
        }
    }
}

/// Extended Möbius map preserving a configuration, with the permutation it
/// induces on the points (`perm(i) = j` iff the map sends point `i` to `j`).
#[derive(Debug, Clone)]
pub struct ConfigSymmetry {
    pub map: ExtendedMobius,
    pub perm: Permutation,
}

impl ConfigSymmetry {
    pub fn is_anticonformal(&self) -> bool {
        self.map.is_anticonformal()
    }
}

/// Every extended Möbius map preserving the configuration setwise.
///
/// A map is determined by the images of the first three points, so the
/// sweep over ordered triples of targets is exhaustive. Results are keyed by
/// `(orientation, permutation)` and returned in that order.
pub fn symmetries(
    cfg: &ConeConfiguration,
    orientation: Orientation,
    eps: f64,
) -> Vec<ConfigSymmetry> {
    let p = cfg.points();
    let m = p.len();
    let mut found: BTreeMap<(bool, Permutation), ExtendedMobius> = BTreeMap::new();
    for anticonformal in [false, true] {
        if !orientation.includes(anticonformal) {
            continue;
        }
        let conj = ExtendedMobius::conjugation();
        let sources: Vec<SpherePoint> = if anticonformal {
            p[..3].iter().map(|q| q.conj()).collect()
        } else {
            p[..3].to_vec()
        };
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let Ok(g) = mobius_through(
                        [&sources[0], &sources[1], &sources[2]],
                        [&p[i], &p[j], &p[k]],
                        eps,
                    ) else {
                        continue;
                    };
                    let map = if anticonformal { g.compose(&conj) } else { g };
                    if let Some(perm) = cfg.induced_permutation(&map, eps) {
                        found.entry((anticonformal, perm)).or_insert(map);
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .map(|((_, perm), map)| ConfigSymmetry { map, perm })
        .collect()
}

/// Orbit counts of an anticonformal symmetry in normal form `z ↦ u/z̄`,
/// `u` of multiplicative order `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitProfile {
    /// Order `2M` of the symmetry.
    pub order: u64,
    pub n: u64,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl OrbitProfile {
    pub fn solution(&self) -> OrbitTypeSolution {
        OrbitTypeSolution {
            n: self.n,
            a: self.a,
            b: self.b,
            c: self.c,
        }
    }
}

/// Classifies the orbits of `⟨s⟩` on the configuration.
///
/// Allowed lengths: `N = 1`: 1 (B) and 2 (A); `N = 2`: 2 (B); `N ≥ 3` odd:
/// 2 (C), N (B), 2N (A); `N ≥ 4` even: 2 (C), N (B). At most one orbit of
/// type C.
pub fn orbit_profile(
    s: &ConfigSymmetry,
    cfg: &ConeConfiguration,
    order_cap: u64,
    eps: f64,
) -> Result<OrbitProfile> {
    let nf = s.map.anticonformal_normal_form(order_cap, eps)?;
    let n = nf.n;
    let lengths: Vec<usize> = s.perm.cycles().iter().map(Vec::len).collect();
    let bad = || Error::InconsistentOrbitLengths {
        n,
        lengths: lengths.clone(),
    };
    let (mut a, mut b, mut c) = (0usize, 0usize, 0usize);
    for &len in &lengths {
        let len = len as u64;
        match n {
            1 => match len {
                1 => b += 1,
                2 => a += 1,
                _ => return Err(bad()),
            },
            2 => match len {
                2 => b += 1,
                _ => return Err(bad()),
            },
            _ if len == 2 => c += 1,
            _ if len == n => b += 1,
            _ if n % 2 == 1 && len == 2 * n => a += 1,
            _ => return Err(bad()),
        }
    }
    if c > 1 {
        return Err(bad());
    }
    let profile = OrbitProfile {
        order: nf.order,
        n,
        a,
        b,
        c,
    };
    debug_assert!(profile.solution().satisfies(cfg.n()));
    Ok(profile)
}

/// A solution `(N, A, B, C)` of `n + 1 = 2NA + NB + 2C` under the per-`N`
/// constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitTypeSolution {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "B")]
    pub b: usize,
    #[serde(rename = "C")]
    pub c: usize,
}

impl OrbitTypeSolution {
    pub fn new(n: u64, a: usize, b: usize, c: usize) -> Self {
        Self { n, a, b, c }
    }

    /// The equation plus the constraint set for this `N`.
    pub fn satisfies(&self, cfg_n: usize) -> bool {
        let n = self.n as usize;
        let constraints = match self.n {
            0 => false,
            1 => self.c == 0,
            2 => self.a == 0 && self.c == 0,
            m if m % 2 == 0 => self.a == 0 && self.c <= 1,
            _ => self.c <= 1,
        };
        constraints && cfg_n + 1 == 2 * n * self.a + n * self.b + 2 * self.c
    }
}

/// All `(N, A, B, C)` with `1 ≤ N ≤ max_n`, sorted.
pub fn orbit_type_solutions(n: usize, max_n: u64) -> Vec<OrbitTypeSolution> {
    let total = n + 1;
    let mut out = Vec::new();
    for big_n in 1..=max_n {
        let nn = big_n as usize;
        for a in 0..=total / (2 * nn) {
            for b in 0..=total / nn {
                for c in 0..=1 {
                    let sol = OrbitTypeSolution::new(big_n, a, b, c);
                    if sol.satisfies(n) {
                        out.push(sol);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Random configuration realizing an orbit type for `z ↦ e^{2πi/N}/z̄`.
///
/// Orbits of type C are `{0, ∞}`, type B orbits start on the unit circle
/// (any point for `N = 2`), type A orbits start off it. Points are drawn
/// until every orbit has the prescribed length and all points are well
/// separated.
pub fn realize_orbit_type<R: Rng + ?Sized>(
    sol: &OrbitTypeSolution,
    rng: &mut R,
) -> Result<ConeConfiguration> {
    let n = sol.n;
    let tau = ExtendedMobius::anti_inversion(root_of_unity(1, n));
    let (b_len, a_len) = match n {
        1 => (1, 2),
        2 => (2, 0),
        _ if n % 2 == 1 => (n as usize, 2 * n as usize),
        _ => (n as usize, 0),
    };
    let mut points: Vec<SpherePoint> = Vec::new();
    if sol.c == 1 {
        points.push(SpherePoint::zero());
        points.push(SpherePoint::infinity());
    }
    let mut add_orbit = |on_circle: bool, len: usize, points: &mut Vec<SpherePoint>| -> Result<()> {
        for _ in 0..1000 {
            let theta = rng.gen_range(0.0..2.0 * PI);
            let r = if on_circle { 1.0 } else { rng.gen_range(1.2..2.5) };
            let start = SpherePoint::finite(Complex::from_polar(r, theta));
            let mut orbit = vec![start];
            let mut q = tau.apply(&start);
            while orbit.len() <= len && q.chordal_distance(&start) > 1e-9 {
                orbit.push(q);
                q = tau.apply(&q);
            }
            let separated = orbit.iter().enumerate().all(|(i, x)| {
                orbit[..i].iter().chain(points.iter()).all(|y| x.chordal_distance(y) > 0.05)
            });
            if orbit.len() == len && separated {
                points.extend(orbit);
                return Ok(());
            }
        }
        Err(Error::DegenerateConfiguration("could not place orbit".into()))
    };
    for _ in 0..sol.b {
        // for N = 2 every orbit has length 2; start anywhere off the circle
        add_orbit(n != 2, b_len, &mut points)?;
    }
    for _ in 0..sol.a {
        add_orbit(false, a_len, &mut points)?;
    }
    ConeConfiguration::new(points, 1e-6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{DEFAULT_EPSILON as EPS, ONE};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn pts(zs: &[Option<Complex>]) -> ConeConfiguration {
        ConeConfiguration::new(
            zs.iter()
                .map(|z| z.map_or(SpherePoint::infinity(), SpherePoint::finite))
                .collect(),
            EPS,
        )
        .unwrap()
    }

    fn c(re: f64, im: f64) -> Option<Complex> {
        Some(Complex::new(re, im))
    }

    fn omega() -> Complex {
        root_of_unity(1, 3)
    }

    #[test]
    fn normalize_examples() {
        let cfg = pts(&[None, c(0.0, 0.0), c(1.0, 0.0), c(-6.0, 0.0)]);
        let n = normalize(&cfg, EPS).unwrap();
        assert!((n.lambdas[0] - Complex::new(-6.0, 0.0)).norm() < 1e-12);
        assert!(n.used.is_identity(EPS));

        let cfg = pts(&[c(0.0, 0.0), None, c(1.0, 0.0), c(2.0, 0.0)]);
        let n = normalize(&cfg, EPS).unwrap();
        assert!((n.lambdas[0] - Complex::new(0.5, 0.0)).norm() < 1e-12);
        assert!(n
            .used
            .approx_eq(&ExtendedMobius::conformal(0.0.into(), ONE, ONE, 0.0.into()), EPS));

        // normalizing an already normalized configuration is the identity
        let again = pts(&[None, c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)]);
        assert!(normalize(&again, EPS).unwrap().used.is_identity(EPS));
    }

    #[test]
    fn invalid_configurations() {
        assert!(ConeConfiguration::new(vec![SpherePoint::zero(), SpherePoint::one()], EPS).is_err());
        assert!(ConeConfiguration::new(
            vec![SpherePoint::zero(), SpherePoint::one(), SpherePoint::finite(Complex::new(1.0, 1e-12))],
            EPS
        )
        .is_err());
    }

    #[test]
    fn humbert_d_configuration_has_expected_anticonformal_maps() {
        let w = omega();
        let cfg = pts(&[None, c(0.0, 0.0), c(1.0, 0.0), Some(w), Some(w * w)]);
        let anti = symmetries(&cfg, Orientation::Anticonformal, EPS);
        for target in [ONE, w] {
            let t = ExtendedMobius::anti_inversion(target);
            assert!(anti.iter().any(|s| s.map.approx_eq(&t, 1e-8)), "missing {t}");
        }
        let tau = anti
            .iter()
            .find(|s| s.map.approx_eq(&ExtendedMobius::anti_inversion(w), 1e-8))
            .unwrap();
        let profile = orbit_profile(tau, &cfg, 240, EPS).unwrap();
        assert_eq!(
            (profile.order, profile.n, profile.a, profile.b, profile.c),
            (6, 3, 0, 1, 1)
        );
    }

    #[test]
    fn identity_always_present() {
        let cfg = pts(&[c(0.3, 0.1), c(-1.0, 2.0), c(4.0, -0.5), c(0.9, 0.9)]);
        let conf = symmetries(&cfg, Orientation::Conformal, EPS);
        assert!(conf.iter().any(|s| s.map.is_identity(EPS) && s.perm.is_identity()));
    }

    #[test]
    fn generic_configuration_has_no_anticonformal_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let zs: Vec<Option<Complex>> = (0..5)
                .map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
                .collect();
            let cfg = pts(&zs);
            assert!(symmetries(&cfg, Orientation::Anticonformal, EPS).is_empty());
            // nearby perturbation is generic too
            let perturbed: Vec<_> = zs.iter().map(|z| z.map(|z| z + 1e-4)).collect();
            assert!(symmetries(&pts(&perturbed), Orientation::Anticonformal, EPS).is_empty());
        }
    }

    #[test]
    fn five_points_on_circle_profile() {
        let angles = [0.3, 1.1, 2.0, 3.5, 5.0];
        let zs: Vec<_> = angles.iter().map(|&t| Some(Complex::from_polar(1.0, t))).collect();
        let cfg = pts(&zs);
        let anti = symmetries(&cfg, Orientation::Anticonformal, EPS);
        let refl = anti
            .iter()
            .find(|s| s.map.approx_eq(&ExtendedMobius::anti_inversion(ONE), 1e-8))
            .unwrap();
        let p = orbit_profile(refl, &cfg, 240, EPS).unwrap();
        assert_eq!((p.order, p.n, p.a, p.b, p.c), (2, 1, 0, 5, 0));
    }

    #[test]
    fn case_iii_profile() {
        let l = 1.5;
        let i = Complex::i();
        let cfg = pts(&[
            c(0.0, 0.0),
            None,
            c(l, 0.0),
            Some(i / l),
            c(-l, 0.0),
            Some(-i / l),
        ]);
        let anti = symmetries(&cfg, Orientation::Anticonformal, EPS);
        let s = anti
            .iter()
            .find(|s| s.map.approx_eq(&ExtendedMobius::anti_inversion(i), 1e-8))
            .unwrap();
        let p = orbit_profile(s, &cfg, 1440, EPS).unwrap();
        assert_eq!((p.order, p.n, p.a, p.b, p.c), (4, 4, 0, 1, 1));
    }

    fn brute_force_solutions(n: usize, max_n: u64) -> BTreeSet<OrbitTypeSolution> {
        // independent enumeration straight from the case list
        let mut out = BTreeSet::new();
        for big_n in 1..=max_n {
            for a in 0..=n + 1 {
                for b in 0..=n + 1 {
                    for c in 0..=n + 1 {
                        let ok = match big_n {
                            1 => c == 0,
                            2 => a == 0 && c == 0,
                            m if m % 2 == 0 => a == 0 && c <= 1,
                            _ => c <= 1,
                        };
                        let m = big_n as usize;
                        if ok && 2 * m * a + m * b + 2 * c == n + 1 {
                            out.insert(OrbitTypeSolution::new(big_n, a, b, c));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn orbit_tables() {
        let s = |v: &[(u64, usize, usize, usize)]| -> Vec<OrbitTypeSolution> {
            v.iter().map(|&(n, a, b, c)| OrbitTypeSolution::new(n, a, b, c)).collect()
        };
        assert_eq!(
            orbit_type_solutions(4, 20),
            s(&[(1, 0, 5, 0), (1, 1, 3, 0), (1, 2, 1, 0), (3, 0, 1, 1), (5, 0, 1, 0)])
        );
        let five: Vec<_> = orbit_type_solutions(5, 20).into_iter().filter(|x| x.n >= 3).collect();
        assert_eq!(five, s(&[(3, 0, 2, 0), (3, 1, 0, 0), (4, 0, 1, 1), (6, 0, 1, 0)]));
        assert_eq!(
            orbit_type_solutions(2, 20),
            s(&[(1, 0, 3, 0), (1, 1, 1, 0), (3, 0, 1, 0)])
        );
        for n in 2..12 {
            let fast: BTreeSet<_> = orbit_type_solutions(n, 2 * n as u64 + 2).into_iter().collect();
            assert_eq!(fast, brute_force_solutions(n, 2 * n as u64 + 2), "n = {n}");
        }
    }

    #[test]
    fn realized_orbit_types_have_their_profile() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=7 {
            for sol in orbit_type_solutions(n, 12) {
                let cfg = realize_orbit_type(&sol, &mut rng).unwrap();
                assert_eq!(cfg.n(), n);
                let tau = ExtendedMobius::anti_inversion(root_of_unity(1, sol.n));
                let perm = cfg.induced_permutation(&tau, EPS).expect("τ preserves the set");
                let s = ConfigSymmetry { map: tau, perm };
                let p = orbit_profile(&s, &cfg, 40320, EPS).unwrap();
                assert_eq!(p.solution(), sol);
            }
        }
    }
}
