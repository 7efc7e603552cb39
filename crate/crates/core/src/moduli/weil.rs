use crate::curve::FermatCurve;
use crate::error::{Error, Result};
use crate::lift::CurveAutomorphism;
use crate::sphere::Complex;

/// Descent data `{f_id, f_σ}` for `Gal(ℂ/ℝ) = {id, σ}`.
///
/// `f_sigma` is the projective linear map `X → X^σ` obtained as `J ∘ τ` from
/// an anticonformal automorphism `τ` (`J` is coordinatewise conjugation);
/// `f_id` is always the identity.
#[derive(Debug, Clone)]
pub struct WeilFamily {
    f_sigma: CurveAutomorphism,
}

impl WeilFamily {
    /// `f_σ = J ∘ τ`; conjugating `τ`'s constants gives a conformal linear map.
    pub fn from_anticonformal(tau: &CurveAutomorphism) -> Option<Self> {
        if !tau.is_anticonformal() {
            return None;
        }
        let j = CurveAutomorphism::conjugation(tau.constants().len());
        Some(Self {
            f_sigma: j.compose(tau),
        })
    }

    /// Family built from `J` itself, meaningful for curves with real equations.
    pub fn conjugation(m: usize) -> Self {
        Self::from_anticonformal(&CurveAutomorphism::conjugation(m)).expect("J is anticonformal")
    }

    pub fn f_sigma(&self) -> &CurveAutomorphism {
        &self.f_sigma
    }
}

/// Checks `f_{στ} = f_τ^σ ∘ f_σ`. For the order-two Galois group the only
/// nontrivial instance is `f_σ^σ ∘ f_σ = f_id = id`, where `f_σ^σ` has
/// conjugated coefficients.
pub fn check_weil_cocycle(curve: &FermatCurve, w: &WeilFamily, eps: f64) -> Result<bool> {
    let f = &w.f_sigma;
    if f.is_anticonformal() || f.constants().len() != curve.n() + 1 {
        return Err(Error::NotAMapToConjugate);
    }
    // f maps X to X̄ iff the conjugated equations pulled back by f lie in
    // the row space of the original equations.
    let t = f.powers(curve.k());
    for row in curve.coefficients() {
        let v: Vec<Complex> = (0..row.len())
            .map(|m| {
                let j = f.perm().apply(m);
                row[j].conj() * t[j]
            })
            .collect();
        if curve.rowspace_defect(&v) >= eps {
            return Err(Error::NotAMapToConjugate);
        }
    }
    let conj_coeffs: Vec<Complex> = f.constants().iter().map(|z| z.conj()).collect();
    let f_conj = CurveAutomorphism::new(f.perm().clone(), conj_coeffs, false).expect("nonzero");
    Ok(f_conj.compose(f).is_identity(eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{symmetries, Orientation};
    use crate::lift::enumerate_lifts;
    use crate::sphere::{ExtendedMobius, DEFAULT_EPSILON as EPS};

    #[test]
    fn conjugation_family_on_real_curve() {
        let c = FermatCurve::build(2, vec![Complex::new(-2.0, 0.0), Complex::new(5.0, 0.0)], EPS).unwrap();
        assert_eq!(check_weil_cocycle(&c, &WeilFamily::conjugation(5), EPS), Ok(true));
    }

    #[test]
    fn conjugation_family_rejected_on_non_real_equations() {
        let c = FermatCurve::build(2, vec![Complex::new(-2.0, 1.0), Complex::new(5.0, 0.0)], EPS).unwrap();
        assert_eq!(
            check_weil_cocycle(&c, &WeilFamily::conjugation(5), EPS),
            Err(Error::NotAMapToConjugate)
        );
    }

    #[test]
    fn involution_gives_cocycle() {
        let l2 = Complex::new(-2.0, 2f64.sqrt());
        let l1 = Complex::new(-6.0, 0.0);
        let c = FermatCurve::build(3, vec![l1, l2, -l2], EPS).unwrap();
        let s = symmetries(&c.cone_points(), Orientation::Anticonformal, EPS)
            .into_iter()
            .find(|s| s.map.approx_eq(&ExtendedMobius::anti_inversion(l1), 1e-8))
            .unwrap();
        let fam = enumerate_lifts(&c, &s, 1 << 20, EPS).unwrap();
        let mut saw_true = false;
        for tau in &fam.lifts {
            let w = WeilFamily::from_anticonformal(tau).unwrap();
            let ok = check_weil_cocycle(&c, &w, EPS).unwrap();
            assert_eq!(ok, tau.is_anticonformal_involution(EPS));
            saw_true |= ok;
        }
        assert!(saw_true);
    }
}
