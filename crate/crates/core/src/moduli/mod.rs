//! Field of moduli and field of definition over `ℂ/ℝ`.
//!
//! The field of moduli is `ℝ` iff the curve has an anticonformal
//! automorphism, and `ℝ` is then a field of definition iff there is an
//! anticonformal involution. Anticonformal automorphisms normalizing `H`
//! are exactly the lifts of anticonformal symmetries of the cone points,
//! so both questions reduce to a finite search: every anticonformal
//! configuration symmetry times its `k^n` lifts.

mod verify;
mod weil;

pub use verify::{
    humbert_c_configuration, humbert_rows, humbert_sample, involution_in_family, samples, symmetry_matching, theorem1_lift, verify_humbert,
    verify_theorem, CaseReport, Expectation, P5Case, TheoremReport, TheoremTag,
};
pub use weil::{check_weil_cocycle, WeilFamily};

use serde::{Deserialize, Serialize};

use crate::config::{symmetries, ConfigSymmetry, Orientation};
use crate::curve::FermatCurve;
use crate::error::{Error, Result};
use crate::lift::{enumerate_lifts, is_curve_automorphism_seeded, CurveAutomorphism, DEFAULT_LIFT_CAP, DEFAULT_SEED};
use crate::sphere::{default_order_cap, DEFAULT_EPSILON};

/// Numerical settings for a classification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub epsilon: f64,
    /// Defaults to `2·(n+1)!` (at most 40320) for the configuration at hand.
    pub order_cap: Option<u64>,
    pub lift_cap: u64,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            order_cap: None,
            lift_cap: DEFAULT_LIFT_CAP,
            seed: DEFAULT_SEED,
        }
    }
}

impl Settings {
    pub fn order_cap_for(&self, points: usize) -> u64 {
        self.order_cap.unwrap_or_else(|| default_order_cap(points))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "field_of_moduli_not_R")]
    FieldOfModuliNotR,
    #[serde(rename = "moduli_R_and_real")]
    ModuliRAndReal,
    #[serde(rename = "moduli_R_not_real")]
    ModuliRNotReal,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::FieldOfModuliNotR => "field_of_moduli_not_R",
            Verdict::ModuliRAndReal => "moduli_R_and_real",
            Verdict::ModuliRNotReal => "moduli_R_not_real",
        }
    }

    pub fn field_of_moduli_is_real(&self) -> bool {
        !matches!(self, Verdict::FieldOfModuliNotR)
    }
}

/// Whether the negative direction of the verdict depends on `H` being
/// normal in the full automorphism group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Assumption {
    Unconditional,
    ConditionalOnNormalizer,
}

impl Assumption {
    /// Unconditional for `k` prime with `(n−1)(k−1) > 2` (this includes the
    /// Humbert type `(2,4)`).
    pub fn for_type(k: u32, n: usize) -> Self {
        let hyperbolic = (n - 1) * (k as usize - 1) > 2;
        if (is_prime(k) && hyperbolic) || (k, n) == (2, 4) {
            Assumption::Unconditional
        } else {
            Assumption::ConditionalOnNormalizer
        }
    }
}

fn is_prime(k: u32) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    pub antisymmetries: usize,
    pub lifts_scanned: u64,
}

#[derive(Debug, Clone)]
pub struct ModuliClassification {
    pub verdict: Verdict,
    /// Involution for `ModuliRAndReal`, an anticonformal automorphism of
    /// least order for `ModuliRNotReal`.
    pub witness: Option<CurveAutomorphism>,
    pub witness_order: Option<u64>,
    pub exhaustion: Exhaustion,
    pub assumption: Assumption,
    pub epsilon: f64,
}

/// Outcome of the involution search.
#[derive(Debug, Clone)]
pub struct InvolutionSearch {
    pub involution: Option<CurveAutomorphism>,
    /// Anticonformal lift of least order seen (first in scan order).
    pub least_order_lift: Option<(CurveAutomorphism, u64)>,
    pub exhaustion: Exhaustion,
}

/// Anticonformal configuration symmetries sorted by the order of the map
/// (ties keep the permutation order).
fn anticonformal_symmetries(curve: &FermatCurve, settings: &Settings) -> Result<Vec<(ConfigSymmetry, u64)>> {
    let cfg = curve.cone_points();
    let cap = settings.order_cap_for(cfg.len());
    let mut out = symmetries(&cfg, Orientation::Anticonformal, settings.epsilon)
        .into_iter()
        .map(|s| s.map.order(cap, settings.epsilon).map(|o| (s, o)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|(_, o)| *o);
    Ok(out)
}

fn search(curve: &FermatCurve, settings: &Settings, stop_at_first: bool) -> Result<InvolutionSearch> {
    let eps = settings.epsilon;
    let antis = anticonformal_symmetries(curve, settings)?;
    let mut result = InvolutionSearch {
        involution: None,
        least_order_lift: None,
        exhaustion: Exhaustion {
            antisymmetries: antis.len(),
            lifts_scanned: 0,
        },
    };
    let k = curve.k() as u64;
    for (s, map_order) in &antis {
        let family = enumerate_lifts(curve, s, settings.lift_cap, eps)?;
        // σ² ≠ id rules out involutions for the whole coset
        let perm_ok = s.perm.compose(&s.perm).is_identity();
        for lift in &family.lifts {
            result.exhaustion.lifts_scanned += 1;
            if result.least_order_lift.as_ref().is_none_or(|(_, o)| *o > 2) {
                let order = lift.order(map_order * k, eps)?;
                if result.least_order_lift.as_ref().is_none_or(|(_, o)| order < *o) {
                    result.least_order_lift = Some((lift.clone(), order));
                }
            }
            if perm_ok && result.involution.is_none() && lift.is_anticonformal_involution(eps) {
                if !is_curve_automorphism_seeded(curve, lift, eps, settings.seed) {
                    return Err(Error::NoLift { nullity: 1 });
                }
                result.involution = Some(lift.clone());
                if stop_at_first {
                    return Ok(result);
                }
            }
        }
    }
    Ok(result)
}

/// Searches every anticonformal lift for an involution.
pub fn find_anticonformal_involution(curve: &FermatCurve, settings: &Settings) -> Result<InvolutionSearch> {
    check_hyperbolic(curve)?;
    search(curve, settings, true)
}

fn check_hyperbolic(curve: &FermatCurve) -> Result<()> {
    if curve.is_hyperbolic() {
        Ok(())
    } else {
        Err(Error::NonHyperbolic {
            k: curve.k(),
            n: curve.n(),
        })
    }
}

/// Three-way classification with witness and exhaustion counts.
pub fn classify(curve: &FermatCurve, settings: &Settings) -> Result<ModuliClassification> {
    check_hyperbolic(curve)?;
    let assumption = Assumption::for_type(curve.k(), curve.n());
    let found = search(curve, settings, true)?;
    let (verdict, witness, witness_order) = if found.exhaustion.antisymmetries == 0 {
        (Verdict::FieldOfModuliNotR, None, None)
    } else if let Some(inv) = found.involution {
        (Verdict::ModuliRAndReal, Some(inv), Some(2))
    } else {
        let (lift, order) = found.least_order_lift.expect("at least one lift scanned");
        (Verdict::ModuliRNotReal, Some(lift), Some(order))
    };
    Ok(ModuliClassification {
        verdict,
        witness,
        witness_order,
        exhaustion: found.exhaustion,
        assumption,
        epsilon: settings.epsilon,
    })
}
