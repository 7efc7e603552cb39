//! JSON file and report schemas.

use serde::{Deserialize, Serialize};

use crate::config::ConeConfiguration;
use crate::curve::FermatCurve;
use crate::error::{Error, Result};
use crate::lift::CurveAutomorphism;
use crate::literal::{serde_complex, serde_points};
use crate::moduli::{Assumption, Exhaustion, ModuliClassification, Verdict};
use crate::perm::Permutation;
use crate::sphere::{Complex, SpherePoint};

/// `{"points": ["inf", "0", "1", ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(with = "serde_points")]
    pub points: Vec<SpherePoint>,
}

impl ConfigFile {
    pub fn configuration(&self, eps: f64) -> Result<ConeConfiguration> {
        ConeConfiguration::new(self.points.clone(), eps)
    }
}

/// `{"k": 2, "lambdas": ["-6", ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub k: u32,
    #[serde(with = "serde_complex::vec")]
    pub lambdas: Vec<Complex>,
}

impl CurveFile {
    pub fn curve(&self, eps: f64) -> Result<FermatCurve> {
        FermatCurve::build(self.k, self.lambdas.clone(), eps)
    }
}

/// `{"perm": [2,1,4,3,6,5], "c": ["1", ...], "anticonformal": true}` with a
/// 1-based one-line permutation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismJson {
    pub perm: Vec<usize>,
    #[serde(with = "serde_complex::vec")]
    pub c: Vec<Complex>,
    pub anticonformal: bool,
}

impl From<&CurveAutomorphism> for AutomorphismJson {
    fn from(a: &CurveAutomorphism) -> Self {
        Self {
            perm: a.perm().to_one_based(),
            c: a.constants().to_vec(),
            anticonformal: a.is_anticonformal(),
        }
    }
}

impl AutomorphismJson {
    pub fn automorphism(&self) -> Result<CurveAutomorphism> {
        let perm = Permutation::from_one_based(&self.perm)?;
        CurveAutomorphism::new(perm, self.c.clone(), self.anticonformal)
            .ok_or_else(|| Error::Parse("constants must be nonzero and match the permutation size".into()))
    }
}

/// Classification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub verdict: Verdict,
    pub witness: Option<AutomorphismJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_order: Option<u64>,
    pub exhaustion: Exhaustion,
    pub assumption: Assumption,
    pub epsilon: f64,
}

impl From<&ModuliClassification> for Report {
    fn from(c: &ModuliClassification) -> Self {
        Self {
            verdict: c.verdict,
            witness: c.witness.as_ref().map(AutomorphismJson::from),
            witness_order: c.witness_order,
            exhaustion: c.exhaustion,
            assumption: c.assumption,
            epsilon: c.epsilon,
        }
    }
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::{classify, Settings};
    use crate::sphere::DEFAULT_EPSILON as EPS;

    #[test]
    fn reads_documented_files() {
        let cfg: ConfigFile = from_json(r#"{"points":["inf","0","1","-6","-2+1.4142135623730951i"]}"#).unwrap();
        assert!(cfg.points[0].is_infinity());
        assert_eq!(cfg.configuration(EPS).unwrap().len(), 5);
        let curve: CurveFile =
            from_json(r#"{"k":2,"lambdas":["-6","-2+1.4142135623730951i","2-1.4142135623730951i"]}"#).unwrap();
        assert_eq!(curve.curve(EPS).unwrap().n(), 5);
        let a: AutomorphismJson = from_json(r#"{"perm":[2,1,4,3,6,5],"c":["1","2i","1","2i","3","-3"],"anticonformal":true}"#).unwrap();
        let auto = a.automorphism().unwrap();
        assert_eq!(AutomorphismJson::from(&auto), a);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(from_json::<CurveFile>(r#"{"k":2,"lambdas":["-6 + i"]}"#).is_err());
        assert!(from_json::<CurveFile>(r#"{"k":2}"#).is_err());
        let bad: AutomorphismJson = from_json(r#"{"perm":[1,1],"c":["1","1"],"anticonformal":false}"#).unwrap();
        assert!(bad.automorphism().is_err());
    }

    #[test]
    fn report_round_trips() {
        let c = FermatCurve::build(2, vec![Complex::new(-2.0, 0.0), Complex::new(3.5, 0.0)], EPS).unwrap();
        let r = Report::from(&classify(&c, &Settings::default()).unwrap());
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""verdict":"moduli_R_and_real""#));
        assert_eq!(from_json::<Report>(&text).unwrap(), r);
    }
}
