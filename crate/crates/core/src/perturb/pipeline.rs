//! Repeated perturbation: add constants and poles step by step, taking a
//! census after each step.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::verify::local_seeds;
use super::{plan, shared_options, CensusDiff, PerturbationPlan};
use crate::error::{Error, Result};
use crate::harmonic::{CensusOptions, HarmonicLens, Sense, ZeroCensus, ZeroRecord};
use crate::rational::RationalFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Leftmost,
    Rightmost,
}

/// Picks a point from the current census.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Selector {
    /// Extreme zero by real part, optionally restricted to one sense.
    Extreme { side: Side, sense: Option<Sense> },
    /// The zero closest to a critical point of `R`.
    NearestCritical,
    /// A fixed point; snapped to a zero when one is within the dedup radius.
    Point(Complex64),
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Extreme { side, sense } => {
                let side = match side {
                    Side::Leftmost => "leftmost",
                    Side::Rightmost => "rightmost",
                };
                match sense {
                    None => write!(f, "{side}"),
                    Some(Sense::Preserving) => write!(f, "{side}-preserving"),
                    Some(Sense::Reversing) => write!(f, "{side}-reversing"),
                    Some(Sense::Singular) => write!(f, "{side}-singular"),
                }
            }
            Selector::NearestCritical => write!(f, "nearest-critical"),
            Selector::Point(z) => write!(f, "{},{}", z.re, z.im),
        }
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "nearest-critical" {
            return Ok(Selector::NearestCritical);
        }
        let (side, rest) = if let Some(rest) = s.strip_prefix("leftmost") {
            (Side::Leftmost, rest)
        } else if let Some(rest) = s.strip_prefix("rightmost") {
            (Side::Rightmost, rest)
        } else {
            let (re, im) = s
                .split_once(',')
                .ok_or_else(|| Error::InvalidArgument(format!("unknown selector {s:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad coordinate in selector {s:?}")))
            };
            return Ok(Selector::Point(Complex64::new(parse(re)?, parse(im)?)));
        };
        let sense = match rest {
            "" => None,
            "-preserving" => Some(Sense::Preserving),
            "-reversing" => Some(Sense::Reversing),
            "-singular" => Some(Sense::Singular),
            _ => return Err(Error::InvalidArgument(format!("unknown selector {s:?}"))),
        };
        Ok(Selector::Extreme { side, sense })
    }
}

impl Serialize for Selector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Selector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Selector {
    /// Resolves against `f` and its census.
    pub fn resolve(&self, f: &HarmonicLens, census: &ZeroCensus) -> Result<Complex64> {
        let fail = || Error::EmptySelector(self.to_string());
        match *self {
            Selector::Extreme { side, sense } => {
                let pool = census.zeros.iter().filter(|z| sense.is_none_or(|s| z.sense == s));
                let key = |z: &&ZeroRecord| z.location.re;
                let pick = match side {
                    Side::Leftmost => pool.min_by(|a, b| key(a).total_cmp(&key(b))),
                    Side::Rightmost => pool.max_by(|a, b| key(a).total_cmp(&key(b))),
                };
                pick.map(|z| z.location).ok_or_else(fail)
            }
            Selector::NearestCritical => {
                let crit = f.rational().critical_points()?;
                census
                    .zeros
                    .iter()
                    .filter_map(|z| {
                        crit.iter()
                            .map(|c| (c - z.location).norm())
                            .min_by(f64::total_cmp)
                            .map(|d| (d, z.location))
                    })
                    .min_by(|a, b| a.0.total_cmp(&b.0))
                    .map(|(_, z)| z)
                    .ok_or_else(fail)
            }
            Selector::Point(p) => {
                let tol = crate::harmonic::DEDUP_RELATIVE * (1.0 + p.norm());
                Ok(census
                    .zeros
                    .iter()
                    .map(|z| z.location)
                    .find(|z| (z - p).norm() <= tol)
                    .unwrap_or(p))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum Step {
    AddConstant {
        #[serde(with = "crate::serde_complex")]
        c: Complex64,
    },
    /// Adds the constant that turns a critical point `zc` of `R` into a zero
    /// of `R - conj(z)`, namely `conj(zc) - R(zc)`.
    AlignCritical { critical: Side },
    AddPole {
        at: Selector,
        eps: f64,
        #[serde(default = "one")]
        order: usize,
    },
}

fn one() -> usize {
    1
}

/// Which statement covers a pole step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    /// Zero of order `n >= 3`.
    Local,
    /// Any other point.
    ArbitraryPoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineStage {
    pub index: usize,
    pub step: Option<Step>,
    pub function: RationalFunction,
    pub degree: usize,
    #[serde(with = "crate::serde_complex::option")]
    pub target: Option<Complex64>,
    /// `|R'|` at the target before the step.
    pub target_derivative: Option<f64>,
    pub added_constant: Option<[f64; 2]>,
    pub guarantee: Option<Guarantee>,
    pub plan: Option<PerturbationPlan>,
    /// A local-theorem step with `eps >= eps_sharp`; executed all the same.
    pub outside_guarantee: bool,
    pub census: ZeroCensus,
    pub extremal: bool,
    pub diff: Option<CensusDiff>,
}

fn ring_seeds(z0: Complex64, eps: f64, order: usize) -> Vec<Complex64> {
    let base = eps.powf(1.0 / (order as f64 + 1.0));
    let count = 16 * (order + 1);
    let mut out = Vec::new();
    for factor in [0.3, 0.6, 1.0, 1.5, 2.5] {
        for k in 0..count {
            out.push(z0 + Complex64::from_polar(base * factor, TAU * (k as f64 + 0.5) / count as f64));
        }
    }
    out
}

/// Runs the steps in order. The first stage is the census of `start`.
pub fn iterate_pipeline(start: &RationalFunction, steps: &[Step], opts: &CensusOptions) -> Result<Vec<PipelineStage>> {
    let mut f = HarmonicLens::new(start.clone())?;
    let census = f.find_zeros(opts)?;
    let mut trace = vec![PipelineStage {
        index: 0,
        step: None,
        function: start.clone(),
        degree: f.degree(),
        target: None,
        target_derivative: None,
        added_constant: None,
        guarantee: None,
        plan: None,
        outside_guarantee: false,
        extremal: census.extremal(),
        census,
        diff: None,
    }];
    for (i, step) in steps.iter().enumerate() {
        let prev = &trace.last().expect("trace starts non-empty").census;
        let mut target = None;
        let mut added = None;
        let mut guarantee = None;
        let mut stage_plan = None;
        let mut seeds = Vec::new();
        let next = match step {
            Step::AddConstant { c } => {
                added = Some(*c);
                f.rational().add_constant(*c)
            }
            Step::AlignCritical { critical } => {
                let crit = f.rational().critical_points()?;
                let key = |z: &&Complex64| z.re;
                let zc = match critical {
                    Side::Leftmost => crit.iter().min_by(|a, b| key(a).total_cmp(&key(b))),
                    Side::Rightmost => crit.iter().max_by(|a, b| key(a).total_cmp(&key(b))),
                }
                .copied()
                .ok_or_else(|| Error::EmptySelector(format!("{critical:?} critical point")))?;
                let value = f.rational().eval(zc).ok_or(Error::AtPole(zc))?;
                let c = zc.conj() - value;
                target = Some(zc);
                added = Some(c);
                seeds.push(zc);
                f.rational().add_constant(c)
            }
            Step::AddPole { at, eps, order } => {
                let z0 = at.resolve(&f, prev)?;
                target = Some(z0);
                match plan(&f, z0, Some(*eps)) {
                    Ok(p) if *order == 1 => {
                        guarantee = Some(Guarantee::Local);
                        seeds.extend(local_seeds(&p));
                        stage_plan = Some(p);
                    }
                    Ok(_) | Err(Error::UnsupportedCase(_)) => guarantee = Some(Guarantee::ArbitraryPoint),
                    Err(e) => return Err(e),
                }
                seeds.extend(ring_seeds(z0, *eps, *order));
                f.rational().add_pole(z0, Complex64::new(*eps, 0.0), *order)?
            }
        };
        let target_derivative = target.and_then(|z| f.rational().eval_derivative(z)).map(|d| d.norm());
        let g = HarmonicLens::new(next)?;
        let mut o = shared_options(&f, &g, opts);
        o.extra_seeds.extend(seeds);
        let census = g.find_zeros(&o)?;
        let diff = match step {
            Step::AddPole { .. } => target.map(|z0| CensusDiff::new(prev, &census, z0)),
            _ => None,
        };
        f = g;
        trace.push(PipelineStage {
            index: i + 1,
            step: Some(step.clone()),
            function: f.rational().clone(),
            degree: f.degree(),
            target,
            target_derivative,
            added_constant: added.map(|c| [c.re, c.im]),
            guarantee,
            outside_guarantee: stage_plan.is_some_and(|p| !p.within_guarantee),
            plan: stage_plan,
            extremal: census.extremal(),
            census,
            diff,
        });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_strings_round_trip() {
        for s in ["leftmost-reversing", "rightmost-preserving", "leftmost", "nearest-critical", "0.5,-1"] {
            let sel: Selector = s.parse().unwrap();
            assert_eq!(sel.to_string().parse::<Selector>().unwrap(), sel);
        }
        assert!("middle".parse::<Selector>().is_err());
    }

    #[test]
    fn step_json() {
        let steps: Vec<Step> = serde_json::from_str(
            r#"[{"action":"align_critical","critical":"leftmost"},
                {"action":"add_pole","at":"nearest-critical","eps":0.0045}]"#,
        )
        .unwrap();
        assert!(matches!(steps[1], Step::AddPole { order: 1, .. }));
    }

    #[test]
    fn trivial_pipeline() {
        let r = RationalFunction::rhie_base(2, 0.5).unwrap();
        let trace = iterate_pipeline(&r, &[], &CensusOptions::default()).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].census.count(), 5);
        assert!(trace[0].extremal);
    }

    #[test]
    fn large_eps_is_flagged_and_run() {
        let r = RationalFunction::rhie_base(3, 0.5).unwrap();
        let step = Step::AddPole {
            at: Selector::Point(Complex64::new(0.0, 0.0)),
            eps: 0.01,
            order: 1,
        };
        let trace = iterate_pipeline(&r, &[step], &CensusOptions::default()).unwrap();
        assert!(trace[1].outside_guarantee);
        assert_eq!(trace[1].guarantee, Some(Guarantee::Local));
        assert_eq!(trace[1].degree, 4);
    }

    #[test]
    fn empty_selector_errors() {
        // every zero of z^2 - conj(z) is regular
        let r = RationalFunction::polynomial(crate::polynomial::ComplexPolynomial::from_real(&[0.0, 0.0, 1.0]));
        let f = HarmonicLens::new(r).unwrap();
        let census = f.census().unwrap();
        let sel: Selector = "leftmost-singular".parse().unwrap();
        assert!(matches!(sel.resolve(&f, &census), Err(Error::EmptySelector(_))));
    }
}
