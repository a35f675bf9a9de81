//! Three-variable bracket: the raw state sum in ℤ[a,b,d], its normal form
//! modulo the fixed ideal, and the writhe-corrected ambient value.

mod frontier;
mod tl;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use frontier::{frontier_evaluate, frontier_evaluate_capped, DEFAULT_FRONTIER_CAP};
pub use tl::{
    convention_lock_holds, tl_evaluate, tl_evaluate_capped, tl_evaluate_reduced, Matching,
    TLElement, TLSum, DEFAULT_STRAND_CAP,
};

use crate::classical::Laurent;
use crate::diagram::{Diagram, Presentation, Sign};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::quotient::{normal_form, specialize_classical, NormalForm};
use crate::statesum::{state_histogram, DEFAULT_STATE_CAP};

/// Closed-diagram multipliers for one added kink of each sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurlFactors {
    pub f_plus: Polynomial,
    pub f_minus: Polynomial,
}

pub fn curl_factors() -> &'static CurlFactors {
    static F: OnceLock<CurlFactors> = OnceLock::new();
    // positive kink: the A smoothing is vertical and splits off a circle
    F.get_or_init(|| CurlFactors {
        f_plus: "a*d + b".parse().expect("literal"),
        f_minus: "a + b*d".parse().expect("literal"),
    })
}

pub fn curl_factor(s: Sign) -> &'static Polynomial {
    match s {
        Sign::Positive => &curl_factors().f_plus,
        Sign::Negative => &curl_factors().f_minus,
    }
}

/// `Σ_s a^{#A} b^{#B} d^{loops}` over all states.
pub fn bracket3_raw(d: &Diagram) -> Result<Polynomial> {
    bracket3_raw_capped(d, DEFAULT_STATE_CAP)
}

pub fn bracket3_raw_capped(d: &Diagram, cap: usize) -> Result<Polynomial> {
    let hist = state_histogram(d, cap)?;
    let n = hist.crossings as u32;
    let mut out = Polynomial::zero();
    for (a, loops, count) in hist.iter() {
        let m = Monomial::new(a as u32, n - a as u32, loops as u32);
        out.add_term(m, count.into());
    }
    Ok(out)
}

pub fn bracket3(d: &Diagram) -> Result<NormalForm> {
    Ok(normal_form(&bracket3_raw(d)?))
}

pub fn ambient3(d: &Diagram) -> Result<NormalForm> {
    Ok(ambient3_from_raw(&bracket3_raw(d)?, d.writhe()))
}

fn opposite_factor(writhe: i64) -> &'static Polynomial {
    if writhe > 0 {
        curl_factor(Sign::Negative)
    } else {
        curl_factor(Sign::Positive)
    }
}

/// `NF(f_opp^{|w|} · raw)`, reducing after every factor.
pub fn ambient3_from_raw(raw: &Polynomial, writhe: i64) -> NormalForm {
    multiply_reduced(raw, opposite_factor(writhe), writhe.unsigned_abs())
}

/// Variant with the extra `d` in each curl factor: `NF((d·f_opp)^{|w|} · raw)`.
pub fn ambient3_dcurl_from_raw(raw: &Polynomial, writhe: i64) -> NormalForm {
    let f = opposite_factor(writhe).mul_monomial(&Monomial::new(0, 0, 1));
    multiply_reduced(raw, &f, writhe.unsigned_abs())
}

fn multiply_reduced(raw: &Polynomial, f: &Polynomial, times: u64) -> NormalForm {
    let mut acc = normal_form(raw);
    for _ in 0..times {
        acc = normal_form(&(f * acc.representative()));
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Enumerate all 2ⁿ states.
    Naive,
    /// Temperley–Lieb transfer matrix for braids, frontier contraction for
    /// PD codes.
    Tl,
}

impl Engine {
    pub fn other(self) -> Engine {
        match self {
            Engine::Naive => Engine::Tl,
            Engine::Tl => Engine::Naive,
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Naive => "naive",
            Engine::Tl => "tl",
        })
    }
}

impl FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Engine::Naive),
            "tl" => Ok(Engine::Tl),
            _ => Err(format!("unknown engine '{s}' (expected naive or tl)")),
        }
    }
}

pub fn raw_bracket(p: &Presentation, engine: Engine) -> Result<Polynomial> {
    match (engine, p) {
        (Engine::Naive, _) => bracket3_raw(&p.diagram()),
        (Engine::Tl, Presentation::Braid(b)) => tl_evaluate(b),
        (Engine::Tl, Presentation::Pd(d)) => frontier_evaluate(d),
    }
}

/// Classical bracket recovered from the raw value: the specialization is the
/// classical bracket times one circle value.
pub fn classical_from_raw(raw: &Polynomial) -> Result<Laurent> {
    specialize_classical(raw)
        .div_exact(&Laurent::loop_value())
        .ok_or_else(|| {
            Error::Inconsistent(
                "specialized raw bracket is not divisible by the circle value".into(),
            )
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bracket3Values {
    pub input: String,
    pub engine: Engine,
    pub crossings: usize,
    pub writhe: i64,
    pub raw: String,
    pub normal_form: String,
    pub ambient3: String,
    pub ambient3_dcurl: String,
}

pub fn evaluate(p: &Presentation, engine: Engine) -> Result<Bracket3Values> {
    let raw = raw_bracket(p, engine)?;
    let w = p.writhe();
    Ok(Bracket3Values {
        input: p.to_string(),
        engine,
        crossings: p.crossing_count(),
        writhe: w,
        normal_form: normal_form(&raw).to_string(),
        ambient3: ambient3_from_raw(&raw, w).to_string(),
        ambient3_dcurl: ambient3_dcurl_from_raw(&raw, w).to_string(),
        raw: raw.to_string(),
    })
}
