use std::f64::consts::E;

use serde::Serialize;

use super::certificate::{certify_pow, certify_quad, CertificatePow, CertificateQuad, GridSpec};
use super::fixed_points::small_base_threshold;
use crate::xreal::Base;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Suitability {
    /// At least one weight family certifies the base.
    SuitableCertified {
        pow: CertificatePow,
        quad: CertificateQuad,
    },
    /// `a <= 1/e`: every word converges but the representable set has
    /// empty interior.
    NotSuitableSmall,
    /// `a > e`: `(-)` has no limit.
    NotSuitableLarge,
    /// Neither family applies; nothing is claimed.
    Unknown {
        pow: CertificatePow,
        quad: CertificateQuad,
    },
}

impl Suitability {
    pub fn is_suitable(&self) -> bool {
        matches!(self, Suitability::SuitableCertified { .. })
    }
}

pub fn suitability_report(base: Base) -> Suitability {
    let a = base.value();
    if a <= small_base_threshold() {
        return Suitability::NotSuitableSmall;
    }
    if a > E {
        return Suitability::NotSuitableLarge;
    }
    let pow = certify_pow(base);
    let quad = certify_quad(base, &GridSpec::default());
    if pow.verdict || quad.verdict {
        Suitability::SuitableCertified { pow, quad }
    } else {
        Suitability::Unknown { pow, quad }
    }
}
