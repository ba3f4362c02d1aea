//! Normalized delivery time values and analytics: memory sharing, the
//! fronthaul threshold below which the cloud-free scheme wins, scheme
//! comparison over grids, and convexity checks.

mod compare;
mod convexity;
mod sharing;
mod threshold;

use std::fmt;

use num_traits::Zero;

pub use compare::{argmin_of, compare_schemes, evaluate_point, GridPoint, SchemeEval, SweepRow};
pub use convexity::{convexity_check, ConvexityReport};
pub use sharing::{bracket, memory_share, Bracket};
pub use threshold::{competitor_ndt, direct_crossover, flip_test, rho_threshold, FlipReport};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// The three delivery schemes. The derived order (`mdsia < soft < zf`) is the
/// lexicographic tie-break used by scheme comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeId {
    Mdsia,
    Soft,
    Zf,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [SchemeId::Mdsia, SchemeId::Soft, SchemeId::Zf];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Mdsia => "mdsia",
            SchemeId::Soft => "soft",
            SchemeId::Zf => "zf",
        }
    }

    /// Whether the scheme never uses the fronthaul.
    pub fn is_cloud_free(self) -> bool {
        matches!(self, SchemeId::Zf)
    }

    /// Evaluates the scheme's closed form at a point whose cache parameter is
    /// integral.
    pub fn integral_ndt<S: Scalar>(self, h: usize, r: usize, mu_r: &S, mu_t: &S, rho: &S) -> Result<NdtValue<S>> {
        match self {
            SchemeId::Mdsia => crate::mdsia::mdsia_ndt(h, r, mu_r, mu_t, rho),
            SchemeId::Soft => crate::soft::soft_ndt(h, r, mu_r, mu_t, rho),
            SchemeId::Zf => crate::zf::zf_ndt(h, r, mu_r, mu_t),
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mdsia" => Ok(SchemeId::Mdsia),
            "soft" => Ok(SchemeId::Soft),
            "zf" => Ok(SchemeId::Zf),
            other => Err(Error::Parse(format!("unknown scheme {other:?}"))),
        }
    }
}

/// `mu_R = alpha * mu_hi + (1 - alpha) * mu_lo`, with integral cache
/// parameters at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct SharingDecomposition<S> {
    pub mu_hi: S,
    pub mu_lo: S,
    pub alpha: S,
    pub param_hi: i64,
    pub param_lo: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance<S> {
    pub scheme: SchemeId,
    /// Which closed-form branch produced the value, e.g. `"case2"`.
    pub branch: &'static str,
    pub sharing: Option<SharingDecomposition<S>>,
}

/// An achievable NDT split into fronthaul and edge parts.
///
/// `fronthaul_load` is `fronthaul * rho`, kept so the value can be shown as a
/// function of `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct NdtValue<S = Rational> {
    pub total: S,
    pub fronthaul: S,
    pub edge: S,
    pub fronthaul_load: S,
    pub provenance: Provenance<S>,
}

impl<S: Scalar> NdtValue<S> {
    pub fn new(fronthaul_load: S, edge: S, rho: &S, scheme: SchemeId, branch: &'static str) -> Result<Self> {
        let fronthaul = if fronthaul_load.is_zero() {
            S::zero()
        } else if *rho > S::zero() {
            fronthaul_load.clone() / rho.clone()
        } else {
            return Err(Error::InvalidParameter(format!("rho = {rho} must be positive when the fronthaul is used")));
        };
        Ok(Self {
            total: fronthaul.clone() + edge.clone(),
            fronthaul,
            edge,
            fronthaul_load,
            provenance: Provenance { scheme, branch, sharing: None },
        })
    }

    pub fn zero(scheme: SchemeId, branch: &'static str) -> Self {
        Self {
            total: S::zero(),
            fronthaul: S::zero(),
            edge: S::zero(),
            fronthaul_load: S::zero(),
            provenance: Provenance { scheme, branch, sharing: None },
        }
    }

    /// `alpha * hi + (1 - alpha) * lo`, componentwise.
    pub fn combine(alpha: &S, hi: &Self, lo: &Self) -> Self {
        let beta = S::one() - alpha.clone();
        let mix = |a: &S, b: &S| alpha.clone() * a.clone() + beta.clone() * b.clone();
        Self {
            total: mix(&hi.total, &lo.total),
            fronthaul: mix(&hi.fronthaul, &lo.fronthaul),
            edge: mix(&hi.edge, &lo.edge),
            fronthaul_load: mix(&hi.fronthaul_load, &lo.fronthaul_load),
            provenance: Provenance { scheme: hi.provenance.scheme, branch: "shared", sharing: None },
        }
    }
}

impl NdtValue<Rational> {
    /// Renders the value as a function of `rho`, e.g. `3/(4ρ) + 9/8`.
    pub fn symbolic(&self) -> String {
        let load = &self.fronthaul_load;
        let front = if load.is_zero() {
            None
        } else if *load.denom() == 1 {
            Some(format!("{}/ρ", load.numer()))
        } else {
            Some(format!("{}/({}ρ)", load.numer(), load.denom()))
        };
        match front {
            None => self.edge.to_string(),
            Some(f) if self.edge.is_zero() => f,
            Some(f) => format!("{f} + {}", self.edge),
        }
    }

    pub fn to_f64(&self) -> NdtValue<f64> {
        let f = |q: &Rational| *q.numer() as f64 / *q.denom() as f64;
        NdtValue {
            total: f(&self.total),
            fronthaul: f(&self.fronthaul),
            edge: f(&self.edge),
            fronthaul_load: f(&self.fronthaul_load),
            provenance: Provenance {
                scheme: self.provenance.scheme,
                branch: self.provenance.branch,
                sharing: self.provenance.sharing.as_ref().map(|s| SharingDecomposition {
                    mu_hi: f(&s.mu_hi),
                    mu_lo: f(&s.mu_lo),
                    alpha: f(&s.alpha),
                    param_hi: s.param_hi,
                    param_lo: s.param_lo,
                }),
            },
        }
    }
}

/// `p/q (d.dddddd)`, the rendering used in reports and CSV.
pub fn fmt_rational(q: &Rational) -> String {
    let d = *q.numer() as f64 / *q.denom() as f64;
    if *q.denom() == 1 {
        format!("{} ({d:.6})", q.numer())
    } else {
        format!("{}/{} ({d:.6})", q.numer(), q.denom())
    }
}
