use crate::combinatorics::binomial_usize;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::topology::NetworkTopology;

use super::{NdtValue, SchemeId, SharingDecomposition};

/// Adjacent integral-parameter points around `mu_R` for one scheme.
pub type Bracket<S> = SharingDecomposition<S>;

/// The scheme's cache parameter as a function of `mu_R` and its inverse.
fn param_map<S: Scalar>(scheme: SchemeId, topo: &NetworkTopology, mu_r: &S, mu_t: &S) -> Result<(S, Box<dyn Fn(i64) -> S>)> {
    let (k, l) = (topo.k(), binomial_usize(topo.h() - 1, topo.r() - 1));
    match scheme {
        SchemeId::Mdsia => Ok((mu_r.clone() * S::from_count(l), Box::new(move |p| S::ratio(p, l as i64)))),
        SchemeId::Soft => Ok((mu_r.clone() * S::from_count(k), Box::new(move |p| S::ratio(p, k as i64)))),
        SchemeId::Zf => {
            let t = crate::zf::zf_param(k, mu_r, mu_t)?;
            let mu_t = mu_t.clone();
            Ok((t, Box::new(move |p| S::one() - mu_t.clone() + S::ratio(p, k as i64) * mu_t.clone())))
        }
    }
}

/// Finds the integral parameter points around `mu_R`. An integral point gives
/// `mu_hi = mu_lo = mu_R` and `alpha = 1`.
pub fn bracket<S: Scalar>(scheme: SchemeId, h: usize, r: usize, mu_r: &S, mu_t: &S) -> Result<Bracket<S>> {
    let topo = NetworkTopology::new(h, r)?;
    crate::mdsia::check_fraction("mu_R", mu_r)?;
    crate::mdsia::check_fraction("mu_T", mu_t)?;
    let (x, mu_of) = param_map(scheme, &topo, mu_r, mu_t)?;
    if let Some(p) = x.to_integer() {
        return Ok(Bracket { mu_hi: mu_r.clone(), mu_lo: mu_r.clone(), alpha: S::one(), param_hi: p, param_lo: p });
    }
    let lo = x.floor().to_i64().ok_or_else(|| Error::InvalidParameter(format!("parameter {x} out of range")))?;
    let (mu_hi, mu_lo) = (mu_of(lo + 1), mu_of(lo));
    let alpha = (mu_r.clone() - mu_lo.clone()) / (mu_hi.clone() - mu_lo.clone());
    Ok(Bracket { mu_hi, mu_lo, alpha, param_hi: lo + 1, param_lo: lo })
}

/// Memory-shared delivery time: the scheme's closed form at an integral
/// point, otherwise `alpha * NDT(mu_hi) + (1 - alpha) * NDT(mu_lo)`.
pub fn memory_share<S: Scalar>(scheme: SchemeId, h: usize, r: usize, mu_r: &S, mu_t: &S, rho: &S) -> Result<NdtValue<S>> {
    let b = bracket(scheme, h, r, mu_r, mu_t)?;
    let mut v = if b.param_hi == b.param_lo {
        scheme.integral_ndt(h, r, mu_r, mu_t, rho)?
    } else {
        let hi = scheme.integral_ndt(h, r, &b.mu_hi, mu_t, rho)?;
        let lo = scheme.integral_ndt(h, r, &b.mu_lo, mu_t, rho)?;
        NdtValue::combine(&b.alpha, &hi, &lo)
    };
    v.provenance.sharing = Some(b);
    Ok(v)
}
