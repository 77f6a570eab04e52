//! Closed-form counting formulas: Turán numbers, the Chvátal–Hanson function
//! and the edge-extremal number of the (k,r)-fan.

use crate::constructors::FanSpec;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A formula value together with the vertex-count threshold above which the
/// formula is a theorem. Below it the value is only a conjectured target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub value: u64,
    pub applicable: bool,
    pub threshold: u64,
}

/// Part sizes of the Turán graph `T_p(n)`, largest first. Parts may be
/// empty when `n < p`.
pub fn turan_part_sizes(n: usize, p: usize) -> Result<Vec<usize>> {
    if p < 1 {
        return Err(Error::InvalidParameter("Turán graphs need p >= 1".into()));
    }
    let (q, rem) = (n / p, n % p);
    Ok((0..p).map(|i| q + usize::from(i < rem)).collect())
}

/// `t_p(n)`, the number of edges of the Turán graph `T_p(n)`.
pub fn turan_number_t(n: usize, p: usize) -> Result<u64> {
    let sizes = turan_part_sizes(n, p)?;
    let pairs = |m: usize| (m as u64) * (m as u64).saturating_sub(1) / 2;
    Ok(pairs(n) - sizes.iter().map(|&s| pairs(s)).sum::<u64>())
}

/// Maximum number of edges in a graph with matching number at most `beta`
/// and maximum degree at most `delta`:
/// `delta * beta + floor(delta / 2) * floor(beta / ceil(delta / 2))`.
pub fn chvatal_hanson_f(beta: u64, delta: u64) -> u64 {
    if beta == 0 || delta == 0 {
        return 0;
    }
    delta * beta + (delta / 2) * (beta / delta.div_ceil(2))
}

/// Vertex threshold above which `ex(n, F_{k,r})` is known to equal
/// `t_{r-1}(n) + f(k-1, k-1)`: `50 k^2` for `r = 3`, `16 k^3 r^8` otherwise.
/// For `k = 1` the fan is a clique and Turán's theorem covers every `n`.
pub fn fan_threshold(spec: FanSpec) -> u64 {
    let (k, r) = (spec.k() as u64, spec.r() as u64);
    if k == 1 {
        0
    } else if r == 3 {
        50 * k * k
    } else {
        16 * k.pow(3) * r.pow(8)
    }
}

/// `ex(n, F_{k,r}) = t_{r-1}(n) + f(k-1, k-1)` for `r >= 3`.
pub fn fan_extremal_number(n: usize, spec: FanSpec) -> Result<FormulaResult> {
    if spec.r() < 3 {
        return Err(Error::InvalidParameter(format!(
            "no closed form for r = {}; the fan is then a star",
            spec.r()
        )));
    }
    let k = spec.k() as u64;
    let value = turan_number_t(n, spec.r() - 1)? + chvatal_hanson_f(k - 1, k - 1);
    let threshold = fan_threshold(spec);
    Ok(FormulaResult {
        value,
        applicable: n as u64 >= threshold,
        threshold,
    })
}
