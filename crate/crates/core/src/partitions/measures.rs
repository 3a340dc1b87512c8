use serde::{Deserialize, Serialize};

use super::strict::{enumerate_strict, StrictPartition};
use crate::specfun::{ln_gamma_real, Order};
use crate::{Error, Result, TOLERANCES};

/// The two-parameter family `(alpha, xi)`, with `nu = sqrt(1 - 4 alpha) / 2`.
///
/// Every quantity of the model depends on `nu` only through `nu^2`; the
/// `negate_nu` flag flips the sign of the derived `nu` so that this
/// invariance can be exercised on the kernel formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    alpha: f64,
    xi: f64,
    #[serde(default)]
    negate_nu: bool,
}

impl ModelParams {
    pub fn new(alpha: f64, xi: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::invalid(format!("alpha = {alpha} must be positive")));
        }
        if !(xi > 0.0 && xi < 1.0) {
            return Err(Error::invalid(format!("xi = {xi} must lie in (0, 1)")));
        }
        Ok(Self {
            alpha,
            xi,
            negate_nu: false,
        })
    }

    /// Same measure, with the opposite sign convention for `nu`.
    pub fn with_negated_nu(mut self) -> Self {
        self.negate_nu = !self.negate_nu;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn nu_negated(&self) -> bool {
        self.negate_nu
    }

    /// `nu`: real in `[0, 1/2)` for `alpha <= 1/4`, purely imaginary otherwise.
    pub fn nu(&self) -> Order {
        let nu = nu_of_alpha(self.alpha);
        if self.negate_nu {
            nu.negated()
        } else {
            nu
        }
    }
}

/// `nu = sqrt(1 - 4 alpha) / 2` with the non-negative root (real or imaginary).
pub fn nu_of_alpha(alpha: f64) -> Order {
    let disc = 1.0 - 4.0 * alpha;
    if disc >= 0.0 {
        Order::Real(0.5 * disc.sqrt())
    } else {
        Order::Imaginary(0.5 * (-disc).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlancherelParams {
    theta: f64,
}

impl PlancherelParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(Error::invalid(format!("theta = {theta} must be positive")));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Law of the weight `n = |lambda|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Mixing {
    /// Poisson with mean `theta / 2`, mixing the Plancherel layers.
    Poisson(PlancherelParams),
    /// Negative binomial `(1 - xi)^{alpha/2} (alpha/2)_n xi^n / n!`,
    /// mixing the deformed layers.
    NegativeBinomial(ModelParams),
}

impl From<PlancherelParams> for Mixing {
    fn from(p: PlancherelParams) -> Self {
        Mixing::Poisson(p)
    }
}

impl From<ModelParams> for Mixing {
    fn from(p: ModelParams) -> Self {
        Mixing::NegativeBinomial(p)
    }
}

fn ln_factorial(n: u32) -> f64 {
    ln_gamma_real(n as f64 + 1.0).expect("positive argument")
}

pub fn ln_mixture_weight(n: u32, mixing: Mixing) -> f64 {
    let nf = n as f64;
    match mixing {
        Mixing::Poisson(p) => {
            let mean = 0.5 * p.theta;
            nf * mean.ln() - mean - ln_factorial(n)
        }
        Mixing::NegativeBinomial(p) => {
            let a = 0.5 * p.alpha;
            let pochhammer = ln_gamma_real(a + nf).unwrap() - ln_gamma_real(a).unwrap();
            a * (-p.xi).ln_1p() + pochhammer + nf * p.xi.ln() - ln_factorial(n)
        }
    }
}

/// Probability of the layer `|lambda| = n` under the mixing law.
pub fn mixture_weight(n: u32, mixing: Mixing) -> f64 {
    ln_mixture_weight(n, mixing).exp()
}

/// Smallest `N` such that the mixing mass on `n > N` is below `tail`.
///
/// The tail is bounded by a geometric series using an upper bound on the
/// term ratio `w(n + 1) / w(n)` for `n > N`.
pub fn mixing_cap(mixing: Mixing, tail: f64) -> u32 {
    let mut n = 0u32;
    loop {
        let next = n + 1;
        let ratio_bound = match mixing {
            Mixing::Poisson(p) => 0.5 * p.theta / (next as f64 + 1.0),
            Mixing::NegativeBinomial(p) => {
                let a = 0.5 * p.alpha;
                let at_next = p.xi * (a + next as f64) / (next as f64 + 1.0);
                // the ratio tends to xi monotonically from either side
                at_next.max(p.xi)
            }
        };
        if ratio_bound < 1.0 {
            let bound = mixture_weight(next, mixing) / (1.0 - ratio_bound);
            if bound < tail {
                return n;
            }
        }
        n += 1;
    }
}

/// `ln Pl_n(lambda)`.
pub fn ln_plancherel_weight(lambda: &StrictPartition) -> f64 {
    let parts = lambda.parts();
    let n = lambda.weight();
    let mut log = (n as f64 - parts.len() as f64) * std::f64::consts::LN_2 + ln_factorial(n);
    for &p in parts {
        log -= 2.0 * ln_factorial(p);
    }
    for (i, &a) in parts.iter().enumerate() {
        for &b in &parts[i + 1..] {
            log += 2.0 * ((a - b) as f64 / (a + b) as f64).ln();
        }
    }
    log
}

/// Strict Plancherel measure of `lambda` within its layer.
pub fn plancherel_weight(lambda: &StrictPartition) -> f64 {
    ln_plancherel_weight(lambda).exp()
}

/// `ln prod_i prod_{j=1}^{lambda_i} (j(j-1) + alpha)`.
pub fn ln_deformed_factor(lambda: &StrictPartition, alpha: f64) -> f64 {
    let mut log = 0.0;
    for &p in lambda.parts() {
        for j in 1..=p {
            let j = j as f64;
            log += (j * (j - 1.0) + alpha).ln();
        }
    }
    log
}

fn normalized(mut layer: Vec<(StrictPartition, f64)>) -> Vec<(StrictPartition, f64)> {
    let max = layer.iter().map(|(_, l)| *l).fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = layer.iter().map(|(_, l)| (l - max).exp()).sum();
    let ln_total = max + total.ln();
    for (_, l) in layer.iter_mut() {
        *l = (*l - ln_total).exp();
    }
    layer
}

/// The layer `|lambda| = n` with Plancherel probabilities, in enumeration order.
pub fn plancherel_layer(n: u32) -> Result<Vec<(StrictPartition, f64)>> {
    Ok(enumerate_strict(n)?
        .into_iter()
        .map(|l| {
            let w = plancherel_weight(&l);
            (l, w)
        })
        .collect())
}

/// The layer `|lambda| = n` with the normalized deformed probabilities
/// `M_n(lambda) ∝ Pl_n(lambda) prod_i prod_j (j(j-1) + alpha)`, the
/// constant obtained by explicit summation over the layer.
pub fn deformed_layer(n: u32, alpha: f64) -> Result<Vec<(StrictPartition, f64)>> {
    if !(alpha > 0.0) {
        return Err(Error::invalid(format!("alpha = {alpha} must be positive")));
    }
    let logs = enumerate_strict(n)?
        .into_iter()
        .map(|l| {
            let log = ln_plancherel_weight(&l) + ln_deformed_factor(&l, alpha);
            (l, log)
        })
        .collect();
    Ok(normalized(logs))
}

/// `M_n^(alpha)(lambda)` with `n = |lambda|`.
pub fn deformed_weight(lambda: &StrictPartition, alpha: f64) -> Result<f64> {
    let layer = deformed_layer(lambda.weight(), alpha)?;
    Ok(layer
        .into_iter()
        .find(|(l, _)| l == lambda)
        .map(|(_, w)| w)
        .expect("every strict partition of n is enumerated"))
}

/// Negative-binomial mixture of the deformed layers.
pub fn mixed_measure(lambda: &StrictPartition, params: ModelParams) -> Result<f64> {
    let layer = mixture_weight(lambda.weight(), params.into());
    Ok(layer * deformed_weight(lambda, params.alpha)?)
}

/// Poissonized strict Plancherel measure.
pub fn plancherel_mixed(lambda: &StrictPartition, params: PlancherelParams) -> Result<f64> {
    if lambda.weight() as usize > TOLERANCES.enumeration_cap {
        return Err(Error::CapExceeded {
            cap: TOLERANCES.enumeration_cap,
            requested: lambda.weight() as usize,
        });
    }
    Ok(mixture_weight(lambda.weight(), params.into()) * plancherel_weight(lambda))
}
