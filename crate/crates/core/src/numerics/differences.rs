use crate::{Error, Result};

/// `(D f)(u)` for `D = -d/du u^2 d/du + u^2 / 4`, using five-point central
/// differences on the expanded form `-u^2 f'' - 2u f' + u^2 f / 4`.
pub fn apply_sturm_liouville<F>(f: F, u: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(h > 0.0) || !(u - 2.0 * h > 0.0) {
        return Err(Error::domain(
            "apply_sturm_liouville",
            format!("stencil at u = {u} with step {h} leaves the half-line"),
        ));
    }
    let (fm2, fm1, f0, fp1, fp2) = (f(u - 2.0 * h), f(u - h), f(u), f(u + h), f(u + 2.0 * h));
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    Ok(-u * u * d2 - 2.0 * u * d1 + 0.25 * u * u * f0)
}

/// Even-in-`t` quadratic in `t^2` through `g(h)`, `g(h/2)`, `g(h/4)`.
///
/// Its value at `t = 0` is the two-step Richardson extrapolant; other
/// small `t` give a smooth interpolant where direct evaluation cancels.
#[derive(Debug, Clone, Copy)]
pub struct EvenExtrapolation {
    squares: [f64; 3],
    values: [f64; 3],
}

impl EvenExtrapolation {
    pub fn sample<G>(g: G, base_h: f64) -> Result<Self>
    where
        G: Fn(f64) -> Result<f64>,
    {
        let hs = [base_h, base_h / 2.0, base_h / 4.0];
        let mut values = [0.0; 3];
        for (v, h) in values.iter_mut().zip(hs) {
            *v = g(h)?;
            if !v.is_finite() {
                return Err(Error::domain("richardson_limit", format!("g({h}) is not finite")));
            }
        }
        Ok(Self {
            squares: hs.map(|h| h * h),
            values,
        })
    }

    /// Lagrange interpolation in `t^2`.
    pub fn eval(&self, t: f64) -> f64 {
        let x = t * t;
        let s = &self.squares;
        let mut acc = 0.0;
        for i in 0..3 {
            let mut basis = 1.0;
            for j in 0..3 {
                if i != j {
                    basis *= (x - s[j]) / (s[i] - s[j]);
                }
            }
            acc += basis * self.values[i];
        }
        acc
    }

    /// Richardson tableau `(R1 from h, h/2; R1 from h/2, h/4; R2)`.
    fn tableau(&self) -> (f64, f64, f64) {
        let [g0, g1, g2] = self.values;
        let r1a = (4.0 * g1 - g0) / 3.0;
        let r1b = (4.0 * g2 - g1) / 3.0;
        (r1a, r1b, (16.0 * r1b - r1a) / 15.0)
    }
}

/// Limit `g(0+)` assuming an even-order error expansion `g(h) = g0 + c1 h^2 + ...`.
///
/// Fails when the tableau does not contract: the first-order correction
/// grows as `h` shrinks, or the second correction exceeds the first.
pub fn richardson_limit<G>(g: G, base_h: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let fit = EvenExtrapolation::sample(g, base_h)?;
    let (r1a, r1b, r2) = fit.tableau();
    let coarse = (r1a - fit.values[1]).abs();
    let first = (r1b - fit.values[2]).abs();
    let second = (r2 - r1b).abs();
    let noise = 1e-12 * fit.values[2].abs().max(f64::MIN_POSITIVE);
    if first > coarse + noise || second > first + noise {
        return Err(Error::Invariant {
            invariant: "richardson tableau contracts",
            residual: first.max(second),
        });
    }
    Ok(r2)
}
