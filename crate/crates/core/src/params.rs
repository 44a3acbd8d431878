//! Int-GARCH(p, q, w) parameters.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Parameters `(k; μ; α_1..α_p; β_1..β_q; γ_1..γ_w)`.
///
/// `k` is the Gamma shape of the radius innovation, `μ` the intercept of the
/// scale recursion. Coefficients may be zero; a zero coefficient is a
/// boundary case the stationarity tests treat explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct IntGarchParams {
    k: f64,
    mu: f64,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    gamma: Vec<f64>,
}

impl IntGarchParams {
    pub fn new(k: f64, mu: f64, alpha: Vec<f64>, beta: Vec<f64>, gamma: Vec<f64>) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidParams("k must be positive and finite"));
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidParams("mu must be positive and finite"));
        }
        if alpha.is_empty() {
            return Err(Error::InvalidParams("alpha needs at least one coefficient (p >= 1)"));
        }
        if beta.is_empty() {
            return Err(Error::InvalidParams("beta needs at least one coefficient (q >= 1)"));
        }
        let ok = |c: &f64| c.is_finite() && *c >= 0.0;
        if !alpha.iter().all(ok) || !beta.iter().all(ok) || !gamma.iter().all(ok) {
            return Err(Error::InvalidParams("coefficients must be finite and nonnegative"));
        }
        Ok(Self {
            k,
            mu,
            alpha,
            beta,
            gamma,
        })
    }

    /// Int-GARCH(1,1,1).
    pub fn one_one_one(k: f64, mu: f64, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        Self::new(k, mu, vec![alpha], vec![beta], vec![gamma])
    }

    #[inline]
    pub fn k(&self) -> f64 {
        self.k
    }

    #[inline]
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// `(p, q, w)`.
    pub fn orders(&self) -> (usize, usize, usize) {
        (self.alpha.len(), self.beta.len(), self.gamma.len())
    }

    /// Largest lag used by the scale recursion.
    pub fn max_lag(&self) -> usize {
        let (p, q, w) = self.orders();
        p.max(q).max(w)
    }

    pub fn is_one_one_one(&self) -> bool {
        self.orders() == (1, 1, 1)
    }

    /// `(α_1, β_1, γ_1)` of an Int-GARCH(1,1,1) model.
    pub fn first_order(&self) -> Result<(f64, f64, f64)> {
        if !self.is_one_one_one() {
            let (p, q, w) = self.orders();
            return Err(Error::UnsupportedOrder { p, q, w });
        }
        Ok((self.alpha[0], self.beta[0], self.gamma[0]))
    }

    /// `true` when every α, β and γ coefficient is zero (i.i.d. intervals).
    pub fn all_coefficients_zero(&self) -> bool {
        self.alpha
            .iter()
            .chain(&self.beta)
            .chain(&self.gamma)
            .all(|&c| c == 0.0)
    }

    pub fn with_k(&self, k: f64) -> Result<Self> {
        Self::new(k, self.mu, self.alpha.clone(), self.beta.clone(), self.gamma.clone())
    }

    pub fn with_gamma(&self, gamma: Vec<f64>) -> Result<Self> {
        Self::new(self.k, self.mu, self.alpha.clone(), self.beta.clone(), gamma)
    }
}

impl fmt::Display for IntGarchParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} mu={} alpha={:?} beta={:?} gamma={:?}", self.k, self.mu, self.alpha, self.beta, self.gamma)
    }
}

/// The four Int-GARCH(1,1,1) parameter sets of the simulation study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceModel {
    I,
    II,
    III,
    IV,
}

impl ReferenceModel {
    pub const ALL: [ReferenceModel; 4] = [Self::I, Self::II, Self::III, Self::IV];

    /// `(k, μ, α_1, β_1, γ_1)`.
    pub fn values(self) -> [f64; 5] {
        match self {
            Self::I => [4.7162, 0.4724, 0.2637, 0.0906, 0.1796],
            Self::II => [2.7330, 0.1385, 0.2572, 0.0202, 0.1459],
            Self::III => [5.4871, 0.5331, 0.1782, 0.0253, 0.1396],
            Self::IV => [1.9108, 0.3640, 0.2642, 0.0228, 0.0705],
        }
    }

    pub fn params(self) -> IntGarchParams {
        let [k, mu, a, b, g] = self.values();
        IntGarchParams::one_one_one(k, mu, a, b, g).expect("reference parameters are valid")
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::I => "I",
            Self::II => "II",
            Self::III => "III",
            Self::IV => "IV",
        }
    }
}

impl FromStr for ReferenceModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" | "1" => Ok(Self::I),
            "II" | "ii" | "2" => Ok(Self::II),
            "III" | "iii" | "3" => Ok(Self::III),
            "IV" | "iv" | "4" => Ok(Self::IV),
            _ => Err(Error::InvalidParams("unknown reference model (expected I, II, III or IV)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(IntGarchParams::one_one_one(0.0, 1.0, 0.1, 0.1, 0.1).is_err());
        assert!(IntGarchParams::one_one_one(1.0, 0.0, 0.1, 0.1, 0.1).is_err());
        assert!(IntGarchParams::one_one_one(1.0, 1.0, -0.1, 0.1, 0.1).is_err());
        assert!(IntGarchParams::new(1.0, 1.0, vec![], vec![0.1], vec![]).is_err());
        assert!(IntGarchParams::new(1.0, 1.0, vec![0.1], vec![], vec![]).is_err());
        let p = IntGarchParams::new(1.0, 1.0, vec![0.1, 0.2], vec![0.1], vec![]).unwrap();
        assert_eq!(p.orders(), (2, 1, 0));
        assert_eq!(p.max_lag(), 2);
        assert!(matches!(p.first_order(), Err(Error::UnsupportedOrder { p: 2, q: 1, w: 0 })));
    }

    #[test]
    fn reference_models_parse() {
        for m in ReferenceModel::ALL {
            assert_eq!(m.name().parse::<ReferenceModel>().unwrap(), m);
            assert!(m.params().is_one_one_one());
        }
        assert!("V".parse::<ReferenceModel>().is_err());
    }
}
