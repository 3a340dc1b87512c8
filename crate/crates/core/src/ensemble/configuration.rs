use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partitions::StrictPartition;
use crate::{Error, Result};

/// A finite set of lattice sites `x_1 < x_2 < ... < x_k`, all `>= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct PointConfiguration {
    sites: Vec<u32>,
}

impl PointConfiguration {
    pub fn new(sites: Vec<u32>) -> Result<Self> {
        if sites.first().is_some_and(|&s| s == 0) {
            return Err(Error::invalid("lattice sites start at 1"));
        }
        if sites.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!("sites {sites:?} are not strictly increasing")));
        }
        Ok(Self { sites })
    }

    /// Sorts and validates distinct sites given in any order.
    pub fn from_unsorted(mut sites: Vec<u32>) -> Result<Self> {
        sites.sort_unstable();
        Self::new(sites)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn sites(&self) -> &[u32] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// Largest site, 0 for the empty configuration.
    pub fn max_site(&self) -> u32 {
        self.sites.last().copied().unwrap_or(0)
    }

    /// Zero-based row indices into a lattice operator.
    pub fn indices(&self) -> Vec<usize> {
        self.sites.iter().map(|&s| s as usize - 1).collect()
    }

    pub fn contains_all(&self, other: &PointConfiguration) -> bool {
        // both sorted
        let mut it = self.sites.iter();
        other.sites.iter().all(|s| it.by_ref().any(|t| t == s))
    }
}

impl TryFrom<Vec<u32>> for PointConfiguration {
    type Error = Error;
    fn try_from(sites: Vec<u32>) -> Result<Self> {
        Self::new(sites)
    }
}

impl From<PointConfiguration> for Vec<u32> {
    fn from(c: PointConfiguration) -> Self {
        c.sites
    }
}

impl From<&StrictPartition> for PointConfiguration {
    fn from(p: &StrictPartition) -> Self {
        Self { sites: p.sites() }
    }
}

impl fmt::Display for PointConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sites.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `U(X) = prod_{i<j} (x_i - x_j) / (x_i + x_j)`.
pub fn u_factor(x: &PointConfiguration) -> f64 {
    let s = x.sites();
    let mut u = 1.0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let (a, b) = (s[i] as f64, s[j] as f64);
            u *= (a - b) / (a + b);
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conf(s: &[u32]) -> PointConfiguration {
        PointConfiguration::from_unsorted(s.to_vec()).unwrap()
    }

    #[test]
    fn u_factor_hand_values() {
        assert_eq!(u_factor(&conf(&[4])), 1.0);
        assert!((u_factor(&conf(&[2, 1])).abs() - 1.0 / 3.0).abs() < 1e-15);
        assert!((u_factor(&conf(&[3, 2, 1])).abs() - 1.0 / 30.0).abs() < 1e-15);
    }

    #[test]
    fn validation_and_containment() {
        assert!(PointConfiguration::new(vec![0, 1]).is_err());
        assert!(PointConfiguration::new(vec![2, 2]).is_err());
        assert!(PointConfiguration::new(vec![3, 1]).is_err());
        let big = conf(&[1, 4, 6, 9]);
        assert!(big.contains_all(&conf(&[4, 9])));
        assert!(big.contains_all(&PointConfiguration::empty()));
        assert!(!big.contains_all(&conf(&[4, 5])));
        let lambda = StrictPartition::new(vec![5, 2]).unwrap();
        assert_eq!(PointConfiguration::from(&lambda), conf(&[2, 5]));
    }
}
