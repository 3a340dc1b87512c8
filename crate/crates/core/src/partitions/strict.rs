use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, TOLERANCES};

/// A partition with pairwise distinct parts, stored in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("strict partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::invalid(format!(
                "parts {parts:?} are not strictly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    /// Builds the partition whose parts are the given distinct sites, in any order.
    pub fn from_sites(sites: &[u32]) -> Result<Self> {
        let mut parts = sites.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|lambda|`, the sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `l(lambda)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Parts in increasing order, i.e. the associated lattice configuration.
    pub fn sites(&self) -> Vec<u32> {
        self.parts.iter().rev().copied().collect()
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Self {
        p.parts
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let joined: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&joined.join("+"))
    }
}

impl FromStr for StrictPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split('+')
            .map(|p| p.trim().parse::<u32>().map_err(|e| Error::invalid(format!("part `{p}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// All strict partitions of `n`, in decreasing lexicographic order, subject
/// to the default enumeration cap.
pub fn enumerate_strict(n: u32) -> Result<Vec<StrictPartition>> {
    enumerate_strict_capped(n, TOLERANCES.enumeration_cap)
}

pub fn enumerate_strict_capped(n: u32, cap: usize) -> Result<Vec<StrictPartition>> {
    if n as usize > cap {
        return Err(Error::CapExceeded {
            cap,
            requested: n as usize,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend(n, n, &mut current, &mut out);
    Ok(out)
}

// parts of `remaining` using parts <= `bound`, largest first
fn extend(remaining: u32, bound: u32, current: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
    if remaining == 0 {
        out.push(StrictPartition {
            parts: current.clone(),
        });
        return;
    }
    let top = remaining.min(bound);
    for part in (1..=top).rev() {
        // the parts below `part` are distinct and at most part - 1
        if part * (part + 1) / 2 < remaining {
            break;
        }
        current.push(part);
        extend(remaining - part, part - 1, current, out);
        current.pop();
    }
}

/// Number of strict partitions of `n` by the product `prod (1 + q^k)`.
pub fn count_strict(n: u32) -> u64 {
    let n = n as usize;
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for k in 1..=n {
        for m in (k..=n).rev() {
            ways[m] += ways[m - k];
        }
    }
    ways[n]
}

/// Writes `partition,weight` rows with parts joined by `+`.
pub fn write_partitions_csv<W: Write>(out: W, rows: &[(StrictPartition, f64)]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["partition", "weight"])?;
    for (lambda, weight) in rows {
        writer.write_record([lambda.to_string(), format!("{weight:e}")])?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// q(n) via Euler's pentagonal-type recurrence for partitions into odd
    /// parts, which are equinumerous with strict partitions.
    fn odd_part_count(n: usize) -> u64 {
        let mut table = vec![vec![0u64; n + 1]; n + 1];
        // table[k][m]: partitions of m into odd parts <= k
        for k in 0..=n {
            table[k][0] = 1;
        }
        for k in 1..=n {
            for m in 1..=n {
                table[k][m] = table[k - 1][m];
                if k % 2 == 1 && m >= k {
                    table[k][m] += table[k][m - k];
                }
            }
        }
        table[n][n]
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_strict(0).unwrap(), vec![StrictPartition::empty()]);
        let three: Vec<String> = enumerate_strict(3).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(three, vec!["3", "2+1"]);
    }

    #[test]
    fn counts_match_independent_recurrence() {
        assert_eq!(enumerate_strict(10).unwrap().len(), 10);
        for n in 0..=40u32 {
            let listed = enumerate_strict(n).unwrap();
            assert_eq!(listed.len() as u64, odd_part_count(n as usize), "n={n}");
            assert_eq!(count_strict(n), listed.len() as u64);
            assert!(listed.iter().all(|p| p.weight() == n));
            assert!(listed.windows(2).all(|w| w[0] > w[1]), "descending order at n={n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_strict(61), Err(Error::CapExceeded { .. })));
        assert!(enumerate_strict_capped(8, 7).is_err());
    }

    #[test]
    fn validation_and_parsing() {
        assert!(StrictPartition::new(vec![2, 2]).is_err());
        assert!(StrictPartition::new(vec![1, 3]).is_err());
        assert!(StrictPartition::new(vec![3, 0]).is_err());
        let p: StrictPartition = "5+3+1".parse().unwrap();
        assert_eq!(p.parts(), &[5, 3, 1]);
        assert_eq!(p.sites(), vec![1, 3, 5]);
        assert_eq!(p.largest(), 5);
        assert_eq!("".parse::<StrictPartition>().unwrap(), StrictPartition::empty());
        assert_eq!(StrictPartition::from_sites(&[1, 5, 3]).unwrap(), p);
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        let rows = vec![(StrictPartition::new(vec![3]).unwrap(), 0.5), (StrictPartition::empty(), 0.25)];
        write_partitions_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "partition,weight\n3,5e-1\n,2.5e-1\n");
    }
}
