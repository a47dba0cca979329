//! Positive roots of split Chevalley types, enumerated from the Cartan matrix.
//!
//! Roots are closed upwards from the simple roots: a positive root `β` extends
//! to `β + α_i` exactly when the `α_i`-string through `β` continues, i.e. when
//! `q = p - <α_i^∨, β> > 0` where `p` is how far the string reaches downwards.
//! The downward part only involves roots of smaller height, which are already
//! known when height `k + 1` is generated from height `k`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Cartan-Killing family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A validated Dynkin type such as `A3`, `B2` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let valid = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if valid {
            Ok(DynkinType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{}{}", family.letter(), rank)))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cartan matrix with `a[i][j] = <α_i^∨, α_j>`, Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, a_ij: i64, a_ji: i64| {
            a[i][j] = a_ij;
            a[j][i] = a_ji;
        };
        match self.family {
            Family::A => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1, -1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                // α_n short
                link(n - 2, n - 1, -1, -2);
            }
            Family::C => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                // α_n long
                link(n - 2, n - 1, -2, -1);
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                // 1-3-4-5-...-n with 2 attached to 4
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1, -1);
                }
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            Family::G => {
                // α_1 short, α_2 long
                link(0, 1, -3, -1);
            }
        }
        a
    }

    /// Height of the highest root, i.e. the Coxeter number minus one.
    pub fn highest_root_height(&self) -> u32 {
        let n = self.rank as u32;
        match self.family {
            Family::A => n,
            Family::B | Family::C => 2 * n - 1,
            Family::D => 2 * n - 3,
            Family::E => match n {
                6 => 11,
                7 => 17,
                _ => 29,
            },
            Family::F => 11,
            Family::G => 5,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::InvalidType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

/// The positive roots of a Dynkin type in canonical (height, lex) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    dynkin: DynkinType,
    positive_roots: Vec<Vec<u32>>,
    heights: Vec<u32>,
}

impl RootSystem {
    pub fn build(dynkin: DynkinType) -> RootSystem {
        let cartan = dynkin.cartan_matrix();
        let n = dynkin.rank();

        let simple: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = vec![0u32; n];
                v[i] = 1;
                v
            })
            .collect();

        let mut known: HashSet<Vec<u32>> = simple.iter().cloned().collect();
        let mut roots = simple.clone();
        let mut layer = simple;

        while !layer.is_empty() {
            let mut next: Vec<Vec<u32>> = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    // <α_i^∨, β>
                    let pairing: i64 = (0..n).map(|j| beta[j] as i64 * cartan[i][j]).sum();
                    let mut p = 0i64;
                    let mut down = beta.clone();
                    while down[i] > 0 {
                        down[i] -= 1;
                        if !known.contains(&down) {
                            break;
                        }
                        p += 1;
                    }
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            for root in &next {
                known.insert(root.clone());
            }
            roots.extend(next.iter().cloned());
            layer = next;
        }

        roots.sort_by(|a, b| {
            let ha: u32 = a.iter().sum();
            let hb: u32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let heights = roots.iter().map(|r| r.iter().sum()).collect();
        RootSystem {
            dynkin,
            positive_roots: roots,
            heights,
        }
    }

    /// Convenience constructor from a family letter and rank.
    pub fn from_label(letter: char, rank: usize) -> Result<RootSystem> {
        let family = Family::from_letter(letter)
            .ok_or_else(|| Error::InvalidType(format!("{letter}{rank}")))?;
        Ok(RootSystem::build(DynkinType::new(family, rank)?))
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn label(&self) -> String {
        self.dynkin.to_string()
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank()
    }

    /// Number of positive roots.
    pub fn s(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_roots(&self) -> &[Vec<u32>] {
        &self.positive_roots
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(RootSystem::build(s.parse()?))
    }
}
