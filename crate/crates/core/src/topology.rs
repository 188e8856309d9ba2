//! Homeomorphism and diffeomorphism tests for admissible bidouble covers.
//!
//! Every admissible cover is simply connected with an even intersection form,
//! so by Freedman's classification two of them are homeomorphic exactly when
//! (K², χ) agree. The divisibility index r of K_S is a diffeomorphism
//! invariant; distinct indices rule out a diffeomorphism, equal ones decide
//! nothing.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{self, CoverError, CoverType, SurfaceInvariants};

/// The pair (K², χ) that determines the homeomorphism class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomeoClassKey {
    pub kk: i64,
    pub chi: i64,
}

impl HomeoClassKey {
    /// Euler number of any member, 12χ − K².
    pub fn euler(&self) -> i64 {
        12 * self.chi - self.kk
    }
}

impl fmt::Display for HomeoClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kk, self.chi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DiffeoVerdict {
    NotDiffeomorphic,
    Inconclusive,
}

impl fmt::Display for DiffeoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiffeoVerdict::NotDiffeomorphic => "NOT_DIFFEOMORPHIC",
            DiffeoVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("not comparable: homeomorphism classes {0} and {1} differ")]
    NotComparable(HomeoClassKey, HomeoClassKey),
    #[error("invalid member {index}: {source}")]
    InvalidMember {
        index: usize,
        #[source]
        source: CoverError,
    },
    #[error("a tuple needs at least 2 members, got {0}")]
    TooFewMembers(usize),
}

pub fn homeo_class_key(inv: &SurfaceInvariants) -> HomeoClassKey {
    HomeoClassKey {
        kk: inv.kk,
        chi: inv.chi,
    }
}

pub fn are_homeomorphic(i1: &SurfaceInvariants, i2: &SurfaceInvariants) -> bool {
    homeo_class_key(i1) == homeo_class_key(i2)
}

pub fn diffeo_obstruction(
    i1: &SurfaceInvariants,
    i2: &SurfaceInvariants,
) -> Result<DiffeoVerdict, TopologyError> {
    let (k1, k2) = (homeo_class_key(i1), homeo_class_key(i2));
    if k1 != k2 {
        return Err(TopologyError::NotComparable(k1, k2));
    }
    Ok(if i1.r != i2.r {
        DiffeoVerdict::NotDiffeomorphic
    } else {
        DiffeoVerdict::Inconclusive
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleVerdict {
    pub is_catanese: bool,
    /// Present only when every member has the same key.
    pub shared_key: Option<HomeoClassKey>,
    pub indices: Vec<i64>,
    pub failures: Vec<String>,
}

/// Check conditions (i) equal (K², χ) and (ii) pairwise distinct r.
/// `failures` lists every offending pair of positions.
pub fn is_catanese_tuple(types: &[CoverType]) -> Result<TupleVerdict, TopologyError> {
    if types.len() < 2 {
        return Err(TopologyError::TooFewMembers(types.len()));
    }
    let invs: Vec<SurfaceInvariants> = types.iter().map(cover::surface_invariants).collect();
    let keys: Vec<HomeoClassKey> = invs.iter().map(homeo_class_key).collect();
    let indices: Vec<i64> = invs.iter().map(|i| i.r).collect();

    let mut failures = Vec::new();
    for i in 0..types.len() {
        for j in i + 1..types.len() {
            if keys[i] != keys[j] {
                failures.push(format!(
                    "members {i} and {j}: keys differ {} vs {}",
                    keys[i], keys[j]
                ));
            }
            if indices[i] == indices[j] {
                failures.push(format!(
                    "members {i} and {j}: equal index r = {}",
                    indices[i]
                ));
            }
        }
    }
    let shared_key = keys.iter().all(|k| *k == keys[0]).then_some(keys[0]);
    Ok(TupleVerdict {
        is_catanese: failures.is_empty(),
        shared_key,
        indices,
        failures,
    })
}

/// Validate raw quadruples, then run [`is_catanese_tuple`].
pub fn check_tuple_raw(raw: &[(i64, i64, i64, i64)]) -> Result<TupleVerdict, TopologyError> {
    let types = raw
        .iter()
        .enumerate()
        .map(|(index, &(a, b, m2, n2))| {
            cover::validate_type(a, b, m2, n2)
                .map_err(|source| TopologyError::InvalidMember { index, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    is_catanese_tuple(&types)
}
