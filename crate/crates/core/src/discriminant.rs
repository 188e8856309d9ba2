//! Numerical data of m-canonical discriminant curves and Zariski tuple
//! certificates.
//!
//! A generic projection f: S → P² given by a 3-dimensional subsystem of
//! |mK_S| has degree N = m²K², its ramification curve R lies in |(3m+1)K_S|
//! and maps birationally onto the branch curve B. From that:
//!
//! * deg B = R·mK = m(3m+1)K²
//! * 2g(R) − 2 = R·(R+K) = (3m+1)(3m+2)K²
//! * cusps c = 3N + 2g − 2 − e(S), by stratifying P² into the complement of
//!   B, the smooth part of B, its nodes and its cusps (fibres of size N,
//!   N−1, N−2, N−2) and adding Euler numbers
//! * nodes n = (D−1)(D−2)/2 − g − c, the plane genus formula
//!
//! All of it is exact `BigInt` arithmetic; node counts grow like D².

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{self, CoverType, SurfaceInvariants};
use crate::decimal;
use crate::topology::{self, HomeoClassKey, TopologyError};

/// Smallest canonical multiple accepted.
pub const MIN_MULT: i64 = 5;

/// Largest canonical multiple accepted, so that 3m+2 stays in `i64`.
pub const MAX_MULT: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscriminantError {
    #[error("canonical multiple m = {0} is below {MIN_MULT}")]
    MultTooSmall(i64),
    #[error("canonical multiple m = {0} exceeds {MAX_MULT}")]
    MultTooLarge(i64),
    #[error("node count came out negative ({0}); inputs are inconsistent")]
    NegativeNodes(BigInt),
    #[error("not a Catanese tuple: {}", .0.join("; "))]
    NotCatanese(Vec<String>),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscriminantProfile {
    pub mult: i64,
    /// Degree N of the covering.
    #[serde(with = "decimal")]
    pub deg_f: BigInt,
    #[serde(with = "decimal")]
    pub deg_b: BigInt,
    /// Genus of the normalization of B (equivalently of R).
    #[serde(with = "decimal")]
    pub genus: BigInt,
    #[serde(with = "decimal")]
    pub cusps: BigInt,
    #[serde(with = "decimal")]
    pub nodes: BigInt,
    /// R ~ ram_mult·K_S.
    pub ram_mult: i64,
    /// d with deg B = 2d.
    #[serde(with = "decimal")]
    pub half_deg: BigInt,
}

fn check_mult(mult: i64) -> Result<(), DiscriminantError> {
    if mult < MIN_MULT {
        Err(DiscriminantError::MultTooSmall(mult))
    } else if mult > MAX_MULT {
        Err(DiscriminantError::MultTooLarge(mult))
    } else {
        Ok(())
    }
}

/// c = 3N + (2g − 2) − e.
pub fn cusp_count_general(deg_f: &BigInt, genus: &BigInt, euler: &BigInt) -> BigInt {
    BigInt::from(3) * deg_f + (BigInt::from(2) * genus - 2) - euler
}

/// n = (D−1)(D−2)/2 − g − c.
pub fn node_count(
    deg_b: &BigInt,
    genus: &BigInt,
    cusps: &BigInt,
) -> Result<BigInt, DiscriminantError> {
    let arithmetic_genus = ((deg_b - 1u32) * (deg_b - 2u32)) / 2u32;
    let nodes = arithmetic_genus - genus - cusps;
    if nodes.is_negative() {
        Err(DiscriminantError::NegativeNodes(nodes))
    } else {
        Ok(nodes)
    }
}

pub fn discriminant_profile(
    inv: &SurfaceInvariants,
    mult: i64,
) -> Result<DiscriminantProfile, DiscriminantError> {
    profile_for_key(&topology::homeo_class_key(inv), mult)
}

/// Same as [`discriminant_profile`]; the profile depends on (K², χ) only.
pub fn profile_for_key(
    key: &HomeoClassKey,
    mult: i64,
) -> Result<DiscriminantProfile, DiscriminantError> {
    check_mult(mult)?;
    let kk = BigInt::from(key.kk);
    let euler = BigInt::from(key.euler());
    let m = BigInt::from(mult);
    let ram_mult = 3 * mult + 1;
    let ram = BigInt::from(ram_mult);

    let deg_f = &m * &m * &kk;
    let deg_b = &m * &ram * &kk;
    // (3m+1)(3m+2) is even, so the halving is exact for any K².
    let genus = (&ram * (&ram + 1u32) * &kk) / 2u32 + 1u32;
    let cusps = cusp_count_general(&deg_f, &genus, &euler);
    let nodes = node_count(&deg_b, &genus, &cusps)?;
    let half_deg = &deg_b / 2u32;

    Ok(DiscriminantProfile {
        mult,
        deg_f,
        deg_b,
        genus,
        cusps,
        nodes,
        ram_mult,
        half_deg,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Members are pairwise homeomorphic.
    HomeomorphicSurfaces,
    /// For each m the discriminant curves share degree, genus, cusps and
    /// nodes, so their tubular neighbourhoods are homeomorphic.
    EqualCurveData,
    /// A homeomorphism of plane pairs lifts to the covers and carries
    /// ramification curve onto ramification curve.
    LiftedHomeomorphism,
    /// [R] = (3m+1)K has divisibility (3m+1)·r, preserved by the lift.
    RamificationDivisibility,
    /// Distinct r contradict the lift, so no two plane pairs are homeomorphic.
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgumentStep {
    pub step: usize,
    pub kind: StepKind,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiCertificate {
    pub members: Vec<CoverType>,
    pub shared: HomeoClassKey,
    pub indices: Vec<i64>,
    pub profiles: Vec<DiscriminantProfile>,
    pub argument: Vec<ArgumentStep>,
}

/// Build a certificate for a Catanese tuple. Members are canonicalized and
/// kept in input order; multiples are sorted and deduplicated.
pub fn zariski_certificate(
    types: &[CoverType],
    mults: &[i64],
) -> Result<ZariskiCertificate, DiscriminantError> {
    let members: Vec<CoverType> = types.iter().map(cover::canonicalize).collect();
    let verdict = topology::is_catanese_tuple(&members)?;
    if !verdict.is_catanese {
        return Err(DiscriminantError::NotCatanese(verdict.failures));
    }
    let shared = verdict
        .shared_key
        .expect("a Catanese verdict always carries a shared key");

    let mut mults = mults.to_vec();
    mults.sort_unstable();
    mults.dedup();
    for &m in &mults {
        check_mult(m)?;
    }
    let profiles = mults
        .iter()
        .map(|&m| profile_for_key(&shared, m))
        .collect::<Result<Vec<_>, _>>()?;

    let argument = build_argument(&members, &shared, &verdict.indices, &profiles);
    Ok(ZariskiCertificate {
        members,
        shared,
        indices: verdict.indices,
        profiles,
        argument,
    })
}

fn build_argument(
    members: &[CoverType],
    shared: &HomeoClassKey,
    indices: &[i64],
    profiles: &[DiscriminantProfile],
) -> Vec<ArgumentStep> {
    let list = |xs: &[i64]| xs.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
    let member_list = members
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    let mults: Vec<i64> = profiles.iter().map(|p| p.mult).collect();

    let curve_data = if profiles.is_empty() {
        "no canonical multiples requested".to_string()
    } else {
        profiles
            .iter()
            .map(|p| {
                format!(
                    "m={}: deg={} genus={} cusps={} nodes={}",
                    p.mult, p.deg_b, p.genus, p.cusps, p.nodes
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    };

    let divisibility = if profiles.is_empty() {
        format!("indices r = [{}]", list(indices))
    } else {
        profiles
            .iter()
            .map(|p| {
                let divs: Vec<i64> = indices.iter().map(|r| p.ram_mult * r).collect();
                format!(
                    "m={}: R ~ {}K, divisibility [{}]",
                    p.mult,
                    p.ram_mult,
                    list(&divs)
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    };

    let steps = [
        (
            StepKind::HomeomorphicSurfaces,
            format!(
                "members {member_list} share (K^2, chi) = {shared} with even forms, hence are pairwise homeomorphic"
            ),
        ),
        (
            StepKind::EqualCurveData,
            format!("discriminant curves share numerical data for every member: {curve_data}"),
        ),
        (
            StepKind::LiftedHomeomorphism,
            format!(
                "a homeomorphism (P2, B_i) -> (P2, B_j) for m in [{}] would lift to a homeomorphism S_i -> S_j sending R_i to R_j",
                list(&mults)
            ),
        ),
        (
            StepKind::RamificationDivisibility,
            format!("such a lift preserves the divisibility of [R]: {divisibility}"),
        ),
        (
            StepKind::Contradiction,
            format!(
                "indices r = [{}] are pairwise distinct, so no such lift exists and the curves form a Zariski {}-tuple",
                list(indices),
                members.len()
            ),
        ),
    ];
    steps
        .into_iter()
        .enumerate()
        .map(|(i, (kind, statement))| ArgumentStep {
            step: i + 1,
            kind,
            statement,
        })
        .collect()
}

impl ZariskiCertificate {
    /// Recompute the certificate from its members and multiples and compare.
    pub fn verify(&self) -> Result<(), String> {
        let mults: Vec<i64> = self.profiles.iter().map(|p| p.mult).collect();
        let rebuilt = zariski_certificate(&self.members, &mults).map_err(|e| e.to_string())?;
        if rebuilt.members != self.members {
            return Err("members are not in canonical form".into());
        }
        if rebuilt.shared != self.shared {
            return Err(format!(
                "shared key {} does not match {}",
                self.shared, rebuilt.shared
            ));
        }
        if rebuilt.indices != self.indices {
            return Err("indices do not match recomputation".into());
        }
        if rebuilt.profiles != self.profiles {
            return Err("profiles do not match recomputation".into());
        }
        if rebuilt.argument != self.argument {
            return Err("argument steps do not match recomputation".into());
        }
        Ok(())
    }
}

/// 2g − 2 for a curve in |cK| on a surface with the given K², via adjunction.
pub fn adjunction_genus_term(ram_mult: i64, kk: i64) -> BigInt {
    BigInt::from(ram_mult) * BigInt::from(ram_mult + 1) * BigInt::from(kk)
}

/// True if the plane genus bookkeeping closes for `p`.
pub fn genus_bookkeeping_holds(p: &DiscriminantProfile) -> bool {
    let arithmetic = ((&p.deg_b - 1u32) * (&p.deg_b - 2u32)) / 2u32;
    p.deg_b.is_even()
        && !p.nodes.is_negative()
        && p.genus >= BigInt::from(2)
        && p.genus == arithmetic - &p.nodes - &p.cusps
        && p.half_deg.clone() * 2u32 == p.deg_b
}
