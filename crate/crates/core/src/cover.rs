//! Simple bidouble covers of P¹×P¹ of type (a,b),(m2,n2).
//!
//! A type is admissible when
//!
//! ```text
//! a > 2·n2, n2 ≥ 3,   m2 > 2·b, b ≥ 3,
//! a ≡ n2 (mod 2),     b ≡ m2 (mod 2).
//! ```
//!
//! For admissible types the canonical class is the pull-back of O(u,v) with
//! u = n2+a−2, v = m2+b−2, and the numerical invariants follow from
//! K² = 8uv and χ = 3uv/2 + (u+v) + 2 − wz/2 where w = a−n2, z = m2−b.
//! Every quantity here is an exact `i64`; the field cap keeps all of them far
//! from overflow.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default inclusive cap applied to each of the four type parameters.
pub const DEFAULT_FIELD_CAP: i64 = 10_000;

/// Largest cap that can be configured. Types must pack into 16-bit fields.
pub const MAX_FIELD_CAP: i64 = u16::MAX as i64;

/// One of the six admissibility conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// a > 2·n2
    AExceedsTwiceN2,
    /// n2 ≥ 3
    N2AtLeastThree,
    /// m2 > 2·b
    M2ExceedsTwiceB,
    /// b ≥ 3
    BAtLeastThree,
    /// a ≡ n2 (mod 2)
    AParityN2,
    /// b ≡ m2 (mod 2)
    BParityM2,
}

impl Constraint {
    pub const ALL: [Constraint; 6] = [
        Constraint::AExceedsTwiceN2,
        Constraint::N2AtLeastThree,
        Constraint::M2ExceedsTwiceB,
        Constraint::BAtLeastThree,
        Constraint::AParityN2,
        Constraint::BParityM2,
    ];

    fn holds(self, a: i64, b: i64, m2: i64, n2: i64) -> bool {
        // Widened so that arbitrary unchecked input cannot overflow.
        let (a, b, m2, n2) = (a as i128, b as i128, m2 as i128, n2 as i128);
        match self {
            Constraint::AExceedsTwiceN2 => a > 2 * n2,
            Constraint::N2AtLeastThree => n2 >= 3,
            Constraint::M2ExceedsTwiceB => m2 > 2 * b,
            Constraint::BAtLeastThree => b >= 3,
            Constraint::AParityN2 => (a - n2).is_even(),
            Constraint::BParityM2 => (b - m2).is_even(),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Constraint::AExceedsTwiceN2 => "a > 2*n2",
            Constraint::N2AtLeastThree => "n2 >= 3",
            Constraint::M2ExceedsTwiceB => "m2 > 2*b",
            Constraint::BAtLeastThree => "b >= 3",
            Constraint::AParityN2 => "a = n2 (mod 2)",
            Constraint::BParityM2 => "b = m2 (mod 2)",
        };
        f.write_str(s)
    }
}

/// A field that exceeded the configured cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldOverCap {
    pub field: &'static str,
    pub value: i64,
    pub cap: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("constraint violation: {}", join_constraints(.0))]
    ConstraintViolation(Vec<Constraint>),
    #[error("out of range: {}", join_over_cap(.0))]
    OutOfRange(Vec<FieldOverCap>),
    #[error("field cap {0} must lie in [3, {MAX_FIELD_CAP}]")]
    InvalidCap(i64),
}

fn join_constraints(cs: &[Constraint]) -> String {
    cs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn join_over_cap(fs: &[FieldOverCap]) -> String {
    fs.iter()
        .map(|f| format!("{} = {} exceeds cap {}", f.field, f.value, f.cap))
        .collect::<Vec<_>>()
        .join(", ")
}

/// A validated cover type. Only constructible through [`validate_type`] or
/// [`validate_type_with_cap`], so every value in circulation is admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCoverType", into = "RawCoverType")]
pub struct CoverType {
    a: i64,
    b: i64,
    m2: i64,
    n2: i64,
}

/// Serialized shape of a cover type. Deserializing a [`CoverType`] goes
/// through validation against [`MAX_FIELD_CAP`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCoverType {
    pub a: i64,
    pub b: i64,
    pub m2: i64,
    pub n2: i64,
}

impl TryFrom<RawCoverType> for CoverType {
    type Error = CoverError;

    fn try_from(raw: RawCoverType) -> Result<Self, Self::Error> {
        validate_type_with_cap(raw.a, raw.b, raw.m2, raw.n2, MAX_FIELD_CAP)
    }
}

impl From<CoverType> for RawCoverType {
    fn from(t: CoverType) -> Self {
        RawCoverType {
            a: t.a,
            b: t.b,
            m2: t.m2,
            n2: t.n2,
        }
    }
}

impl CoverType {
    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn m2(&self) -> i64 {
        self.m2
    }

    pub fn n2(&self) -> i64 {
        self.n2
    }

    pub fn as_tuple(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.m2, self.n2)
    }

    /// Image under the branch-data involution (a,b,m2,n2) ↦ (m2,n2,a,b).
    pub fn swap(&self) -> CoverType {
        CoverType {
            a: self.m2,
            b: self.n2,
            m2: self.a,
            n2: self.b,
        }
    }

    /// Build from fields already known to be admissible and within
    /// [`MAX_FIELD_CAP`]. Used by the enumerator, which generates only
    /// admissible tuples.
    pub(crate) fn from_admissible(a: i64, b: i64, m2: i64, n2: i64) -> CoverType {
        debug_assert!(validate_type_with_cap(a, b, m2, n2, MAX_FIELD_CAP).is_ok());
        CoverType { a, b, m2, n2 }
    }
}

impl fmt::Display for CoverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}),({},{})", self.a, self.b, self.m2, self.n2)
    }
}

/// Every admissibility condition violated by (a, b, m2, n2), in a fixed order.
pub fn violated_constraints(a: i64, b: i64, m2: i64, n2: i64) -> Vec<Constraint> {
    Constraint::ALL
        .into_iter()
        .filter(|c| !c.holds(a, b, m2, n2))
        .collect()
}

/// Validate against the default cap of 10⁴ per field.
pub fn validate_type(a: i64, b: i64, m2: i64, n2: i64) -> Result<CoverType, CoverError> {
    validate_type_with_cap(a, b, m2, n2, DEFAULT_FIELD_CAP)
}

/// Validate against an explicit per-field cap.
pub fn validate_type_with_cap(
    a: i64,
    b: i64,
    m2: i64,
    n2: i64,
    cap: i64,
) -> Result<CoverType, CoverError> {
    if !(3..=MAX_FIELD_CAP).contains(&cap) {
        return Err(CoverError::InvalidCap(cap));
    }
    let over: Vec<FieldOverCap> = [("a", a), ("b", b), ("m2", m2), ("n2", n2)]
        .into_iter()
        .filter(|&(_, value)| value > cap)
        .map(|(field, value)| FieldOverCap { field, value, cap })
        .collect();
    if !over.is_empty() {
        return Err(CoverError::OutOfRange(over));
    }
    let violated = violated_constraints(a, b, m2, n2);
    if violated.is_empty() {
        Ok(CoverType { a, b, m2, n2 })
    } else {
        Err(CoverError::ConstraintViolation(violated))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivedParams {
    pub u: i64,
    pub v: i64,
    pub w: i64,
    pub z: i64,
}

pub fn derive_params(t: &CoverType) -> DerivedParams {
    DerivedParams {
        u: t.n2 + t.a - 2,
        v: t.m2 + t.b - 2,
        w: t.a - t.n2,
        z: t.m2 - t.b,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    /// K_S²
    pub kk: i64,
    /// χ(O_S)
    pub chi: i64,
    /// Topological Euler number, 12χ − K².
    pub euler: i64,
    /// Signature, K² − 8χ.
    pub sigma: i64,
    pub b2: i64,
    pub b_plus: i64,
    pub b_minus: i64,
    /// Geometric genus; q = 0 so p_g = χ − 1.
    pub p_g: i64,
    /// Divisibility index of K_S in H²(S, Z).
    pub r: i64,
}

pub fn surface_invariants(t: &CoverType) -> SurfaceInvariants {
    invariants_from_params(&derive_params(t))
}

/// Invariants from (u,v,w,z). u, v, w, z are even for admissible types, so
/// both halvings below are exact.
pub fn invariants_from_params(p: &DerivedParams) -> SurfaceInvariants {
    let DerivedParams { u, v, w, z } = *p;
    let kk = 8 * u * v;
    let chi = (3 * u * v) / 2 + (u + v) + 2 - (w * z) / 2;
    let euler = 12 * chi - kk;
    let sigma = kk - 8 * chi;
    let b2 = euler - 2;
    let b_plus = 2 * chi - 1;
    SurfaceInvariants {
        kk,
        chi,
        euler,
        sigma,
        b2,
        b_plus,
        b_minus: b2 - b_plus,
        p_g: chi - 1,
        r: divisibility_index(p),
    }
}

pub fn divisibility_index(p: &DerivedParams) -> i64 {
    p.u.gcd(&p.v)
}

/// Lexicographic minimum of `t` and its involution image.
pub fn canonicalize(t: &CoverType) -> CoverType {
    std::cmp::min(*t, t.swap())
}

pub fn is_canonical(t: &CoverType) -> bool {
    canonicalize(t) == *t
}
