//! Bounded search for Catanese k-tuples.
//!
//! The six admissibility conditions split into two independent halves:
//! (a, n2) with a > 2·n2, n2 ≥ 3, a ≡ n2 and (m2, b) with m2 > 2·b, b ≥ 3,
//! b ≡ m2. Both halves range over the same set of "branch pairs" (x, y), so
//! the search precomputes that list once and combines left and right pairs.
//! The swap involution exchanges the two halves, which makes the canonical
//! test a comparison of the two pairs.
//!
//! Types are grouped by (K², χ) in shard-local hash maps holding packed
//! 64-bit encodings, merged by a single owner, then frozen into sorted
//! buckets from which tuples with pairwise distinct r are extracted.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{self, CoverType, DEFAULT_FIELD_CAP};
use crate::topology::{self, HomeoClassKey};

/// Largest search bound accepted.
pub const GLOBAL_BOUND_CAP: i64 = DEFAULT_FIELD_CAP;

/// Default cap on tuples emitted from a single bucket.
pub const DEFAULT_TUPLE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("bound {0} exceeds the global cap {GLOBAL_BOUND_CAP}")]
    BoundTooLarge(i64),
    #[error("bound {0} is below 3")]
    BoundTooSmall(i64),
    #[error("tuple size k = {0} must be at least 2")]
    KTooSmall(usize),
    #[error("shard count must be at least 1")]
    NoShards,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub bound: i64,
    pub k: usize,
    pub max_results: Option<usize>,
    pub shard_count: usize,
    /// Per-bucket limit on emitted tuples.
    pub tuple_cap: usize,
}

impl SearchConfig {
    pub fn new(bound: i64, k: usize) -> Self {
        SearchConfig {
            bound,
            k,
            max_results: None,
            shard_count: 1,
            tuple_cap: DEFAULT_TUPLE_CAP,
        }
    }

    pub fn with_shards(mut self, shard_count: usize) -> Self {
        self.shard_count = shard_count;
        self
    }

    pub fn with_max_results(mut self, max_results: Option<usize>) -> Self {
        self.max_results = max_results;
        self
    }

    pub fn with_tuple_cap(mut self, tuple_cap: usize) -> Self {
        self.tuple_cap = tuple_cap;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.bound > GLOBAL_BOUND_CAP {
            return Err(SearchError::BoundTooLarge(self.bound));
        }
        if self.bound < 3 {
            return Err(SearchError::BoundTooSmall(self.bound));
        }
        if self.k < 2 {
            return Err(SearchError::KTooSmall(self.k));
        }
        if self.shard_count == 0 {
            return Err(SearchError::NoShards);
        }
        Ok(())
    }
}

/// Four 16-bit fields, a in the high bits, so integer order is lexicographic
/// order on (a, b, m2, n2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedType(u64);

impl PackedType {
    pub fn pack(t: &CoverType) -> PackedType {
        let (a, b, m2, n2) = t.as_tuple();
        PackedType(((a as u64) << 48) | ((b as u64) << 32) | ((m2 as u64) << 16) | n2 as u64)
    }

    pub fn unpack(self) -> CoverType {
        let field = |shift: u32| ((self.0 >> shift) & 0xffff) as i64;
        CoverType::from_admissible(field(48), field(32), field(16), field(0))
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

/// All (x, y) with x > 2y, y ≥ 3, x ≡ y (mod 2) and x ≤ bound, sorted.
fn branch_pairs(bound: i64) -> Vec<(i64, i64)> {
    let mut pairs = Vec::new();
    let mut y = 3;
    while 2 * y < bound {
        let mut x = if y % 2 == 1 { 2 * y + 1 } else { 2 * y + 2 };
        while x <= bound {
            pairs.push((x, y));
            x += 2;
        }
        y += 1;
    }
    pairs.sort_unstable();
    pairs
}

/// Left pair (a, n2), right pair (m2, b). The swap image pairs them the other
/// way round, so the type is canonical iff (a, n2) ≤ (m2, b) in the order
/// (x ascending, then y descending).
fn canonical_combination(left: (i64, i64), right: (i64, i64)) -> bool {
    left.0 < right.0 || (left.0 == right.0 && right.1 <= left.1)
}

/// Canonical admissible types whose left pair index is ≡ `shard` mod
/// `shard_count`.
pub fn enumerate_shard(
    bound: i64,
    shard: usize,
    shard_count: usize,
) -> impl Iterator<Item = CoverType> {
    let bound = bound.min(GLOBAL_BOUND_CAP);
    let pairs = branch_pairs(bound);
    let lefts: Vec<(i64, i64)> = pairs
        .iter()
        .copied()
        .enumerate()
        .filter(move |(i, _)| shard_count > 0 && i % shard_count == shard)
        .map(|(_, p)| p)
        .collect();
    lefts.into_iter().flat_map(move |left| {
        // Pairs are sorted by x, so everything with x < left.x is skipped.
        let start = pairs.partition_point(|p| p.0 < left.0);
        pairs[start..]
            .iter()
            .filter(move |&&right| canonical_combination(left, right))
            .map(move |&(m2, b)| CoverType::from_admissible(left.0, b, m2, left.1))
            .collect::<Vec<_>>()
    })
}

/// Every canonical admissible type with all fields ≤ `bound`, each once.
pub fn enumerate_admissible(bound: i64) -> impl Iterator<Item = CoverType> {
    enumerate_shard(bound, 0, 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomeoClassBucket {
    pub key: HomeoClassKey,
    /// Canonical, deduplicated, sorted.
    members: Vec<PackedType>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketMember {
    pub cover: CoverType,
    pub r: i64,
}

impl HomeoClassBucket {
    /// Freeze a bucket: canonicalize, sort and deduplicate.
    pub fn new(key: HomeoClassKey, members: impl IntoIterator<Item = CoverType>) -> Self {
        let mut packed: Vec<PackedType> = members
            .into_iter()
            .map(|t| PackedType::pack(&cover::canonicalize(&t)))
            .collect();
        packed.sort_unstable();
        packed.dedup();
        HomeoClassBucket {
            key,
            members: packed,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = BucketMember> + '_ {
        self.members.iter().map(|p| {
            let cover = p.unpack();
            let r = cover::divisibility_index(&cover::derive_params(&cover));
            BucketMember { cover, r }
        })
    }

    pub fn distinct_indices(&self) -> usize {
        let mut rs: Vec<i64> = self.members().map(|m| m.r).collect();
        rs.sort_unstable();
        rs.dedup();
        rs.len()
    }
}

fn key_of(t: &CoverType) -> HomeoClassKey {
    topology::homeo_class_key(&cover::surface_invariants(t))
}

type ShardMap = HashMap<HomeoClassKey, Vec<PackedType>>;

fn group_into(map: &mut ShardMap, types: impl IntoIterator<Item = CoverType>) {
    for t in types {
        let t = cover::canonicalize(&t);
        map.entry(key_of(&t))
            .or_default()
            .push(PackedType::pack(&t));
    }
}

fn freeze(map: ShardMap) -> BTreeMap<HomeoClassKey, HomeoClassBucket> {
    map.into_iter()
        .map(|(key, mut packed)| {
            packed.sort_unstable();
            packed.dedup();
            (
                key,
                HomeoClassBucket {
                    key,
                    members: packed,
                },
            )
        })
        .collect()
}

/// Group types by homeomorphism class. Non-canonical inputs are
/// canonicalized first, so both members of a swap pair land once.
pub fn group_by_homeo_class(
    types: impl IntoIterator<Item = CoverType>,
) -> BTreeMap<HomeoClassKey, HomeoClassBucket> {
    let mut map = ShardMap::new();
    group_into(&mut map, types);
    freeze(map)
}

/// Enumerate and group with `shard_count` independent shards, merged by a
/// single owner afterwards.
pub fn group_sharded(bound: i64, shard_count: usize) -> BTreeMap<HomeoClassKey, HomeoClassBucket> {
    let shard_maps: Vec<ShardMap> = (0..shard_count.max(1))
        .into_par_iter()
        .map(|shard| {
            let mut map = ShardMap::new();
            group_into(&mut map, enumerate_shard(bound, shard, shard_count.max(1)));
            map
        })
        .collect();
    let mut merged = ShardMap::new();
    for map in shard_maps {
        for (key, packed) in map {
            merged.entry(key).or_default().extend(packed);
        }
    }
    freeze(merged)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CataneseTuple {
    pub key: HomeoClassKey,
    pub members: Vec<CoverType>,
    pub indices: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub tuples: Vec<CataneseTuple>,
    /// Set when the bucket holds more than `cap` qualifying tuples.
    pub truncated: bool,
}

struct Extractor<'a> {
    members: &'a [BucketMember],
    /// Distinct r values among members[i..].
    distinct_suffix: Vec<usize>,
    k: usize,
    cap: usize,
    key: HomeoClassKey,
    chosen: Vec<usize>,
    out: Vec<CataneseTuple>,
    truncated: bool,
}

impl Extractor<'_> {
    /// Returns false once extraction must stop.
    fn descend(&mut self, start: usize) -> bool {
        if self.chosen.len() == self.k {
            if self.out.len() == self.cap {
                self.truncated = true;
                return false;
            }
            self.out.push(CataneseTuple {
                key: self.key,
                members: self.chosen.iter().map(|&i| self.members[i].cover).collect(),
                indices: self.chosen.iter().map(|&i| self.members[i].r).collect(),
            });
            return true;
        }
        let need = self.k - self.chosen.len();
        for i in start..self.members.len() {
            if self.distinct_suffix[i] < need {
                break;
            }
            let r = self.members[i].r;
            if self.chosen.iter().any(|&j| self.members[j].r == r) {
                continue;
            }
            self.chosen.push(i);
            let go_on = self.descend(i + 1);
            self.chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Every k-subset of the bucket with pairwise distinct r, members in sorted
/// order, tuples in lexicographic order; at most `cap` of them.
pub fn extract_k_tuples(bucket: &HomeoClassBucket, k: usize, cap: usize) -> Extraction {
    if k < 2 || bucket.distinct_indices() < k {
        return Extraction {
            tuples: Vec::new(),
            truncated: false,
        };
    }
    let members: Vec<BucketMember> = bucket.members().collect();
    let mut distinct_suffix = vec![0; members.len() + 1];
    let mut seen = std::collections::HashSet::new();
    for i in (0..members.len()).rev() {
        seen.insert(members[i].r);
        distinct_suffix[i] = seen.len();
    }
    let mut ex = Extractor {
        members: &members,
        distinct_suffix,
        k,
        cap,
        key: bucket.key,
        chosen: Vec::with_capacity(k),
        out: Vec::new(),
        truncated: false,
    };
    ex.descend(0);
    Extraction {
        tuples: ex.out,
        truncated: ex.truncated,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub tuples: Vec<CataneseTuple>,
    /// Buckets whose tuple list hit the per-bucket cap.
    pub truncated_buckets: Vec<HomeoClassKey>,
    /// Set when `max_results` cut the ordered output.
    pub truncated_results: bool,
    pub types_enumerated: usize,
    pub bucket_count: usize,
}

pub fn search(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let buckets = group_sharded(cfg.bound, cfg.shard_count);
    let types_enumerated = buckets.values().map(HomeoClassBucket::len).sum();

    let mut tuples = Vec::new();
    let mut truncated_buckets = Vec::new();
    let mut truncated_results = false;
    for bucket in buckets.values() {
        let extraction = extract_k_tuples(bucket, cfg.k, cfg.tuple_cap);
        if extraction.truncated {
            truncated_buckets.push(bucket.key);
        }
        tuples.extend(extraction.tuples);
        if let Some(max) = cfg.max_results {
            if tuples.len() >= max {
                truncated_results = tuples.len() > max || has_more(&buckets, bucket.key, cfg.k);
                tuples.truncate(max);
                break;
            }
        }
    }
    Ok(SearchResult {
        tuples,
        truncated_buckets,
        truncated_results,
        types_enumerated,
        bucket_count: buckets.len(),
    })
}

fn has_more(
    buckets: &BTreeMap<HomeoClassKey, HomeoClassBucket>,
    after: HomeoClassKey,
    k: usize,
) -> bool {
    use std::ops::Bound::{Excluded, Unbounded};
    buckets
        .range((Excluded(after), Unbounded))
        .any(|(_, b)| b.distinct_indices() >= k)
}
