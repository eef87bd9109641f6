//! Subspaces spanned by combinations, kept in fully reduced row-echelon
//! form with respect to the key order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::combination::Combination;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanError {
    /// A combination uses a key outside the declared ambient basis.
    KeyOutsideAmbient,
    /// A combination mixes keys from different blocks of a [`BlockSpan`].
    Inhomogeneous,
}

impl fmt::Display for SpanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanError::KeyOutsideAmbient => f.write_str("key outside the ambient basis"),
            SpanError::Inhomogeneous => f.write_str("combination is not homogeneous"),
        }
    }
}

impl core::error::Error for SpanError {}

/// Reduced row-echelon basis of a subspace.
///
/// Every row has coefficient 1 on its pivot (its smallest key) and no other
/// pivot key in its support, so the stored basis is canonical for the
/// subspace and reduction is a single pass.
#[derive(Clone)]
pub struct SpanBasis<K: Ord + Clone> {
    rows: BTreeMap<K, Combination<K>>,
    /// Non-pivot key -> pivots of the rows whose support contains it.
    occurrences: BTreeMap<K, BTreeSet<K>>,
    ambient: Option<BTreeSet<K>>,
}

impl<K: Ord + Clone> Default for SpanBasis<K> {
    fn default() -> Self {
        SpanBasis { rows: BTreeMap::new(), occurrences: BTreeMap::new(), ambient: None }
    }
}

impl<K: Ord + Clone + fmt::Debug> fmt::Debug for SpanBasis<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.values()).finish()
    }
}

impl<K: Ord + Clone> PartialEq for SpanBasis<K> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl<K: Ord + Clone> Eq for SpanBasis<K> {}

impl<K: Ord + Clone> SpanBasis<K> {
    pub fn new() -> Self {
        SpanBasis::default()
    }

    /// Basis whose checked operations reject keys outside `ambient`.
    pub fn with_ambient<I: IntoIterator<Item = K>>(ambient: I) -> Self {
        SpanBasis { ambient: Some(ambient.into_iter().collect()), ..SpanBasis::default() }
    }

    pub fn from_generators<'a, I>(generators: I) -> Self
    where
        I: IntoIterator<Item = &'a Combination<K>>,
        K: 'a,
    {
        let mut basis = SpanBasis::new();
        for g in generators {
            basis.insert(g);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Combination<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, key: &K) -> bool {
        self.rows.contains_key(key)
    }

    pub fn ambient(&self) -> Option<&BTreeSet<K>> {
        self.ambient.as_ref()
    }

    pub fn check_support(&self, v: &Combination<K>) -> Result<(), SpanError> {
        match &self.ambient {
            Some(amb) if v.keys().any(|k| !amb.contains(k)) => Err(SpanError::KeyOutsideAmbient),
            _ => Ok(()),
        }
    }

    /// Normal form of `v` modulo the span: the unique representative of
    /// `v + span` supported on non-pivot keys. Zero iff `v` is in the span.
    pub fn reduce(&self, v: &Combination<K>) -> Combination<K> {
        let mut out = v.clone();
        for (k, c) in v {
            if let Some(row) = self.rows.get(k) {
                out.add_scaled(row, &-c);
            }
        }
        out
    }

    pub fn try_reduce(&self, v: &Combination<K>) -> Result<Combination<K>, SpanError> {
        self.check_support(v)?;
        Ok(self.reduce(v))
    }

    pub fn contains(&self, v: &Combination<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &Combination<K>) -> bool {
        let residue = self.reduce(v);
        let Some((pivot, lead)) = residue.leading() else {
            return false;
        };
        let pivot = pivot.clone();
        let row = residue.scaled(&lead.recip().expect("nonzero leading coefficient"));

        // Clear the new pivot from every stored row.
        if let Some(holders) = self.occurrences.remove(&pivot) {
            for holder in holders {
                let mut old = self.rows.remove(&holder).expect("occurrence index in sync");
                self.forget(&holder, &old);
                let factor = -old.coeff(&pivot);
                old.add_scaled(&row, &factor);
                self.remember(&holder, &old);
                self.rows.insert(holder, old);
            }
        }
        self.remember(&pivot, &row);
        self.rows.insert(pivot, row);
        true
    }

    /// [`SpanBasis::insert`] with the ambient check.
    pub fn try_insert(&mut self, v: &Combination<K>) -> Result<bool, SpanError> {
        self.check_support(v)?;
        Ok(self.insert(v))
    }

    fn remember(&mut self, pivot: &K, row: &Combination<K>) {
        for k in row.keys() {
            if k != pivot {
                self.occurrences.entry(k.clone()).or_default().insert(pivot.clone());
            }
        }
    }

    fn forget(&mut self, pivot: &K, row: &Combination<K>) {
        for k in row.keys() {
            if k == pivot {
                continue;
            }
            if let Some(set) = self.occurrences.get_mut(k) {
                set.remove(pivot);
                if set.is_empty() {
                    self.occurrences.remove(k);
                }
            }
        }
    }

    /// Keys of `ambient` that are not pivots: a basis of the quotient.
    pub fn complement<'a, I: IntoIterator<Item = &'a K>>(&self, ambient: I) -> Vec<K>
    where
        K: 'a,
    {
        ambient.into_iter().filter(|k| !self.is_pivot(k)).cloned().collect()
    }
}

/// Tagged key used by the Zassenhaus construction and kernel computations.
/// `First` keys sort before all `Second` keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side<A, B> {
    First(A),
    Second(B),
}

/// `A ∩ B` inside the ambient component, by the Zassenhaus construction:
/// echelonize `(a | a)` and `(b | 0)`; rows with zero left half span the
/// intersection.
pub fn intersect<K: Ord + Clone>(
    a: &SpanBasis<K>,
    b: &SpanBasis<K>,
    ambient: &[K],
) -> Result<SpanBasis<K>, SpanError> {
    let amb: BTreeSet<K> = ambient.iter().cloned().collect();
    for row in a.rows().chain(b.rows()) {
        if row.keys().any(|k| !amb.contains(k)) {
            return Err(SpanError::KeyOutsideAmbient);
        }
    }
    let mut stacked: SpanBasis<Side<K, K>> = SpanBasis::new();
    for row in a.rows() {
        let mut v = row.map_keys(|k| Side::First(k.clone()));
        v.add_scaled(&row.map_keys(|k| Side::Second(k.clone())), &Scalar::one());
        stacked.insert(&v);
    }
    for row in b.rows() {
        stacked.insert(&row.map_keys(|k| Side::First(k.clone())));
    }
    let mut out = SpanBasis::with_ambient(amb);
    for row in stacked.rows() {
        if let Some((Side::Second(_), _)) = row.leading() {
            out.insert(&row.map_keys(|k| match k {
                Side::Second(k) => k.clone(),
                Side::First(_) => unreachable!("left half vanishes below a right pivot"),
            }));
        }
    }
    Ok(out)
}

/// `span ∩ {combinations supported on keys satisfying keep}`.
///
/// Re-echelonizes with the rejected keys ordered first; the rows whose pivot
/// is a kept key are then supported on kept keys only.
pub fn intersect_coordinate<K, F>(span: &SpanBasis<K>, mut keep: F) -> SpanBasis<K>
where
    K: Ord + Clone,
    F: FnMut(&K) -> bool,
{
    let mut reordered: SpanBasis<Side<K, K>> = SpanBasis::new();
    for row in span.rows() {
        reordered.insert(&row.map_keys(|k| {
            if keep(k) {
                Side::Second(k.clone())
            } else {
                Side::First(k.clone())
            }
        }));
    }
    let mut out = SpanBasis::new();
    for row in reordered.rows() {
        if let Some((Side::Second(_), _)) = row.leading() {
            out.insert(&row.map_keys(|k| match k {
                Side::First(k) | Side::Second(k) => k.clone(),
            }));
        }
    }
    out
}

/// Basis of the kernel of the linear map sending the `i`-th basis vector to
/// `images[i]`, as combinations over column indices.
pub fn kernel<K: Ord + Clone>(images: &[Combination<K>]) -> Vec<Combination<usize>> {
    let mut stacked: SpanBasis<Side<K, usize>> = SpanBasis::new();
    for (i, image) in images.iter().enumerate() {
        let mut v = image.map_keys(|k| Side::First(k.clone()));
        v.add_term(Side::Second(i), Scalar::one());
        stacked.insert(&v);
    }
    stacked
        .rows()
        .filter(|row| matches!(row.leading(), Some((Side::Second(_), _))))
        .map(|row| {
            row.map_keys(|k| match k {
                Side::Second(i) => *i,
                Side::First(_) => unreachable!("left half vanishes below a right pivot"),
            })
        })
        .collect()
}

/// Rank of the span of `vectors`.
pub fn rank_of<'a, K: Ord + Clone + 'a, I: IntoIterator<Item = &'a Combination<K>>>(vectors: I) -> usize {
    SpanBasis::from_generators(vectors).rank()
}

/// A span that is the direct sum of pieces living on disjoint key blocks.
///
/// `grader` assigns every key to a block; inserted combinations must be
/// homogeneous. Elimination runs per block, which keeps fill-in local.
#[derive(Clone)]
pub struct BlockSpan<K: Ord + Clone> {
    grader: fn(&K) -> u32,
    blocks: BTreeMap<u32, SpanBasis<K>>,
}

fn single_block<K>(_: &K) -> u32 {
    0
}

impl<K: Ord + Clone> Default for BlockSpan<K> {
    fn default() -> Self {
        BlockSpan::single()
    }
}

impl<K: Ord + Clone> BlockSpan<K> {
    /// One block holding everything.
    pub fn single() -> Self {
        BlockSpan { grader: single_block::<K>, blocks: BTreeMap::new() }
    }

    pub fn graded(grader: fn(&K) -> u32) -> Self {
        BlockSpan { grader, blocks: BTreeMap::new() }
    }

    fn block_of(&self, v: &Combination<K>) -> Result<Option<u32>, SpanError> {
        let mut block = None;
        for k in v.keys() {
            let b = (self.grader)(k);
            match block {
                None => block = Some(b),
                Some(prev) if prev != b => return Err(SpanError::Inhomogeneous),
                _ => {}
            }
        }
        Ok(block)
    }

    pub fn insert(&mut self, v: &Combination<K>) -> Result<bool, SpanError> {
        match self.block_of(v)? {
            None => Ok(false),
            Some(b) => Ok(self.blocks.entry(b).or_default().insert(v)),
        }
    }

    pub fn reduce(&self, v: &Combination<K>) -> Combination<K> {
        let mut out = v.clone();
        for (k, c) in v {
            let b = (self.grader)(k);
            if let Some(row) = self.blocks.get(&b).and_then(|s| s.rows.get(k)) {
                out.add_scaled(row, &-c);
            }
        }
        out
    }

    pub fn contains(&self, v: &Combination<K>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn is_pivot(&self, key: &K) -> bool {
        self.blocks.get(&(self.grader)(key)).is_some_and(|s| s.is_pivot(key))
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(SpanBasis::rank).sum()
    }

    pub fn block(&self, id: u32) -> Option<&SpanBasis<K>> {
        self.blocks.get(&id)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (u32, &SpanBasis<K>)> {
        self.blocks.iter().map(|(&b, s)| (b, s))
    }

    /// The same subspace as one reduced echelon basis. Blocks have disjoint
    /// supports, so the union of their rows is already reduced.
    pub fn to_span_basis(&self) -> SpanBasis<K> {
        let mut out = SpanBasis::new();
        for s in self.blocks.values() {
            for (p, row) in &s.rows {
                out.remember(p, row);
                out.rows.insert(p.clone(), row.clone());
            }
        }
        out
    }
}
