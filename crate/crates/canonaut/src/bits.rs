//! Small helpers over `FixedBitSet`, which represents every kind of subset in
//! this crate: state sets, profiles, and closure elements.

use fixedbitset::FixedBitSet;

pub(crate) fn empty(n: usize) -> FixedBitSet {
    FixedBitSet::with_capacity(n)
}

pub(crate) fn full(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub(crate) fn singleton(n: usize, i: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert(i);
    s
}

pub(crate) fn from_indices<I: IntoIterator<Item = usize>>(n: usize, it: I) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in it {
        s.insert(i);
    }
    s
}

pub(crate) fn union(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = a.clone();
    out.union_with(b);
    out
}

pub(crate) fn intersection(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = a.clone();
    out.intersect_with(b);
    out
}

pub(crate) fn xor(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = a.clone();
    out.symmetric_difference_with(b);
    out
}

/// Renders a subset as `{0,2,5}`.
pub(crate) fn render(s: &FixedBitSet) -> String {
    let inner: Vec<String> = s.ones().map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
