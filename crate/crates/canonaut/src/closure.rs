//! Closure algebras over the profile coordinates.
//!
//! A closure element is a set of profiles `S`, denoting the language of all
//! words whose profile lies in `S`. Since every profile is witnessed by some
//! word, distinct sets denote distinct languages, which makes semantic
//! equality syntactic here. A closure algebra is the family of subsets of the
//! profile set generated by the residual elements under a kind-specific
//! operation set:
//!
//! * `Csl`  — arbitrary unions (complete join-semilattice),
//! * `Cdl`  — arbitrary unions and intersections (completely distributive lattice),
//! * `Caba` — all Boolean operations, i.e. the full powerset of profiles,
//! * `Vec`  — symmetric difference (vector space over GF(2)).
//!
//! Each carrier is closed under the per-letter derivative and carries the
//! pointed deterministic automaton the succinct constructions are read from.

use fixedbitset::FixedBitSet;
use std::collections::HashMap;
use std::sync::Arc;

use crate::bits;
use crate::dfa::Dfa;
use crate::error::Error;
use crate::profiles::ProfileSystem;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureKind {
    Csl,
    Cdl,
    Caba,
    Vec,
}

impl std::fmt::Display for ClosureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ClosureKind::Csl => "csl",
            ClosureKind::Cdl => "cdl",
            ClosureKind::Caba => "caba",
            ClosureKind::Vec => "vec",
        };
        f.write_str(s)
    }
}

/// The derivative of a closure element by one symbol:
/// `{ p | preimage_a(p) ∈ S }`. Kind-independent and total.
pub fn derivative(ps: &ProfileSystem, element: &FixedBitSet, symbol: usize) -> FixedBitSet {
    bits::from_indices(
        ps.len(),
        (0..ps.len()).filter(|&p| element.contains(ps.preimage(p, symbol))),
    )
}

/// Whether the element's language contains the empty word.
pub fn accepts_empty(ps: &ProfileSystem, element: &FixedBitSet) -> bool {
    element.contains(ps.eps_profile())
}

#[derive(Debug, Clone)]
pub struct ClosureAlgebra {
    kind: ClosureKind,
    system: Arc<ProfileSystem>,
    /// Carrier in generation order; `None` for a CABA left implicit beyond
    /// the materialization cap.
    carrier: Option<Vec<FixedBitSet>>,
    index: HashMap<FixedBitSet, usize>,
    residuals: Vec<FixedBitSet>,
    point: FixedBitSet,
}

fn residuals_of(ps: &ProfileSystem) -> Vec<FixedBitSet> {
    (0..ps.base().state_count())
        .map(|q| ps.residual_element(q))
        .collect()
}

/// All unions of the generators, including the empty union.
pub(crate) fn union_close(
    universe: usize,
    generators: &[FixedBitSet],
    cap: usize,
) -> Result<Vec<FixedBitSet>> {
    close_under(universe, generators, cap, |a, b| bits::union(a, b))
}

/// All unions and intersections of the generators, including the empty union
/// (bottom) and the empty intersection (top). Computed as joins of meets,
/// which is exhaustive because set operations distribute.
pub(crate) fn lattice_close(
    universe: usize,
    generators: &[FixedBitSet],
    cap: usize,
) -> Result<Vec<FixedBitSet>> {
    // meets of non-empty generator subsets
    let mut meets: Vec<FixedBitSet> = Vec::new();
    let mut meet_index: HashMap<FixedBitSet, usize> = HashMap::new();
    for g in generators {
        if !meet_index.contains_key(g) {
            meet_index.insert(g.clone(), meets.len());
            meets.push(g.clone());
        }
    }
    let mut i = 0;
    while i < meets.len() {
        let cur = meets[i].clone();
        for g in generators {
            let m = bits::intersection(&cur, g);
            if !meet_index.contains_key(&m) {
                if meets.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "closure carrier",
                        cap,
                    });
                }
                meet_index.insert(m.clone(), meets.len());
                meets.push(m);
            }
        }
        i += 1;
    }
    let top = bits::full(universe);
    if !meet_index.contains_key(&top) {
        meets.push(top);
    }
    union_close(universe, &meets, cap)
}

/// The GF(2) span of the generators.
pub(crate) fn span_close(
    universe: usize,
    generators: &[FixedBitSet],
    cap: usize,
) -> Result<Vec<FixedBitSet>> {
    close_under(universe, generators, cap, |a, b| bits::xor(a, b))
}

/// Worklist closure under a binary fold with the generators. Starting from
/// the neutral element (the empty set) and folding generators one at a time
/// reaches every combination, because both union and symmetric difference are
/// associative and commutative. Order: empty element, then the generators in
/// the given order (deduplicated), then discoveries.
fn close_under(
    universe: usize,
    generators: &[FixedBitSet],
    cap: usize,
    op: impl Fn(&FixedBitSet, &FixedBitSet) -> FixedBitSet,
) -> Result<Vec<FixedBitSet>> {
    let mut carrier: Vec<FixedBitSet> = vec![bits::empty(universe)];
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    index.insert(carrier[0].clone(), 0);
    for g in generators {
        if !index.contains_key(g) {
            if carrier.len() >= cap {
                return Err(Error::CapExceeded {
                    what: "closure carrier",
                    cap,
                });
            }
            index.insert(g.clone(), carrier.len());
            carrier.push(g.clone());
        }
    }
    let mut i = 0;
    while i < carrier.len() {
        let cur = carrier[i].clone();
        for g in generators {
            let next = op(&cur, g);
            if !index.contains_key(&next) {
                if carrier.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "closure carrier",
                        cap,
                    });
                }
                index.insert(next.clone(), carrier.len());
                carrier.push(next);
            }
        }
        i += 1;
    }
    Ok(carrier)
}

/// Groups the universe into blocks of points that the generators cannot
/// distinguish; the Boolean closure of the generators is exactly the family
/// of unions of blocks, so its size is 2^(number of blocks).
pub(crate) fn boolean_blocks(universe: usize, generators: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let mut blocks: Vec<FixedBitSet> = Vec::new();
    let mut signatures: Vec<Vec<bool>> = Vec::new();
    for p in 0..universe {
        let sig: Vec<bool> = generators.iter().map(|g| g.contains(p)).collect();
        match signatures.iter().position(|s| *s == sig) {
            Some(i) => blocks[i].insert(p),
            None => {
                signatures.push(sig);
                blocks.push(bits::singleton(universe, p));
            }
        }
    }
    blocks
}

fn make_algebra(
    kind: ClosureKind,
    system: Arc<ProfileSystem>,
    carrier: Option<Vec<FixedBitSet>>,
) -> ClosureAlgebra {
    let residuals = residuals_of(&system);
    let point = residuals[system.base().initial()].clone();
    let index = match &carrier {
        Some(c) => c
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect(),
        None => HashMap::new(),
    };
    ClosureAlgebra {
        kind,
        system,
        carrier,
        index,
        residuals,
        point,
    }
}

/// Union closure of the residual elements.
pub fn csl_closure(ps: &Arc<ProfileSystem>, cap: usize) -> Result<ClosureAlgebra> {
    let carrier = union_close(ps.len(), &residuals_of(ps), cap)?;
    Ok(make_algebra(ClosureKind::Csl, ps.clone(), Some(carrier)))
}

/// Union+intersection closure of the residual elements, with bottom and top.
pub fn cdl_closure(ps: &Arc<ProfileSystem>, cap: usize) -> Result<ClosureAlgebra> {
    let carrier = lattice_close(ps.len(), &residuals_of(ps), cap)?;
    Ok(make_algebra(ClosureKind::Cdl, ps.clone(), Some(carrier)))
}

/// The Boolean closure: the full powerset of profiles, because residuals
/// separate profiles. Materialized (in subset-mask order) only while the
/// profile count stays within `materialize_cap`; otherwise the carrier stays
/// implicit and operations that need to enumerate it fail.
pub fn caba_closure(ps: &Arc<ProfileSystem>, materialize_cap: usize) -> Result<ClosureAlgebra> {
    let n = ps.len();
    let carrier = if n <= materialize_cap && n < 63 {
        let mut all = Vec::with_capacity(1usize << n);
        for mask in 0u64..(1u64 << n) {
            all.push(bits::from_indices(
                n,
                (0..n).filter(|&p| mask & (1 << p) != 0),
            ));
        }
        Some(all)
    } else {
        None
    };
    Ok(make_algebra(ClosureKind::Caba, ps.clone(), carrier))
}

/// GF(2) span of the residual elements.
pub fn vec_closure(ps: &Arc<ProfileSystem>, cap: usize) -> Result<ClosureAlgebra> {
    let carrier = span_close(ps.len(), &residuals_of(ps), cap)?;
    Ok(make_algebra(ClosureKind::Vec, ps.clone(), Some(carrier)))
}

impl ClosureAlgebra {
    pub fn kind(&self) -> ClosureKind {
        self.kind
    }

    pub fn system(&self) -> &Arc<ProfileSystem> {
        &self.system
    }

    pub fn carrier(&self) -> Option<&[FixedBitSet]> {
        self.carrier.as_deref()
    }

    /// Number of carrier elements when materialized.
    pub fn carrier_len(&self) -> Option<usize> {
        self.carrier.as_ref().map(|c| c.len())
    }

    /// Exact carrier size, defined even for an implicit CABA when it fits in
    /// a `u128`.
    pub fn size(&self) -> Option<u128> {
        match (&self.carrier, self.kind) {
            (Some(c), _) => Some(c.len() as u128),
            (None, ClosureKind::Caba) => {
                let n = self.system.len();
                (n < 128).then(|| 1u128 << n)
            }
            (None, _) => None,
        }
    }

    /// log2 of the carrier size for the vector-space kind.
    pub fn dimension(&self) -> Option<usize> {
        if self.kind != ClosureKind::Vec {
            return None;
        }
        self.carrier.as_ref().map(|c| c.len().trailing_zeros() as usize)
    }

    pub fn residual(&self, q: usize) -> &FixedBitSet {
        &self.residuals[q]
    }

    pub fn residuals(&self) -> &[FixedBitSet] {
        &self.residuals
    }

    /// The element denoting the whole language.
    pub fn point(&self) -> &FixedBitSet {
        &self.point
    }

    pub fn contains(&self, element: &FixedBitSet) -> bool {
        match &self.carrier {
            Some(_) => self.index.contains_key(element),
            None => true, // implicit powerset
        }
    }

    pub fn element_index(&self, element: &FixedBitSet) -> Option<usize> {
        self.index.get(element).copied()
    }

    /// The pointed deterministic automaton on the carrier: transitions are
    /// derivatives, finals accept the empty word, the initial state is the
    /// point. Distinct carrier elements denote distinct languages, so the
    /// result is observable, but elements unreachable from the point keep it
    /// from being flagged minimal.
    pub fn dfa(&self) -> Result<Dfa> {
        let carrier = self.carrier.as_ref().ok_or(Error::Unmaterialized)?;
        let k = self.system.alphabet().len();
        let delta: Vec<Vec<usize>> = carrier
            .iter()
            .map(|s| {
                (0..k)
                    .map(|a| {
                        *self
                            .index
                            .get(&derivative(&self.system, s, a))
                            .expect("carrier is closed under derivatives")
                    })
                    .collect()
            })
            .collect();
        let finals = carrier
            .iter()
            .enumerate()
            .filter(|(_, s)| accepts_empty(&self.system, s))
            .map(|(i, _)| i);
        let initial = self.index[&self.point];
        Dfa::new(self.system.alphabet().clone(), initial, finals, delta)
    }

    /// Exhaustively checks that derivatives stay inside the carrier.
    pub fn closed_under_derivative(&self) -> bool {
        match &self.carrier {
            None => true,
            Some(c) => c.iter().all(|s| {
                (0..self.system.alphabet().len())
                    .all(|a| self.index.contains_key(&derivative(&self.system, s, a)))
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::profiles::{build_profiles, system_ends_in_a};

    pub(crate) fn arc_system() -> Arc<ProfileSystem> {
        Arc::new(system_ends_in_a())
    }

    // profile indices for (a+b)*a: 0 = {y} (ε), 1 = {x,y} (a), 2 = {} (b)
    fn s_x() -> FixedBitSet {
        bits::from_indices(3, [1])
    }
    fn s_y() -> FixedBitSet {
        bits::from_indices(3, [0, 1])
    }

    #[test]
    fn derivative_examples() {
        let ps = arc_system();
        // derivative of S_x on a is S_y
        assert_eq!(derivative(&ps, &s_x(), 0), s_y());
        // the empty and full elements are fixed by every letter
        assert_eq!(derivative(&ps, &bits::empty(3), 0), bits::empty(3));
        assert_eq!(derivative(&ps, &bits::full(3), 1), bits::full(3));
    }

    #[test]
    fn accepts_empty_examples() {
        let ps = arc_system();
        assert!(accepts_empty(&ps, &s_y()));
        assert!(!accepts_empty(&ps, &bits::empty(3)));
        assert!(accepts_empty(&ps, &bits::full(3)));
    }

    #[test]
    fn csl_carrier_of_running_example() {
        let ps = arc_system();
        let alg = csl_closure(&ps, 1 << 16).unwrap();
        let carrier = alg.carrier().unwrap();
        assert_eq!(carrier, &[bits::empty(3), s_x(), s_y()]);
        assert!(alg.closed_under_derivative());
        assert_eq!(alg.point(), &s_x());
    }

    #[test]
    fn cdl_carrier_of_running_example() {
        let ps = arc_system();
        let alg = cdl_closure(&ps, 1 << 16).unwrap();
        assert_eq!(
            alg.carrier().unwrap(),
            &[bits::empty(3), s_x(), s_y(), bits::full(3)]
        );
        assert!(alg.closed_under_derivative());
    }

    #[test]
    fn caba_carrier_of_running_example() {
        let ps = arc_system();
        let alg = caba_closure(&ps, 16).unwrap();
        assert_eq!(alg.carrier_len(), Some(8));
        assert_eq!(alg.size(), Some(8));
        assert!(alg.closed_under_derivative());
        // the meet of the elements {a-profile, b-profile} and {ε-profile} is empty
        let four = bits::from_indices(3, [1, 2]);
        let six = bits::from_indices(3, [0]);
        assert_eq!(bits::intersection(&four, &six), bits::empty(3));
    }

    #[test]
    fn caba_beyond_cap_stays_implicit() {
        let ps = arc_system();
        let alg = caba_closure(&ps, 2).unwrap();
        assert_eq!(alg.carrier_len(), None);
        assert_eq!(alg.size(), Some(8));
        assert!(alg.contains(&bits::from_indices(3, [0, 2])));
        assert!(matches!(alg.dfa(), Err(Error::Unmaterialized)));
    }

    #[test]
    fn vec_carrier_of_running_example() {
        let ps = arc_system();
        let alg = vec_closure(&ps, 1 << 16).unwrap();
        assert_eq!(
            alg.carrier().unwrap(),
            &[
                bits::empty(3),
                s_x(),
                s_y(),
                bits::from_indices(3, [0]) // S_x xor S_y
            ]
        );
        assert_eq!(alg.dimension(), Some(2));
        assert!(alg.closed_under_derivative());
    }

    #[test]
    fn closures_of_trivial_languages() {
        let ab = Alphabet::from_str("ab").unwrap();
        let none = Dfa::new(ab.clone(), 0, [], vec![vec![0, 0]])
            .unwrap()
            .minimize();
        let ps = Arc::new(build_profiles(&none, 1 << 16).unwrap());
        assert_eq!(csl_closure(&ps, 1 << 16).unwrap().carrier_len(), Some(1));
        assert_eq!(cdl_closure(&ps, 1 << 16).unwrap().carrier_len(), Some(2));
        let v = vec_closure(&ps, 1 << 16).unwrap();
        assert_eq!(v.carrier_len(), Some(1));
        assert_eq!(v.dimension(), Some(0));

        let all = Dfa::new(ab, 0, [0], vec![vec![0, 0]]).unwrap().minimize();
        let ps = Arc::new(build_profiles(&all, 1 << 16).unwrap());
        let csl = csl_closure(&ps, 1 << 16).unwrap();
        assert_eq!(csl.carrier_len(), Some(2)); // {}, {full}
    }

    #[test]
    fn closure_dfas_match_the_figures() {
        let ps = arc_system();
        // CSL: 3 states, initial S_x, final S_y
        let d = csl_closure(&ps, 1 << 16).unwrap().dfa().unwrap();
        assert_eq!(d.state_count(), 3);
        assert_eq!(d.initial(), 1);
        assert!(d.is_final(2) && !d.is_final(0) && !d.is_final(1));
        assert_eq!(d.step(1, 0), 2); // S_x --a--> S_y
        assert_eq!(d.step(1, 1), 1); // S_x --b--> S_x
        assert_eq!(d.step(2, 0), 2);
        assert_eq!(d.step(2, 1), 1);
        assert_eq!(d.step(0, 0), 0);
        assert_eq!(d.step(0, 1), 0);

        // VEC: 4 states
        let d = vec_closure(&ps, 1 << 16).unwrap().dfa().unwrap();
        assert_eq!(d.state_count(), 4);
        // the xor of the two residuals steps to zero on both letters
        assert_eq!(d.step(3, 0), 0);
        assert_eq!(d.step(3, 1), 0);

        // CABA: 8 states
        let d = caba_closure(&ps, 16).unwrap().dfa().unwrap();
        assert_eq!(d.state_count(), 8);
    }

    #[test]
    fn faithfulness_on_short_words() {
        // w ∈ language(S) ⇔ profile(w) ∈ S, for every carrier element
        let ps = arc_system();
        let alg = cdl_closure(&ps, 1 << 16).unwrap();
        let dfa = alg.dfa().unwrap();
        let carrier = alg.carrier().unwrap();
        let k = ps.alphabet().len();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..=6 {
            let mut next = Vec::new();
            for w in &words {
                let p = ps.profile_of_indices(w);
                for (i, s) in carrier.iter().enumerate() {
                    let in_language = dfa.is_final(dfa.run_from(i, w));
                    assert_eq!(in_language, s.contains(p));
                }
                for a in 0..k {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            words = next;
        }
    }

    #[test]
    fn closure_dfa_is_observable() {
        // no two carrier elements are language-equivalent: the quotient has
        // the same number of states
        let ps = arc_system();
        for alg in [
            csl_closure(&ps, 1 << 16).unwrap(),
            cdl_closure(&ps, 1 << 16).unwrap(),
            vec_closure(&ps, 1 << 16).unwrap(),
            caba_closure(&ps, 16).unwrap(),
        ] {
            let d = alg.dfa().unwrap();
            let roots: Vec<usize> = (0..d.state_count()).collect();
            let delta: Vec<Vec<usize>> = (0..d.state_count())
                .map(|q| (0..d.alphabet().len()).map(|a| d.step(q, a)).collect())
                .collect();
            let (q, _) = Dfa::observable_quotient(
                d.alphabet().clone(),
                delta,
                d.finals(),
                &roots,
            );
            assert_eq!(q.state_count(), d.state_count(), "{:?}", alg.kind());
        }
    }

    #[test]
    fn free_then_minimize_matches_reachable_closure_part() {
        // the subset construction over the minimal DFA, minimized, is
        // isomorphic to the reachable part of the CSL closure automaton;
        // likewise for vectors and the VEC closure
        let ps = arc_system();
        let base = ps.base().clone();

        let free = crate::nfa::Nfa::from_dfa(&base).determinize(1 << 16).unwrap();
        let lhs = free.minimize();
        let csl = csl_closure(&ps, 1 << 16).unwrap().dfa().unwrap();
        let rhs = csl.reachable_from(csl.initial(), false).minimize();
        assert_eq!(lhs, rhs);

        let free = crate::xfa::Xfa::from_dfa(&base).determinize(1 << 16).unwrap();
        let lhs = free.minimize();
        let vec = vec_closure(&ps, 1 << 16).unwrap().dfa().unwrap();
        let rhs = vec.reachable_from(vec.initial(), false).minimize();
        assert_eq!(lhs, rhs);
    }
}

#[cfg(test)]
pub(crate) use tests::arc_system;
