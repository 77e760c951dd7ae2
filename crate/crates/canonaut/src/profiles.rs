//! Profiles: the coordinate system for atoms and closures.
//!
//! The *profile* of a word `w` over a DFA is the set of states from which `w`
//! is accepted. Profiles satisfy `profile(aw) = preimage_a(profile(w))`, so
//! the profiles realized by some word are exactly the closure of the final
//! set under per-letter preimages (a reverse subset construction). For a
//! minimal DFA they index the atoms of the language: the words sharing a
//! profile form one atom, the atoms partition all words, and `w` is in the
//! language iff the initial state lies in `profile(w)`.

use fixedbitset::FixedBitSet;
use std::collections::{HashMap, VecDeque};

use crate::bits;
use crate::dfa::Dfa;
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone)]
pub struct ProfileSystem {
    base: Dfa,
    /// Reachable profiles in BFS discovery order; index 0 is profile(ε) = finals.
    profiles: Vec<FixedBitSet>,
    /// `preimage[p][a]` = index of { q | delta(q, a) ∈ profiles[p] }.
    preimage: Vec<Vec<usize>>,
    /// A shortest word with each profile, as symbol indices.
    witnesses: Vec<Vec<usize>>,
}

/// Builds the profile system of a minimal DFA.
pub fn build_profiles(minimal: &Dfa, cap: usize) -> Result<ProfileSystem> {
    if !minimal.is_minimal() {
        return Err(Error::NotMinimal);
    }
    ProfileSystem::build(minimal.clone(), cap)
}

impl ProfileSystem {
    /// Reverse subset construction from the final set. The base automaton
    /// must be observable (no two states language-equivalent) for profiles to
    /// index atoms; it does not need a reachable initial state, which lets
    /// analysis reuse this over multi-rooted quotients.
    pub(crate) fn build(base: Dfa, cap: usize) -> Result<ProfileSystem> {
        let n = base.state_count();
        let k = base.alphabet().len();
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut profiles: Vec<FixedBitSet> = Vec::new();
        let mut preimage: Vec<Vec<usize>> = Vec::new();
        let mut witnesses: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();

        let eps = base.finals().clone();
        index.insert(eps.clone(), 0);
        profiles.push(eps);
        witnesses.push(Vec::new());
        queue.push_back(0usize);

        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut pre = bits::empty(n);
                for q in 0..n {
                    if profiles[i].contains(base.step(q, a)) {
                        pre.insert(q);
                    }
                }
                let id = match index.get(&pre) {
                    Some(&id) => id,
                    None => {
                        let id = profiles.len();
                        if id >= cap {
                            return Err(Error::CapExceeded {
                                what: "profiles",
                                cap,
                            });
                        }
                        index.insert(pre.clone(), id);
                        profiles.push(pre);
                        let mut w = Vec::with_capacity(witnesses[i].len() + 1);
                        w.push(a);
                        w.extend_from_slice(&witnesses[i]);
                        witnesses.push(w);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            preimage.push(row);
        }

        Ok(ProfileSystem {
            base,
            profiles,
            preimage,
            witnesses,
        })
    }

    pub fn base(&self) -> &Dfa {
        &self.base
    }

    pub fn alphabet(&self) -> &crate::alphabet::Alphabet {
        self.base.alphabet()
    }

    /// Number of profiles, i.e. number of atoms of the language.
    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        false // there is always at least profile(ε)
    }

    /// Index of profile(ε); always 0 by construction.
    pub fn eps_profile(&self) -> usize {
        0
    }

    pub fn profile(&self, index: usize) -> &FixedBitSet {
        &self.profiles[index]
    }

    pub fn index_of(&self, profile: &FixedBitSet) -> Option<usize> {
        self.profiles.iter().position(|p| p == profile)
    }

    /// Index of { q | delta(q, a) ∈ profile }.
    pub fn preimage(&self, profile: usize, symbol: usize) -> usize {
        self.preimage[profile][symbol]
    }

    pub fn witness(&self, profile: usize) -> &[usize] {
        &self.witnesses[profile]
    }

    pub fn witness_str(&self, profile: usize) -> String {
        self.base.alphabet().render(&self.witnesses[profile])
    }

    /// Human-readable name of a profile: its witness word, with ε for the
    /// empty word.
    pub fn profile_label(&self, profile: usize) -> String {
        let w = self.witness_str(profile);
        if w.is_empty() {
            "⟨ε⟩".to_string()
        } else {
            format!("⟨{w}⟩")
        }
    }

    /// Label of a set of profiles, e.g. `{⟨ε⟩,⟨a⟩}`.
    pub fn element_label(&self, element: &FixedBitSet) -> String {
        let parts: Vec<String> = element.ones().map(|p| self.profile_label(p)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn profile_of_indices(&self, word: &[usize]) -> usize {
        let mut p = self.eps_profile();
        for &a in word.iter().rev() {
            p = self.preimage[p][a];
        }
        p
    }

    /// Profile of a word, computed by folding it right-to-left through the
    /// preimage transitions.
    pub fn profile_of(&self, word: &str) -> Result<usize> {
        Ok(self.profile_of_indices(&self.base.alphabet().encode(word)?))
    }

    /// The element { p | q ∈ p }: the residual of state `q` in profile
    /// coordinates.
    pub fn residual_element(&self, q: usize) -> FixedBitSet {
        bits::from_indices(
            self.len(),
            self.profiles
                .iter()
                .enumerate()
                .filter(|(_, p)| p.contains(q))
                .map(|(i, _)| i),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::dfa::ends_in_a;

    pub(crate) fn system_ends_in_a() -> ProfileSystem {
        build_profiles(&ends_in_a(), 1 << 16).unwrap()
    }

    #[test]
    fn running_example_has_three_profiles() {
        let ps = system_ends_in_a();
        assert_eq!(ps.len(), 3);
        assert_eq!(ps.profile(0), &bits::from_indices(2, [1])); // {y} = finals
        assert_eq!(ps.profile(1), &bits::from_indices(2, [0, 1])); // {x,y}
        assert_eq!(ps.profile(2), &bits::empty(2));
        assert_eq!(ps.witness_str(0), "");
        assert_eq!(ps.witness_str(1), "a");
        assert_eq!(ps.witness_str(2), "b");
        // preimage table: a sends {y} to {x,y}; b sends it to {}
        assert_eq!(ps.preimage(0, 0), 1);
        assert_eq!(ps.preimage(0, 1), 2);
        // {x,y} and {} are fixed by both letters
        assert_eq!(ps.preimage(1, 0), 1);
        assert_eq!(ps.preimage(1, 1), 1);
        assert_eq!(ps.preimage(2, 0), 2);
        assert_eq!(ps.preimage(2, 1), 2);
    }

    #[test]
    fn profile_of_figure_words() {
        let ps = system_ends_in_a();
        assert_eq!(ps.profile_of("").unwrap(), 0);
        assert_eq!(ps.profile_of("a").unwrap(), 1);
        assert_eq!(ps.profile_of("b").unwrap(), 2);
    }

    #[test]
    fn empty_language_has_single_empty_profile() {
        let ab = Alphabet::from_str("ab").unwrap();
        let d = Dfa::new(ab, 0, [], vec![vec![0, 0]]).unwrap().minimize();
        let ps = build_profiles(&d, 1 << 16).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps.profile(0), &bits::empty(1));
    }

    #[test]
    fn total_language_has_single_full_profile() {
        let ab = Alphabet::from_str("ab").unwrap();
        let d = Dfa::new(ab, 0, [0], vec![vec![0, 0]]).unwrap().minimize();
        let ps = build_profiles(&d, 1 << 16).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps.profile(0), &bits::from_indices(1, [0]));
    }

    #[test]
    fn requires_minimal_flag() {
        let ab = Alphabet::from_str("ab").unwrap();
        let d = Dfa::new(ab, 0, [1], vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(matches!(
            build_profiles(&d, 1 << 16),
            Err(Error::NotMinimal)
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            build_profiles(&ends_in_a(), 2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn defining_recurrence_holds_on_short_words() {
        let ps = system_ends_in_a();
        let k = ps.alphabet().len();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &words {
                for a in 0..k {
                    let mut v = vec![a];
                    v.extend_from_slice(w);
                    assert_eq!(
                        ps.profile_of_indices(&v),
                        ps.preimage(ps.profile_of_indices(w), a)
                    );
                    next.push(v);
                }
            }
            words = next;
        }
    }

    #[test]
    fn profiles_classify_membership_and_witnesses_cover() {
        // w ∈ L ⇔ initial ∈ profile(w), and the witness map hits every profile
        let ps = system_ends_in_a();
        let d = ps.base().clone();
        let mut seen = vec![false; ps.len()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..=6 {
            let mut next = Vec::new();
            for w in &words {
                let p = ps.profile_of_indices(w);
                seen[p] = true;
                assert_eq!(d.accepts_indices(w), ps.profile(p).contains(d.initial()));
                // direct simulation from every state agrees with the profile
                for q in 0..d.state_count() {
                    assert_eq!(
                        d.is_final(d.run_from(q, w)),
                        ps.profile(p).contains(q),
                        "state {q}, word {w:?}"
                    );
                }
                for a in 0..ps.alphabet().len() {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            words = next;
        }
        assert!(seen.iter().all(|&s| s));
        for p in 0..ps.len() {
            assert_eq!(ps.profile_of_indices(ps.witness(p)), p);
        }
    }
}

#[cfg(test)]
pub(crate) use tests::system_ends_in_a;
