//! Non-deterministic finite automata with a *set* of initial states.
//!
//! Multi-initial NFAs are first class here: the canonical constructions point
//! their outputs with a set of states, and normalizing to a single initial
//! state would change the sizes that the minimality statements count. The
//! classical single-initial NFA is the special case `|initials| = 1`. An NFA
//! may have zero states; it then rejects every word.

use fixedbitset::FixedBitSet;
use std::collections::HashMap;
use std::collections::VecDeque;

use crate::alphabet::Alphabet;
use crate::bits;
use crate::dfa::Dfa;
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    state_count: usize,
    initials: FixedBitSet,
    finals: FixedBitSet,
    delta: Vec<Vec<FixedBitSet>>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        initials: impl IntoIterator<Item = usize>,
        finals: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let mut init = bits::empty(state_count);
        for q in initials {
            if q >= state_count {
                return Err(Error::InvalidAutomaton(format!(
                    "initial state {q} out of range (states = {state_count})"
                )));
            }
            init.insert(q);
        }
        let mut fin = bits::empty(state_count);
        for q in finals {
            if q >= state_count {
                return Err(Error::InvalidAutomaton(format!(
                    "final state {q} out of range (states = {state_count})"
                )));
            }
            fin.insert(q);
        }
        let mut delta = vec![vec![bits::empty(state_count); k]; state_count];
        for (from, on, to) in transitions {
            if from >= state_count || to >= state_count {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({from}, {on}, {to}) out of range (states = {state_count})"
                )));
            }
            if on >= k {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({from}, {on}, {to}) uses a symbol index out of range"
                )));
            }
            delta[from][on].insert(to);
        }
        Ok(Nfa {
            alphabet,
            state_count,
            initials: init,
            finals: fin,
            delta,
        })
    }

    /// Views a DFA as an NFA with singleton transitions and one initial state.
    pub fn from_dfa(dfa: &Dfa) -> Nfa {
        let n = dfa.state_count();
        let k = dfa.alphabet().len();
        let delta = (0..n)
            .map(|q| (0..k).map(|a| bits::singleton(n, dfa.step(q, a))).collect())
            .collect();
        Nfa {
            alphabet: dfa.alphabet().clone(),
            state_count: n,
            initials: bits::singleton(n, dfa.initial()),
            finals: dfa.finals().clone(),
            delta,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initials(&self) -> &FixedBitSet {
        &self.initials
    }

    pub fn finals(&self) -> &FixedBitSet {
        &self.finals
    }

    pub fn targets(&self, from: usize, symbol: usize) -> &FixedBitSet {
        &self.delta[from][symbol]
    }

    /// Image of a state set under one symbol.
    pub(crate) fn step_set(&self, set: &FixedBitSet, symbol: usize) -> FixedBitSet {
        let mut out = bits::empty(self.state_count);
        for q in set.ones() {
            out.union_with(&self.delta[q][symbol]);
        }
        out
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        let mut current = self.initials.clone();
        for &a in word {
            current = self.step_set(&current, a);
        }
        current.ones().any(|q| self.finals.contains(q))
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepts_indices(&self.alphabet.encode(word)?))
    }

    /// Reachable subset construction. States are numbered in BFS order from
    /// the initial subset, exploring symbols in alphabet order; the empty
    /// subset is an ordinary (rejecting sink) state when reached.
    pub fn determinize(&self, cap: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut subsets: Vec<FixedBitSet> = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();

        index.insert(self.initials.clone(), 0);
        subsets.push(self.initials.clone());
        queue.push_back(0usize);

        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next = self.step_set(&subsets[i].clone(), a);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        if id >= cap {
                            return Err(Error::CapExceeded {
                                what: "subset construction states",
                                cap,
                            });
                        }
                        index.insert(next.clone(), id);
                        subsets.push(next);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            delta.push(row);
        }

        let finals = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.ones().any(|q| self.finals.contains(q)))
            .map(|(i, _)| i);
        Dfa::new(self.alphabet.clone(), 0, finals, delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::ends_in_a;
    use crate::equiv::{equivalent, AutRef, Equivalence};
    use crate::Caps;

    /// The canonical RFSA for (a+b)*a: two states, both looping.
    pub(crate) fn rfsa_ends_in_a() -> Nfa {
        let ab = Alphabet::from_str("ab").unwrap();
        Nfa::new(
            ab,
            2,
            [0],
            [1],
            [
                (0, 0, 0),
                (0, 0, 1),
                (0, 1, 0),
                (1, 0, 0),
                (1, 0, 1),
                (1, 1, 0),
            ],
        )
        .unwrap()
    }

    /// The átomaton for (a+b)*a: three states indexed by the atoms.
    pub(crate) fn atomaton_ends_in_a() -> Nfa {
        let ab = Alphabet::from_str("ab").unwrap();
        // 0: atom of profile {y} (final), 1: atom of {x,y} (initial), 2: atom of {}.
        Nfa::new(
            ab,
            3,
            [1],
            [0],
            [(1, 0, 0), (1, 0, 1), (1, 1, 1), (2, 0, 2), (2, 1, 0), (2, 1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn rfsa_accepts_like_the_language() {
        let n = rfsa_ends_in_a();
        assert!(n.accepts("aba").unwrap());
        assert!(!n.accepts("b").unwrap());
        assert!(!n.accepts("").unwrap());
    }

    #[test]
    fn atomaton_accepts_like_the_language() {
        let n = atomaton_ends_in_a();
        assert!(!n.accepts("b").unwrap());
        assert!(n.accepts("ba").unwrap());
    }

    #[test]
    fn no_initials_rejects_everything() {
        let ab = Alphabet::from_str("ab").unwrap();
        let n = Nfa::new(ab, 2, [], [0, 1], [(0, 0, 1)]).unwrap();
        assert!(!n.accepts("").unwrap());
        assert!(!n.accepts("a").unwrap());
        let d = n.determinize(1 << 10).unwrap();
        assert_eq!(d.minimize().state_count(), 1);
    }

    #[test]
    fn determinize_rfsa_gives_minimal_dfa() {
        let d = rfsa_ends_in_a().determinize(1 << 10).unwrap();
        assert_eq!(d.state_count(), 2);
        let m = d.minimize();
        assert_eq!(m, ends_in_a().minimize());
    }

    #[test]
    fn determinize_atomaton_is_equivalent_to_language() {
        let n = atomaton_ends_in_a();
        let d = n.determinize(1 << 10).unwrap();
        assert!(d.state_count() <= 8);
        let target = ends_in_a();
        assert!(matches!(
            equivalent(AutRef::Dfa(&d), AutRef::Dfa(&target), &Caps::default()).unwrap(),
            Equivalence::Same
        ));
    }

    #[test]
    fn determinization_agrees_with_direct_runs() {
        // the defining property, on all words up to length 8
        let n = atomaton_ends_in_a();
        let d = n.determinize(1 << 10).unwrap();
        let k = n.alphabet().len();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..8 {
            let mut next = Vec::new();
            for w in &words {
                for a in 0..k {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            for w in &next {
                assert_eq!(n.accepts_indices(w), d.accepts_indices(w));
            }
            words = next;
        }
    }

    #[test]
    fn determinize_cap_is_enforced() {
        let n = rfsa_ends_in_a();
        assert!(matches!(
            n.determinize(1),
            Err(Error::CapExceeded { .. })
        ));
    }
}

#[cfg(test)]
pub(crate) use tests::{atomaton_ends_in_a, rfsa_ends_in_a};
