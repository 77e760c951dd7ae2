//! GF(2)-weighted automata ("xor automata").
//!
//! Same shape as [`Nfa`](crate::nfa::Nfa), different semantics: initial and
//! final sets are characteristic vectors, transition images are summed mod 2,
//! and a word is accepted iff the reached vector has odd overlap with the
//! final vector. Two identical accepting runs cancel.

use fixedbitset::FixedBitSet;
use std::collections::HashMap;
use std::collections::VecDeque;

use crate::alphabet::Alphabet;
use crate::bits;
use crate::dfa::Dfa;
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xfa {
    alphabet: Alphabet,
    state_count: usize,
    initials: FixedBitSet,
    finals: FixedBitSet,
    delta: Vec<Vec<FixedBitSet>>,
}

impl Xfa {
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
            if from >= state_count || to >= state_count || on >= k {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({from}, {on}, {to}) out of range (states = {state_count})"
                )));
            }
            if delta[from][on].contains(to) {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate transition ({from}, {on}, {to}); GF(2) coefficients are 0 or 1"
                )));
            }
            delta[from][on].insert(to);
        }
        Ok(Xfa {
            alphabet,
            state_count,
            initials: init,
            finals: fin,
            delta,
        })
    }

    /// Views a DFA as an xor automaton with singleton transitions.
    pub fn from_dfa(dfa: &Dfa) -> Xfa {
        let n = dfa.state_count();
        let k = dfa.alphabet().len();
        let delta = (0..n)
            .map(|q| (0..k).map(|a| bits::singleton(n, dfa.step(q, a))).collect())
            .collect();
        Xfa {
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

    /// Linear image of a vector under one symbol: contributions are xor-ed.
    pub(crate) fn step_vector(&self, vector: &FixedBitSet, symbol: usize) -> FixedBitSet {
        let mut out = bits::empty(self.state_count);
        for q in vector.ones() {
            out.symmetric_difference_with(&self.delta[q][symbol]);
        }
        out
    }

    fn odd_overlap(&self, vector: &FixedBitSet) -> bool {
        vector.ones().filter(|&q| self.finals.contains(q)).count() % 2 == 1
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        let mut current = self.initials.clone();
        for &a in word {
            current = self.step_vector(&current, a);
        }
        self.odd_overlap(&current)
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepts_indices(&self.alphabet.encode(word)?))
    }

    /// Vector determinization. The state space is the GF(2) span of the
    /// vectors reachable from the initial vector: transitions are linear, so
    /// the span is closed under them, and the extra vectors make the result
    /// the full reachable linear realization rather than the bare orbit.
    /// Word-reachable vectors come first in BFS order; the remaining span
    /// elements follow in coefficient order over the discovered basis.
    pub fn determinize(&self, cap: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut vectors: Vec<FixedBitSet> = Vec::new();
        let mut queue = VecDeque::new();

        index.insert(self.initials.clone(), 0);
        vectors.push(self.initials.clone());
        queue.push_back(0usize);
        while let Some(i) = queue.pop_front() {
            let cur = vectors[i].clone();
            for a in 0..k {
                let next = self.step_vector(&cur, a);
                if !index.contains_key(&next) {
                    let id = vectors.len();
                    if id >= cap {
                        return Err(Error::CapExceeded {
                            what: "vector construction states",
                            cap,
                        });
                    }
                    index.insert(next.clone(), id);
                    vectors.push(next);
                    queue.push_back(id);
                }
            }
        }

        // Complete to the span of the discovered vectors.
        let mut basis: Vec<FixedBitSet> = Vec::new();
        for v in &vectors {
            let mut r = v.clone();
            for b in &basis {
                let pivot = b.ones().next().expect("basis vectors are non-zero");
                if r.contains(pivot) {
                    r.symmetric_difference_with(b);
                }
            }
            if r.count_ones(..) > 0 {
                // keep mutually reduced, sorted by pivot
                for b in basis.iter_mut() {
                    let pivot = r.ones().next().unwrap();
                    if b.contains(pivot) {
                        b.symmetric_difference_with(&r);
                    }
                }
                basis.push(r);
                basis.sort_by_key(|b| b.ones().next().unwrap());
            }
        }
        let rank = basis.len();
        if rank >= 63 || (1usize << rank) > cap {
            return Err(Error::CapExceeded {
                what: "vector construction states",
                cap,
            });
        }
        for mask in 0u64..(1u64 << rank) {
            let mut v = bits::empty(self.state_count);
            for (j, b) in basis.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    v.symmetric_difference_with(b);
                }
            }
            if !index.contains_key(&v) {
                let id = vectors.len();
                if id >= cap {
                    return Err(Error::CapExceeded {
                        what: "vector construction states",
                        cap,
                    });
                }
                index.insert(v.clone(), id);
                vectors.push(v);
            }
        }

        let delta: Vec<Vec<usize>> = vectors
            .iter()
            .map(|v| {
                (0..k)
                    .map(|a| *index.get(&self.step_vector(v, a)).expect("span is closed"))
                    .collect()
            })
            .collect();
        let finals = vectors
            .iter()
            .enumerate()
            .filter(|(_, v)| self.odd_overlap(v))
            .map(|(i, _)| i);
        Dfa::new(self.alphabet.clone(), 0, finals, delta)
    }
}


#[cfg(test)]
pub(crate) use tests::xor_ends_in_a;
