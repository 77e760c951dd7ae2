//! Exact language equivalence with shortest distinguishing words.

use std::borrow::Cow;
use std::collections::{HashMap, VecDeque};

use crate::caps::Caps;
use crate::dfa::Dfa;
use crate::error::Error;
use crate::nfa::Nfa;
use crate::xfa::Xfa;
use crate::Result;

/// A borrowed automaton of any of the three kinds.
#[derive(Clone, Copy)]
pub enum AutRef<'a> {
    Dfa(&'a Dfa),
    Nfa(&'a Nfa),
    Xfa(&'a Xfa),
}

impl<'a> AutRef<'a> {
    pub fn alphabet(&self) -> &crate::alphabet::Alphabet {
        match self {
            AutRef::Dfa(d) => d.alphabet(),
            AutRef::Nfa(n) => n.alphabet(),
            AutRef::Xfa(x) => x.alphabet(),
        }
    }

    pub fn state_count(&self) -> usize {
        match self {
            AutRef::Dfa(d) => d.state_count(),
            AutRef::Nfa(n) => n.state_count(),
            AutRef::Xfa(x) => x.state_count(),
        }
    }

    /// Determinizes by the matching semantics; DFAs pass through unchanged.
    pub fn to_dfa(&self, caps: &Caps) -> Result<Cow<'a, Dfa>> {
        match self {
            AutRef::Dfa(d) => Ok(Cow::Borrowed(*d)),
            AutRef::Nfa(n) => Ok(Cow::Owned(n.determinize(caps.determinize_states)?)),
            AutRef::Xfa(x) => Ok(Cow::Owned(x.determinize(caps.determinize_states)?)),
        }
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        match self {
            AutRef::Dfa(d) => d.accepts(word),
            AutRef::Nfa(n) => n.accepts(word),
            AutRef::Xfa(x) => x.accepts(word),
        }
    }
}

/// Outcome of an equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Same,
    /// A shortest word accepted by exactly one of the two automata.
    DifferBy(String),
}

impl Equivalence {
    pub fn is_same(&self) -> bool {
        matches!(self, Equivalence::Same)
    }
}

/// Checks whether two automata accept the same language. Non-deterministic
/// inputs are determinized by their own semantics first; the product of the
/// two DFAs is then searched breadth-first, so a reported counterexample is a
/// shortest distinguishing word (and lexicographically least among those).
pub fn equivalent(a: AutRef<'_>, b: AutRef<'_>, caps: &Caps) -> Result<Equivalence> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: a.alphabet().to_string(),
            right: b.alphabet().to_string(),
        });
    }
    let da = a.to_dfa(caps)?;
    let db = b.to_dfa(caps)?;
    Ok(distinguish(&da, &db))
}

fn distinguish(a: &Dfa, b: &Dfa) -> Equivalence {
    let k = a.alphabet().len();
    let start = (a.initial(), b.initial());
    let mut parent: HashMap<(usize, usize), ((usize, usize), usize)> = HashMap::new();
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start, ());
    queue.push_back(start);
    while let Some(pair) = queue.pop_front() {
        let (p, q) = pair;
        if a.is_final(p) != b.is_final(q) {
            // walk the parent links back to the start
            let mut letters = Vec::new();
            let mut cur = pair;
            while cur != start {
                let (prev, sym) = parent[&cur];
                letters.push(sym);
                cur = prev;
            }
            letters.reverse();
            return Equivalence::DifferBy(a.alphabet().render(&letters));
        }
        for sym in 0..k {
            let next = (a.step(p, sym), b.step(q, sym));
            if seen.insert(next, ()).is_none() {
                parent.insert(next, (pair, sym));
                queue.push_back(next);
            }
        }
    }
    Equivalence::Same
}
