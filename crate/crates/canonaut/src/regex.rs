//! Regular expressions: parsing, compilation to minimal DFAs, and a
//! derivative-based membership oracle.
//!
//! Grammar: `|` or `+` for union, juxtaposition for concatenation, postfix
//! `*`, parentheses, `~e` for the empty word and `~0` for the empty language.
//! Symbols are single characters drawn from an explicitly declared alphabet
//! (residuals and closures depend on the full alphabet, including letters the
//! expression never mentions).
//!
//! Compilation goes position automaton (Glushkov) -> subset construction ->
//! minimization. The derivative engine is kept purely as an independent
//! membership oracle and never touches the automaton modules.

use crate::alphabet::Alphabet;
use crate::caps::Caps;
use crate::dfa::Dfa;
use crate::error::Error;
use crate::nfa::Nfa;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Epsilon,
    Literal(char),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn union(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, b) => b,
            (a, Regex::Empty) => a,
            (a, b) if a == b => a,
            (a, b) => Regex::Union(Box::new(a), Box::new(b)),
        }
    }

    pub fn concat(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
            (Regex::Epsilon, b) => b,
            (a, Regex::Epsilon) => a,
            (a, b) => Regex::Concat(Box::new(a), Box::new(b)),
        }
    }

    pub fn star(a: Regex) -> Regex {
        match a {
            Regex::Empty | Regex::Epsilon => Regex::Epsilon,
            s @ Regex::Star(_) => s,
            a => Regex::Star(Box::new(a)),
        }
    }

    /// Whether the language contains the empty word.
    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Literal(_) => false,
            Regex::Epsilon | Regex::Star(_) => true,
            Regex::Union(a, b) => a.nullable() || b.nullable(),
            Regex::Concat(a, b) => a.nullable() && b.nullable(),
        }
    }

    /// Brzozowski derivative with respect to one symbol.
    pub fn derivative(&self, symbol: char) -> Regex {
        match self {
            Regex::Empty | Regex::Epsilon => Regex::Empty,
            Regex::Literal(c) => {
                if *c == symbol {
                    Regex::Epsilon
                } else {
                    Regex::Empty
                }
            }
            Regex::Union(a, b) => Regex::union(a.derivative(symbol), b.derivative(symbol)),
            Regex::Concat(a, b) => {
                let head = Regex::concat(a.derivative(symbol), (**b).clone());
                if a.nullable() {
                    Regex::union(head, b.derivative(symbol))
                } else {
                    head
                }
            }
            Regex::Star(a) => Regex::concat(a.derivative(symbol), Regex::star((**a).clone())),
        }
    }

    /// Membership by repeated derivation; independent of the automaton path.
    pub fn member(&self, word: &str) -> bool {
        let mut r = self.clone();
        for c in word.chars() {
            r = r.derivative(c);
            if r == Regex::Empty {
                return false;
            }
        }
        r.nullable()
    }

    /// Position automaton (Glushkov construction): one state per literal
    /// occurrence plus a start state, no epsilon transitions.
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Result<Nfa> {
        let mut positions: Vec<char> = Vec::new();
        let mut follow: Vec<Vec<usize>> = Vec::new();
        let info = glushkov(self, &mut positions, &mut follow);

        let n = positions.len() + 1;
        let mut transitions: Vec<(usize, usize, usize)> = Vec::new();
        for &p in &info.first {
            transitions.push((0, alphabet.index_of(positions[p])?, p + 1));
        }
        for (p, follows) in follow.iter().enumerate() {
            for &q in follows {
                transitions.push((p + 1, alphabet.index_of(positions[q])?, q + 1));
            }
        }
        let mut finals: Vec<usize> = info.last.iter().map(|&p| p + 1).collect();
        if info.nullable {
            finals.push(0);
        }
        Nfa::new(alphabet.clone(), n, [0], finals, transitions)
    }

    /// Minimal DFA for the language over the declared alphabet. A dead sink
    /// state is present whenever some residual is the empty language.
    pub fn to_min_dfa(&self, alphabet: &Alphabet, caps: &Caps) -> Result<Dfa> {
        Ok(self
            .to_nfa(alphabet)?
            .determinize(caps.determinize_states)?
            .minimize())
    }
}

struct GlushkovInfo {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = a.to_vec();
    for &x in b {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn glushkov(r: &Regex, positions: &mut Vec<char>, follow: &mut Vec<Vec<usize>>) -> GlushkovInfo {
    match r {
        Regex::Empty => GlushkovInfo {
            nullable: false,
            first: vec![],
            last: vec![],
        },
        Regex::Epsilon => GlushkovInfo {
            nullable: true,
            first: vec![],
            last: vec![],
        },
        Regex::Literal(c) => {
            let p = positions.len();
            positions.push(*c);
            follow.push(Vec::new());
            GlushkovInfo {
                nullable: false,
                first: vec![p],
                last: vec![p],
            }
        }
        Regex::Union(a, b) => {
            let ia = glushkov(a, positions, follow);
            let ib = glushkov(b, positions, follow);
            GlushkovInfo {
                nullable: ia.nullable || ib.nullable,
                first: merge(&ia.first, &ib.first),
                last: merge(&ia.last, &ib.last),
            }
        }
        Regex::Concat(a, b) => {
            let ia = glushkov(a, positions, follow);
            let ib = glushkov(b, positions, follow);
            for &p in &ia.last {
                follow[p] = merge(&follow[p], &ib.first);
            }
            GlushkovInfo {
                nullable: ia.nullable && ib.nullable,
                first: if ia.nullable {
                    merge(&ia.first, &ib.first)
                } else {
                    ia.first
                },
                last: if ib.nullable {
                    merge(&ib.last, &ia.last)
                } else {
                    ib.last
                },
            }
        }
        Regex::Star(a) => {
            let ia = glushkov(a, positions, follow);
            for &p in &ia.last {
                follow[p] = merge(&follow[p], &ia.first);
            }
            GlushkovInfo {
                nullable: true,
                first: ia.first,
                last: ia.last,
            }
        }
    }
}

/// Parses an expression over the given alphabet. Star binds tighter than
/// concatenation, which binds tighter than union. Positions in errors are
/// zero-based character offsets; the end of input counts as one past the
/// last character.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = Parser {
        chars: &chars,
        pos: 0,
        alphabet,
    };
    let r = p.union()?;
    if p.pos < p.chars.len() {
        return Err(p.err(format!("unexpected character '{}'", p.chars[p.pos])));
    }
    Ok(r)
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn err(&self, message: String) -> Error {
        Error::Syntax {
            position: self.pos,
            message,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<Regex> {
        let mut r = self.concat()?;
        while matches!(self.peek(), Some('|') | Some('+')) {
            self.pos += 1;
            r = Regex::union(r, self.concat()?);
        }
        Ok(r)
    }

    fn starts_atom(&self, c: char) -> bool {
        c == '(' || c == '~' || self.alphabet.contains(c)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut r = self.postfix()?;
        while let Some(c) = self.peek() {
            if !self.starts_atom(c) {
                break;
            }
            r = Regex::concat(r, self.postfix()?);
        }
        Ok(r)
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            None => Err(self.err("unexpected end of input".into())),
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'".into()));
                }
                self.pos += 1;
                Ok(r)
            }
            Some('~') => {
                self.pos += 1;
                match self.peek() {
                    Some('e') => {
                        self.pos += 1;
                        Ok(Regex::Epsilon)
                    }
                    Some('0') => {
                        self.pos += 1;
                        Ok(Regex::Empty)
                    }
                    _ => Err(self.err("expected 'e' or '0' after '~'".into())),
                }
            }
            Some(c) if self.alphabet.contains(c) => {
                self.pos += 1;
                Ok(Regex::Literal(c))
            }
            Some(c) if c.is_alphanumeric() => {
                Err(self.err(format!("symbol '{c}' is not in the alphabet")))
            }
            Some(c) => Err(self.err(format!("unexpected character '{c}'"))),
        }
    }
}
