//! Ordered alphabets and word encoding.

use crate::error::Error;
use crate::Result;

/// An ordered, duplicate-free list of single-character symbols.
///
/// Words are handled as `&str` at API boundaries and as slices of symbol
/// indices internally; the alphabet performs the translation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Input("alphabet must not be empty".into()));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::Input(format!("duplicate symbol '{c}' in alphabet")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn from_str(s: &str) -> Result<Self> {
        Alphabet::new(s.chars().collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, symbol: char) -> Result<usize> {
        self.symbols
            .iter()
            .position(|&c| c == symbol)
            .ok_or_else(|| Error::UnknownSymbol {
                symbol,
                alphabet: self.to_string(),
            })
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.symbols.contains(&symbol)
    }

    /// Encodes a word into symbol indices, failing on the first unknown symbol.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars().map(|c| self.index_of(c)).collect()
    }

    /// Renders a sequence of symbol indices back into a string.
    pub fn render(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.symbols[i]).collect()
    }
}

impl std::fmt::Display for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_and_render() {
        let ab = Alphabet::from_str("ab").unwrap();
        assert_eq!(ab.encode("ba").unwrap(), vec![1, 0]);
        assert_eq!(ab.render(&[1, 0]), "ba");
        assert_eq!(ab.encode("").unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn unknown_symbol_is_named() {
        let ab = Alphabet::from_str("ab").unwrap();
        let err = ab.encode("ac").unwrap_err();
        assert!(err.to_string().contains("'c'"), "{err}");
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Alphabet::from_str("aa").is_err());
        assert!(Alphabet::from_str("").is_err());
    }
}
