//! Free-group words over an explicit ambient alphabet.
//!
//! The ambient alphabet matters: `x*y` over `(x, y)` and over `(x, y, z)`
//! induce different distributions, so every [`Word`] carries its alphabet.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::group::FiniteGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("generator name must not be empty")]
    EmptyName,
    #[error("generator `{0}` listed twice")]
    Duplicate(String),
    #[error("generator `{0}` is not in the alphabet")]
    Unknown(String),
}

/// Ordered list of distinct generator names.
///
/// `inferred` records that the alphabet was guessed from the text of a word
/// rather than given explicitly; it does not take part in equality.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Alphabet {
    names: Vec<String>,
    #[serde(skip)]
    inferred: bool,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, AlphabetError> {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if name.is_empty() {
                return Err(AlphabetError::EmptyName);
            }
            if out.contains(&name) {
                return Err(AlphabetError::Duplicate(name));
            }
            out.push(name);
        }
        Ok(Self { names: out, inferred: false })
    }

    /// Parses a comma separated list such as `a,b,c`. An empty string gives
    /// the empty alphabet.
    pub fn parse_list(list: &str) -> Result<Self, AlphabetError> {
        let trimmed = list.trim();
        if trimmed.is_empty() {
            return Ok(Self::default());
        }
        Self::new(trimmed.split(',').map(|s| s.trim().to_string()))
    }

    pub(crate) fn mark_inferred(mut self) -> Self {
        self.inferred = true;
        self
    }

    pub fn is_inferred(&self) -> bool {
        self.inferred
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Alphabet with the listed generators removed, order otherwise kept.
    pub fn without(&self, removed: &[usize]) -> Alphabet {
        Alphabet {
            names: self
                .names
                .iter()
                .enumerate()
                .filter(|(i, _)| !removed.contains(i))
                .map(|(_, n)| n.clone())
                .collect(),
            inferred: self.inferred,
        }
    }

    /// Alphabet extended by one fresh generator name.
    pub fn with(&self, name: &str) -> Result<Alphabet, AlphabetError> {
        let mut names = self.names.clone();
        if names.iter().any(|n| n == name) {
            return Err(AlphabetError::Duplicate(name.to_string()));
        }
        names.push(name.to_string());
        Ok(Alphabet { names, inferred: self.inferred })
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(","))
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Self { generator, inverse: false }
    }

    pub fn neg(generator: usize) -> Self {
        Self { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    /// Builds a word, rejecting letters outside the alphabet.
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self, AlphabetError> {
        if let Some(bad) = letters.iter().find(|l| l.generator >= alphabet.rank()) {
            return Err(AlphabetError::Unknown(format!("#{}", bad.generator)));
        }
        Ok(Self { alphabet, letters })
    }

    pub(crate) fn from_parts(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.generator < alphabet.rank()));
        Self { alphabet, letters }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self { alphabet, letters: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word::from_parts(self.alphabet.clone(), stack)
    }

    pub fn invert(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverted()).collect();
        Word::from_parts(self.alphabet.clone(), letters)
    }

    /// Rotates left by `k` (mod length). Negative `k` rotates right.
    pub fn cyclic_shift(&self, k: i64) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let len = self.letters.len() as i64;
        let k = k.rem_euclid(len) as usize;
        let mut letters = self.letters.clone();
        letters.rotate_left(k);
        Word::from_parts(self.alphabet.clone(), letters)
    }

    /// Concatenation; both words must share the alphabet.
    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.alphabet, other.alphabet, "concatenating words over different alphabets");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::from_parts(self.alphabet.clone(), letters)
    }

    /// Re-expresses the word over `target`, matching generators by name.
    pub fn reindex(&self, target: &Alphabet) -> Result<Word, AlphabetError> {
        let map: Vec<Option<usize>> =
            self.alphabet.names().iter().map(|n| target.index_of(n)).collect();
        let letters = self
            .letters
            .iter()
            .map(|l| match map[l.generator] {
                Some(g) => Ok(Letter { generator: g, inverse: l.inverse }),
                None => Err(AlphabetError::Unknown(self.alphabet.name(l.generator).to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word::from_parts(target.clone(), letters))
    }

    /// Same letters, viewed inside a larger ambient alphabet.
    pub fn with_alphabet(&self, target: &Alphabet) -> Result<Word, AlphabetError> {
        self.reindex(target)
    }

    /// Applies the automorphism `g -> g^-1` for one generator.
    pub fn invert_generator(&self, generator: usize) -> Word {
        let letters = self
            .letters
            .iter()
            .map(|&l| if l.generator == generator { l.inverted() } else { l })
            .collect();
        Word::from_parts(self.alphabet.clone(), letters)
    }

    pub fn generators_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.alphabet.rank()];
        for l in &self.letters {
            used[l.generator] = true;
        }
        (0..used.len()).filter(|&g| used[g]).collect()
    }

    /// Value of the word map at `assignment` (one element per generator),
    /// multiplying left to right.
    pub fn evaluate(&self, group: &FiniteGroup, assignment: &Assignment) -> usize {
        assert_eq!(assignment.len(), self.alphabet.rank(), "assignment does not cover the alphabet");
        eval_letters(&self.letters, group, assignment.elements())
    }
}

pub(crate) fn eval_letters(letters: &[Letter], group: &FiniteGroup, values: &[usize]) -> usize {
    letters.iter().fold(group.identity(), |acc, l| {
        let g = values[l.generator];
        let g = if l.inverse { group.inverse(g) } else { g };
        group.mul(acc, g)
    })
}

impl fmt::Display for Word {
    /// Runs of one letter are collapsed into powers, e.g. `x1^4*x3`.
    /// The empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l.inverse { -run } else { run };
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self.alphabet.name(l.generator);
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Element indices assigned to each generator of an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn new(group: &FiniteGroup, elements: Vec<usize>) -> Option<Self> {
        elements.iter().all(|&e| e < group.order()).then_some(Self(elements))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
