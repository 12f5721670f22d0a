//! Group presentations and word syntax.
//!
//! A presentation is a list of generator names plus the commuting pairs.
//! The text format is line oriented:
//!
//! ```text
//! # F2 x Z
//! gens: a b c
//! edge: a c
//! edge: b c
//! ```
//!
//! Words are whitespace separated tokens `name` or `name^k` with `k` a
//! nonzero integer. The token `1` denotes the empty word.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Upper bound on the number of generators; generator sets are `u128` masks.
pub const MAX_GENERATORS: usize = 128;

/// Token reserved for the identity element.
pub const IDENTITY_TOKEN: &str = "1";

/// A set of generator indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenMask(pub u128);

impl GenMask {
    pub const EMPTY: GenMask = GenMask(0);

    pub fn single(gen: usize) -> Self {
        GenMask(1u128 << gen)
    }

    pub fn contains(self, gen: usize) -> bool {
        self.0 >> gen & 1 == 1
    }

    pub fn insert(&mut self, gen: usize) {
        self.0 |= 1u128 << gen;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersects(self, other: GenMask) -> bool {
        self.0 & other.0 != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl core::ops::BitAnd for GenMask {
    type Output = GenMask;
    fn bitand(self, rhs: GenMask) -> GenMask {
        GenMask(self.0 & rhs.0)
    }
}

impl core::ops::BitOr for GenMask {
    type Output = GenMask;
    fn bitor(self, rhs: GenMask) -> GenMask {
        GenMask(self.0 | rhs.0)
    }
}

/// A generator or its inverse.
///
/// Encoded as `2 * generator + (inverse as u32)`, so the derived order is the
/// letter order `a⁺ < a⁻ < b⁺ < b⁻ < …` (generators in declaration order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter((gen as u32) << 1 | inverse as u32)
    }

    pub fn positive(gen: usize) -> Self {
        Letter::new(gen, false)
    }

    pub fn negative(gen: usize) -> Self {
        Letter::new(gen, true)
    }

    pub fn gen(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Dense index in `0..2 * |S|`, equal to the position in letter order.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Self {
        Letter(index as u32)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}{}", self.gen(), if self.is_inverse() { "⁻" } else { "⁺" })
    }
}

/// An arbitrary, possibly unreduced, sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingGenerators,
    RepeatedGensLine,
    NoGenerators,
    TooManyGenerators,
    InvalidName(String),
    DuplicateGenerator(String),
    UnknownGenerator(String),
    SelfEdge(String),
    ZeroExponent(String),
    BadExponent(String),
    Malformed(String),
}

/// Syntax error in a graph file or word, with the 1-based line number for
/// graph files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line: Some(line), kind }
    }

    fn word(kind: ParseErrorKind) -> Self {
        ParseError { line: None, kind }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        match &self.kind {
            ParseErrorKind::MissingGenerators => write!(f, "expected a `gens:` line first"),
            ParseErrorKind::RepeatedGensLine => write!(f, "`gens:` declared twice"),
            ParseErrorKind::NoGenerators => write!(f, "the generator list is empty"),
            ParseErrorKind::TooManyGenerators => {
                write!(f, "more than {MAX_GENERATORS} generators")
            }
            ParseErrorKind::InvalidName(n) => write!(f, "invalid generator name `{n}`"),
            ParseErrorKind::DuplicateGenerator(n) => write!(f, "duplicate generator `{n}`"),
            ParseErrorKind::UnknownGenerator(n) => write!(f, "unknown generator `{n}`"),
            ParseErrorKind::SelfEdge(n) => write!(f, "self-edge on `{n}`"),
            ParseErrorKind::ZeroExponent(t) => write!(f, "zero exponent in `{t}`"),
            ParseErrorKind::BadExponent(t) => write!(f, "malformed exponent in `{t}`"),
            ParseErrorKind::Malformed(l) => write!(f, "malformed line `{l}`"),
        }
    }
}

impl core::error::Error for ParseError {}

/// Generators with a symmetric, irreflexive commutation relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationGraph {
    names: Vec<String>,
    /// `commute[i]` has bit `j` set iff generators `i` and `j` commute.
    commute: Vec<GenMask>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != IDENTITY_TOKEN
        && !name.chars().any(|c| c.is_whitespace() || matches!(c, '^' | '\'' | ',' | '#'))
}

impl CommutationGraph {
    /// Builds a graph from names and commuting index pairs.
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(usize, usize)]) -> Result<Self, ParseError> {
        if names.is_empty() {
            return Err(ParseError::word(ParseErrorKind::NoGenerators));
        }
        if names.len() > MAX_GENERATORS {
            return Err(ParseError::word(ParseErrorKind::TooManyGenerators));
        }
        let mut seen = BTreeSet::new();
        for n in names {
            let n = n.as_ref();
            if !valid_name(n) {
                return Err(ParseError::word(ParseErrorKind::InvalidName(n.to_string())));
            }
            if !seen.insert(n) {
                return Err(ParseError::word(ParseErrorKind::DuplicateGenerator(n.to_string())));
            }
        }
        let mut commute = alloc::vec![GenMask::EMPTY; names.len()];
        for &(i, j) in edges {
            if i >= names.len() || j >= names.len() {
                return Err(ParseError::word(ParseErrorKind::UnknownGenerator(alloc::format!("#{}", i.max(j)))));
            }
            if i == j {
                return Err(ParseError::word(ParseErrorKind::SelfEdge(names[i].as_ref().to_string())));
            }
            commute[i].insert(j);
            commute[j].insert(i);
        }
        Ok(CommutationGraph { names: names.iter().map(|n| n.as_ref().to_string()).collect(), commute })
    }

    /// Free group on the given generators.
    pub fn free<S: AsRef<str>>(names: &[S]) -> Result<Self, ParseError> {
        Self::new(names, &[])
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Whether distinct generators `i` and `j` commute. A generator is not
    /// reported as commuting with itself.
    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.commute[i].contains(j)
    }

    pub fn commuting_set(&self, gen: usize) -> GenMask {
        self.commute[gen]
    }

    /// Commuting pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            for j in self.commute[i].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Signed letters in letter order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..2 * self.rank()).map(Letter::from_index)
    }

    /// Total order on signed letters: `i⁺ < i⁻ < j⁺ < j⁻` for `i < j`.
    pub fn letter_order(&self, a: Letter, b: Letter) -> core::cmp::Ordering {
        a.cmp(&b)
    }

    /// Renders the graph in the file format accepted by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut s = String::from("gens:");
        for n in &self.names {
            s.push(' ');
            s.push_str(n);
        }
        s.push('\n');
        for (i, j) in self.edges() {
            s.push_str("edge: ");
            s.push_str(&self.names[i]);
            s.push(' ');
            s.push_str(&self.names[j]);
            s.push('\n');
        }
        s
    }

    /// Parses a word. See the module docs for the syntax.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == IDENTITY_TOKEN {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                None => (token, 1i64),
                Some((name, exp)) => {
                    let k: i64 =
                        exp.parse().map_err(|_| ParseError::word(ParseErrorKind::BadExponent(token.to_string())))?;
                    if k == 0 {
                        return Err(ParseError::word(ParseErrorKind::ZeroExponent(token.to_string())));
                    }
                    (name, k)
                }
            };
            let gen = self
                .index_of(name)
                .ok_or_else(|| ParseError::word(ParseErrorKind::UnknownGenerator(name.to_string())))?;
            let letter = Letter::new(gen, exp < 0);
            letters.extend(core::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(Word(letters))
    }

    /// Pretty-prints letters with run-length exponents; the empty word is `1`.
    pub fn render_letters(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return IDENTITY_TOKEN.to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&self.names[l.gen()]);
            let exp = run as i64 * l.sign() as i64;
            if exp != 1 {
                out.push('^');
                out.push_str(&exp.to_string());
            }
            i += run;
        }
        out
    }

    pub fn render_word(&self, word: &Word) -> String {
        self.render_letters(&word.0)
    }
}

/// Parses the line-oriented graph format.
pub fn parse_graph(text: &str) -> Result<CommutationGraph, ParseError> {
    let mut names: Option<Vec<&str>> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) =
            line.split_once(':').ok_or_else(|| ParseError::at(lineno, ParseErrorKind::Malformed(line.to_string())))?;
        match (key.trim(), &names) {
            ("gens", None) => {
                let list: Vec<&str> = rest.split_whitespace().collect();
                if list.is_empty() {
                    return Err(ParseError::at(lineno, ParseErrorKind::NoGenerators));
                }
                if list.len() > MAX_GENERATORS {
                    return Err(ParseError::at(lineno, ParseErrorKind::TooManyGenerators));
                }
                let mut seen = BTreeSet::new();
                for n in &list {
                    if !valid_name(n) {
                        return Err(ParseError::at(lineno, ParseErrorKind::InvalidName(n.to_string())));
                    }
                    if !seen.insert(*n) {
                        return Err(ParseError::at(lineno, ParseErrorKind::DuplicateGenerator(n.to_string())));
                    }
                }
                names = Some(list);
            }
            ("gens", Some(_)) => return Err(ParseError::at(lineno, ParseErrorKind::RepeatedGensLine)),
            (_, None) => return Err(ParseError::at(lineno, ParseErrorKind::MissingGenerators)),
            ("edge", Some(list)) => {
                let ends: Vec<&str> = rest.split_whitespace().collect();
                if ends.len() != 2 {
                    return Err(ParseError::at(lineno, ParseErrorKind::Malformed(line.to_string())));
                }
                let lookup = |n: &str| {
                    list.iter()
                        .position(|m| *m == n)
                        .ok_or_else(|| ParseError::at(lineno, ParseErrorKind::UnknownGenerator(n.to_string())))
                };
                let (i, j) = (lookup(ends[0])?, lookup(ends[1])?);
                if i == j {
                    return Err(ParseError::at(lineno, ParseErrorKind::SelfEdge(ends[0].to_string())));
                }
                edges.push((i, j));
            }
            _ => return Err(ParseError::at(lineno, ParseErrorKind::Malformed(line.to_string()))),
        }
    }
    let names = names.ok_or(ParseError { line: None, kind: ParseErrorKind::MissingGenerators })?;
    CommutationGraph::new(&names, &edges)
}
