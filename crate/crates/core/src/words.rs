//! Words over vertex ids: alternation, representation checks and a bounded
//! search for uniform representing words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::bits::bit;
use crate::graph::{Graph, VertexId};

/// Largest `|V| * k` accepted by [`find_uniform_word`].
pub const UNIFORM_SEARCH_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<VertexId>);

impl Word {
    pub fn letters(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alphabet(&self) -> BTreeSet<VertexId> {
        self.0.iter().copied().collect()
    }

    /// Parses whitespace- or comma-separated ids. A single token of digits is
    /// split into one-digit letters when `single_digit` is set, which lets
    /// `134231241` stand for `1 3 4 2 3 1 2 4 1`.
    pub fn parse_inline(text: &str, single_digit: bool) -> Result<Word> {
        let tokens: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
        if tokens.len() == 1 && single_digit && tokens[0].chars().all(|c| c.is_ascii_digit()) {
            return Ok(Word(tokens[0].chars().map(|c| c.to_digit(10).unwrap()).collect()));
        }
        tokens
            .iter()
            .map(|t| t.parse::<VertexId>().map_err(|e| Error::Parse(format!("bad letter `{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse_inline(s, false)
    }
}

impl From<Vec<VertexId>> for Word {
    fn from(v: Vec<VertexId>) -> Self {
        Word(v)
    }
}

/// Do `x` and `y` alternate in `w`? Letters absent from `w` count as an
/// empty restriction, which alternates trivially.
pub fn alternates(w: &Word, x: VertexId, y: VertexId) -> Result<bool> {
    if x == y {
        return Err(Error::EqualLetters);
    }
    let mut last = None;
    for &l in &w.0 {
        if l == x || l == y {
            if last == Some(l) {
                return Ok(false);
            }
            last = Some(l);
        }
    }
    Ok(true)
}

/// First pair where alternation and adjacency disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub x: VertexId,
    pub y: VertexId,
    pub adjacent: bool,
    pub alternate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentationCheck {
    pub represents: bool,
    pub discrepancy: Option<Discrepancy>,
}

/// Does `w` represent `g`? Pairs are scanned in vertex order.
pub fn represents(w: &Word, g: &Graph) -> Result<RepresentationCheck> {
    let alphabet = w.alphabet();
    let vertices: BTreeSet<VertexId> = g.ids().iter().copied().collect();
    if alphabet != vertices {
        let extra: Vec<_> = alphabet.difference(&vertices).collect();
        let absent: Vec<_> = vertices.difference(&alphabet).collect();
        return Err(Error::AlphabetMismatch(format!("letters not in graph {extra:?}, vertices not in word {absent:?}")));
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let (x, y) = (g.id(u), g.id(v));
            let alternate = alternates(w, x, y)?;
            let adjacent = g.adjacent(u, v);
            if alternate != adjacent {
                return Ok(RepresentationCheck {
                    represents: false,
                    discrepancy: Some(Discrepancy { x, y, adjacent, alternate }),
                });
            }
        }
    }
    Ok(RepresentationCheck { represents: true, discrepancy: None })
}

/// Lexicographically least `k`-uniform word representing `g`, if any.
///
/// Only one-sided: `None` says nothing about words with other multiplicities.
pub fn find_uniform_word(g: &Graph, k: usize) -> Result<Option<Word>> {
    let n = g.n();
    if k == 0 || n * k > UNIFORM_SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{n} letters x {k} copies exceeds the limit of {UNIFORM_SEARCH_LIMIT} (k must be >= 1)"
        )));
    }
    if n == 0 {
        return Ok(Some(Word::default()));
    }
    // Letters in ascending id order.
    let mut letters: Vec<usize> = (0..n).collect();
    letters.sort_by_key(|&u| g.id(u));
    let mut s = UniformSearch {
        g,
        k,
        letters,
        used: vec![0; n],
        since: vec![0; n],
        broken: vec![0; n],
        word: Vec::with_capacity(n * k),
    };
    if s.extend() {
        Ok(Some(Word(s.word.iter().map(|&u| g.id(u)).collect())))
    } else {
        Ok(None)
    }
}

struct UniformSearch<'a> {
    g: &'a Graph,
    k: usize,
    letters: Vec<usize>,
    used: Vec<usize>,
    /// Letters seen since each letter's last occurrence.
    since: Vec<u64>,
    /// Pairs already known not to alternate.
    broken: Vec<u64>,
    word: Vec<usize>,
}

impl UniformSearch<'_> {
    fn extend(&mut self) -> bool {
        let n = self.g.n();
        if self.word.len() == n * self.k {
            return true;
        }
        let all = crate::graph::bits::low_mask(n);
        for li in 0..self.letters.len() {
            let x = self.letters[li];
            if self.used[x] == self.k {
                continue;
            }
            let newly_broken = if self.used[x] > 0 { all & !self.since[x] & !bit(x) } else { 0 };
            if newly_broken & self.g.neighbors(x) != 0 {
                continue;
            }
            let saved_since = self.since.clone();
            let saved_broken = self.broken.clone();
            self.broken[x] |= newly_broken;
            for y in crate::graph::Bits(newly_broken) {
                self.broken[y] |= bit(x);
            }
            for z in 0..n {
                self.since[z] |= bit(x);
            }
            self.since[x] = 0;
            self.used[x] += 1;
            self.word.push(x);

            // A completed non-edge pair that still alternates can never break.
            let dead = self.used[x] == self.k
                && (0..n).any(|y| {
                    y != x && !self.g.adjacent(x, y) && self.used[y] == self.k && self.broken[x] & bit(y) == 0
                });
            if !dead && self.extend() {
                return true;
            }
            self.word.pop();
            self.used[x] -= 1;
            self.since = saved_since;
            self.broken = saved_broken;
        }
        false
    }
}
