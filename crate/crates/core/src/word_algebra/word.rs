//! Omega-rows, standard forms and the rewriting system that links them.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Arity `n` of the contraction and number `r` of free generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    n: usize,
    r: usize,
}

impl Signature {
    /// A signature with `n >= 2` and `r >= 1`.
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n < 2 || r < 1 || n > u8::MAX as usize {
            return Err(Error::Signature { n, r });
        }
        Ok(Signature { n, r })
    }

    /// Arity of the contraction `λ`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of free generators.
    pub fn r(&self) -> usize {
        self.r
    }

    /// The free generators `x_1, ..., x_r` as simple words.
    pub fn roots(&self) -> Vec<SimpleWord> {
        (0..self.r).map(SimpleWord::root).collect()
    }

    /// Fails unless `other` equals `self`.
    pub fn check(&self, other: &Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V(n={}, r={})", self.n, self.r)
    }
}

/// One symbol of an Omega-row. Indices are 0-based; the text form is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    /// Free generator `x_{i+1}`.
    Gen(usize),
    /// Descending operation `α_{j+1}`.
    Letter(usize),
    /// The n-ary contraction `λ`.
    Lambda,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Gen(i) => write!(f, "x{}", i + 1),
            Token::Letter(j) => write!(f, "a{}", j + 1),
            Token::Lambda => f.write_str("L"),
        }
    }
}

/// A finite sequence of tokens in postfix order, not necessarily a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OmegaRow(pub Vec<Token>);

impl OmegaRow {
    /// Number of tokens.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty row.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks every index against `sig`.
    pub fn check_range(&self, sig: &Signature) -> Result<()> {
        for t in &self.0 {
            let ok = match *t {
                Token::Gen(i) => i < sig.r,
                Token::Letter(j) => j < sig.n,
                Token::Lambda => true,
            };
            if !ok {
                return Err(Error::TokenRange(t.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for OmegaRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Parses whitespace-separated `x<i>`, `a<j>` and `L` tokens.
///
/// Errors carry a 1-based column and report line 1; callers reading files
/// rewrite the line number.
pub fn parse_row(text: &str) -> Result<OmegaRow> {
    let mut tokens = Vec::new();
    let mut column = 0;
    let chars: Vec<char> = text.chars().collect();
    while column < chars.len() {
        if chars[column].is_whitespace() {
            column += 1;
            continue;
        }
        let start = column;
        while column < chars.len() && !chars[column].is_whitespace() {
            column += 1;
        }
        let item: String = chars[start..column].iter().collect();
        let err = |message: String| Error::Parse {
            line: 1,
            column: start + 1,
            message,
        };
        let token = if item == "L" {
            Token::Lambda
        } else {
            let (kind, digits) = item.split_at(1);
            let index: usize = digits
                .parse()
                .map_err(|_| err(format!("unrecognised token `{item}`")))?;
            if index == 0 {
                return Err(err(format!("indices start at 1 in `{item}`")));
            }
            match kind {
                "x" => Token::Gen(index - 1),
                "a" => Token::Letter(index - 1),
                _ => return Err(err(format!("unrecognised token `{item}`"))),
            }
        };
        tokens.push(token);
    }
    Ok(OmegaRow(tokens))
}

/// Parses and reduces a word over `sig`.
pub fn parse_word(sig: &Signature, text: &str) -> Result<Word> {
    let row = parse_row(text)?;
    reduce(sig, &row)
}

/// True iff `row` is an Omega-word: every proper prefix has positive
/// valency and the whole row has valency 1.
pub fn validate_row(sig: &Signature, row: &OmegaRow) -> Result<bool> {
    row.check_range(sig)?;
    let mut valency: i64 = 0;
    for (k, t) in row.0.iter().enumerate() {
        if k > 0 && valency <= 0 {
            return Ok(false);
        }
        valency += match t {
            Token::Gen(_) => 1,
            Token::Letter(_) => 0,
            Token::Lambda => 1 - sig.n as i64,
        };
    }
    Ok(valency == 1)
}

/// Reduces a valid row to its standard form.
///
/// The postfix row is evaluated bottom-up, so each contraction and each
/// descent is normalised as soon as its arguments are: innermost redexes are
/// removed left to right.
pub fn reduce(sig: &Signature, row: &OmegaRow) -> Result<Word> {
    if !validate_row(sig, row)? {
        return Err(Error::InvalidRow(row.to_string()));
    }
    let mut stack: Vec<Word> = Vec::new();
    for t in &row.0 {
        match *t {
            Token::Gen(i) => stack.push(Word::Simple(SimpleWord::root(i))),
            Token::Letter(a) => {
                let w = stack.pop().expect("valency checked");
                stack.push(w.descend(a));
            }
            Token::Lambda => {
                let children = stack.split_off(stack.len() - sig.n);
                stack.push(Word::lambda(children));
            }
        }
    }
    Ok(stack.pop().expect("valency checked"))
}

/// An element `x_i Γ` of `𝐱⟨A⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleWord {
    gen: usize,
    path: Vec<u8>,
}

impl SimpleWord {
    /// `x_{gen+1}` followed by the letters of `path` (0-based).
    pub fn new(gen: usize, path: Vec<u8>) -> Self {
        SimpleWord { gen, path }
    }

    /// The free generator `x_{gen+1}`.
    pub fn root(gen: usize) -> Self {
        SimpleWord {
            gen,
            path: Vec::new(),
        }
    }

    /// 0-based generator index.
    pub fn gen(&self) -> usize {
        self.gen
    }

    /// The path `Γ` as 0-based letters.
    pub fn path(&self) -> &[u8] {
        &self.path
    }

    /// Length of the path.
    pub fn depth(&self) -> usize {
        self.path.len()
    }

    /// `self α_{a+1}`.
    pub fn child(&self, a: usize) -> SimpleWord {
        let mut path = self.path.clone();
        path.push(a as u8);
        SimpleWord { gen: self.gen, path }
    }

    /// `self Γ`.
    pub fn extend(&self, gamma: &[u8]) -> SimpleWord {
        let mut path = self.path.clone();
        path.extend_from_slice(gamma);
        SimpleWord { gen: self.gen, path }
    }

    /// The parent and the last letter, if the path is non-empty.
    pub fn parent(&self) -> Option<(SimpleWord, u8)> {
        let (&last, rest) = self.path.split_last()?;
        Some((
            SimpleWord {
                gen: self.gen,
                path: rest.to_vec(),
            },
            last,
        ))
    }

    /// If `self` is an initial segment of `other`, the remaining path.
    pub fn prefix_of<'a>(&self, other: &'a SimpleWord) -> Option<&'a [u8]> {
        if self.gen == other.gen && other.path.starts_with(&self.path) {
            Some(&other.path[self.path.len()..])
        } else {
            None
        }
    }

    /// The word as an Omega-row.
    pub fn to_row(&self) -> OmegaRow {
        let mut tokens = vec![Token::Gen(self.gen)];
        tokens.extend(self.path.iter().map(|&a| Token::Letter(a as usize)));
        OmegaRow(tokens)
    }
}

impl Ord for SimpleWord {
    /// Generator index, then path length, then lexicographic path.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.gen, self.path.len(), &self.path).cmp(&(other.gen, other.path.len(), &other.path))
    }
}

impl PartialOrd for SimpleWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SimpleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.gen + 1)?;
        for &a in &self.path {
            write!(f, " a{}", a + 1)?;
        }
        Ok(())
    }
}

/// A standard form of `V_{n,r}`.
///
/// A standard form is either simple or a contraction `w_1 ⋯ w_n λ` of
/// standard forms; descents of a contraction are always reduced away, so
/// the tree has letters only inside its simple leaves. A contraction of the
/// `n` children `uα_1, ..., uα_n` of a simple word never occurs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    /// An element of `𝐱⟨A⟩`.
    Simple(SimpleWord),
    /// `w_1 ⋯ w_n λ`.
    Lambda(Vec<Word>),
}

impl Word {
    /// The contraction of `children`, reduced.
    pub fn lambda(children: Vec<Word>) -> Word {
        if let Some(parent) = contracted_parent(&children) {
            return Word::Simple(parent);
        }
        Word::Lambda(children)
    }

    /// `self α_{a+1}`, reduced.
    pub fn descend(self, a: usize) -> Word {
        match self {
            Word::Simple(s) => {
                let mut s = s;
                s.path.push(a as u8);
                Word::Simple(s)
            }
            Word::Lambda(mut children) => children.swap_remove(a),
        }
    }

    /// `self Γ`, reduced.
    pub fn descend_path(&self, gamma: &[u8]) -> Word {
        let mut w = self;
        for (k, &a) in gamma.iter().enumerate() {
            match w {
                Word::Simple(s) => return Word::Simple(s.extend(&gamma[k..])),
                Word::Lambda(children) => w = &children[a as usize],
            }
        }
        w.clone()
    }

    /// The simple word, if `self` has no contraction.
    pub fn as_simple(&self) -> Option<&SimpleWord> {
        match self {
            Word::Simple(s) => Some(s),
            Word::Lambda(_) => None,
        }
    }

    /// True if `self` has no contraction.
    pub fn is_simple(&self) -> bool {
        matches!(self, Word::Simple(_))
    }

    /// Number of `λ` tokens in the standard form.
    pub fn lambda_length(&self) -> usize {
        match self {
            Word::Simple(_) => 0,
            Word::Lambda(cs) => 1 + cs.iter().map(Word::lambda_length).sum::<usize>(),
        }
    }

    /// Height of the contraction tree: the least `d` such that every
    /// descendant `self Γ` with `|Γ| = d` is simple.
    pub fn lambda_depth(&self) -> usize {
        match self {
            Word::Simple(_) => 0,
            Word::Lambda(cs) => 1 + cs.iter().map(Word::lambda_depth).max().unwrap_or(0),
        }
    }

    /// The simple leaf subterms, left to right.
    pub fn leaves(&self) -> Vec<&SimpleWord> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a SimpleWord>) {
        match self {
            Word::Simple(s) => out.push(s),
            Word::Lambda(cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// The standard form as an Omega-row.
    pub fn to_row(&self) -> OmegaRow {
        let mut tokens = Vec::new();
        self.push_tokens(&mut tokens);
        OmegaRow(tokens)
    }

    fn push_tokens(&self, out: &mut Vec<Token>) {
        match self {
            Word::Simple(s) => out.extend(s.to_row().0),
            Word::Lambda(cs) => {
                cs.iter().for_each(|c| c.push_tokens(out));
                out.push(Token::Lambda);
            }
        }
    }

    /// Checks all indices against `sig` and the contraction arity.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Word::Simple(s) => {
                if s.gen >= sig.r || s.path.iter().any(|&a| a as usize >= sig.n) {
                    return Err(Error::TokenRange(s.to_string()));
                }
                Ok(())
            }
            Word::Lambda(cs) => {
                if cs.len() != sig.n {
                    return Err(Error::InvalidRow(self.to_string()));
                }
                cs.iter().try_for_each(|c| c.check(sig))
            }
        }
    }
}

impl From<SimpleWord> for Word {
    fn from(s: SimpleWord) -> Self {
        Word::Simple(s)
    }
}

impl Ord for Word {
    /// Simple words first in canonical order, then contractions compared
    /// child by child.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Word::Simple(a), Word::Simple(b)) => a.cmp(b),
            (Word::Simple(_), Word::Lambda(_)) => Ordering::Less,
            (Word::Lambda(_), Word::Simple(_)) => Ordering::Greater,
            (Word::Lambda(a), Word::Lambda(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_row().fmt(f)
    }
}

fn contracted_parent(children: &[Word]) -> Option<SimpleWord> {
    let first = children.first()?.as_simple()?;
    let (parent, _) = first.parent()?;
    for (a, c) in children.iter().enumerate() {
        let s = c.as_simple()?;
        if s.gen != parent.gen
            || s.path.len() != first.path.len()
            || s.path[..s.path.len() - 1] != parent.path[..]
            || s.path[s.path.len() - 1] as usize != a
        {
            return None;
        }
    }
    Some(parent)
}

/// The path `Γ` with `v = uΓ`, if one exists (`Γ` is empty when `u = v`).
pub fn is_initial_segment(u: &Word, v: &Word) -> Option<Vec<u8>> {
    if u == v {
        return Some(Vec::new());
    }
    match u {
        Word::Simple(s) => match v {
            Word::Simple(t) => s.prefix_of(t).map(<[u8]>::to_vec),
            Word::Lambda(_) => None,
        },
        Word::Lambda(cs) => cs.iter().enumerate().find_map(|(a, c)| {
            is_initial_segment(c, v).map(|rest| {
                let mut gamma = vec![a as u8];
                gamma.extend(rest);
                gamma
            })
        }),
    }
}

/// True iff `u` and `v` are the same element of `V_{n,r}`.
pub fn equal_words(u: &Word, v: &Word) -> bool {
    u == v
}
