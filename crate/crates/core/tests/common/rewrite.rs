//! Brute-force rewriting of Omega-rows: every law at every position.

use std::collections::BTreeSet;

use rand::Rng;
use thompson_core::{OmegaRow, Signature, Token};

/// Terms of the free Omega-algebra before any law is applied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Gen(usize),
    Desc(Box<Term>, usize),
    Lam(Vec<Term>),
}

impl Term {
    pub fn from_row(row: &OmegaRow, n: usize) -> Term {
        let mut stack: Vec<Term> = Vec::new();
        for t in &row.0 {
            match *t {
                Token::Gen(i) => stack.push(Term::Gen(i)),
                Token::Letter(a) => {
                    let top = stack.pop().unwrap();
                    stack.push(Term::Desc(Box::new(top), a));
                }
                Token::Lambda => {
                    let children = stack.split_off(stack.len() - n);
                    stack.push(Term::Lam(children));
                }
            }
        }
        assert_eq!(stack.len(), 1);
        stack.pop().unwrap()
    }

    fn row(&self, out: &mut Vec<Token>) {
        match self {
            Term::Gen(i) => out.push(Token::Gen(*i)),
            Term::Desc(t, a) => {
                t.row(out);
                out.push(Token::Letter(*a));
            }
            Term::Lam(cs) => {
                cs.iter().for_each(|c| c.row(out));
                out.push(Token::Lambda);
            }
        }
    }

    pub fn to_row(&self) -> OmegaRow {
        let mut out = Vec::new();
        self.row(&mut out);
        OmegaRow(out)
    }

    pub fn size(&self) -> usize {
        self.to_row().len()
    }

    /// Every term reachable by one application of a law at one position.
    pub fn one_step(&self) -> Vec<Term> {
        let mut out = Vec::new();
        match self {
            Term::Gen(_) => {}
            Term::Desc(inner, a) => {
                if let Term::Lam(cs) = inner.as_ref() {
                    out.push(cs[*a].clone());
                }
                for t in inner.one_step() {
                    out.push(Term::Desc(Box::new(t), *a));
                }
            }
            Term::Lam(cs) => {
                if let Some(Term::Desc(first, 0)) = cs.first() {
                    let siblings = cs
                        .iter()
                        .enumerate()
                        .all(|(i, c)| matches!(c, Term::Desc(b, j) if *j == i && b == first));
                    if siblings {
                        out.push((**first).clone());
                    }
                }
                for (i, c) in cs.iter().enumerate() {
                    for t in c.one_step() {
                        let mut next = cs.clone();
                        next[i] = t;
                        out.push(Term::Lam(next));
                    }
                }
            }
        }
        out
    }
}

/// All irreducible terms reachable from `t` by any sequence of rewrites,
/// checking that each rewrite shortens the row.
pub fn all_normal_forms(t: &Term) -> BTreeSet<Term> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![t.clone()];
    let mut normal = BTreeSet::new();
    while let Some(u) = stack.pop() {
        if !seen.insert(u.clone()) {
            continue;
        }
        let next = u.one_step();
        if next.is_empty() {
            normal.insert(u);
            continue;
        }
        for v in next {
            assert!(v.size() < u.size(), "rewrite did not shorten {}", u.to_row());
            stack.push(v);
        }
    }
    normal
}

pub fn random_term<R: Rng>(rng: &mut R, n: usize, r: usize, budget: usize) -> Term {
    if budget <= 1 || rng.gen_bool(0.25) {
        return Term::Gen(rng.gen_range(0..r));
    }
    match rng.gen_range(0..4) {
        0 => Term::Desc(Box::new(random_term(rng, n, r, budget - 1)), rng.gen_range(0..n)),
        1 => Term::Lam((0..n).map(|_| random_term(rng, n, r, budget / n)).collect()),
        2 => {
            let base = random_term(rng, n, r, budget / (2 * n));
            Term::Lam((0..n).map(|i| Term::Desc(Box::new(base.clone()), i)).collect())
        }
        _ => Term::Desc(
            Box::new(Term::Lam((0..n).map(|_| random_term(rng, n, r, budget / n)).collect())),
            rng.gen_range(0..n),
        ),
    }
}

/// A random valid row with at most `max_tokens` tokens.
pub fn random_row<R: Rng>(rng: &mut R, max_tokens: usize) -> (Signature, Term) {
    loop {
        let s = Signature::new(rng.gen_range(2..=3), rng.gen_range(1..=2)).unwrap();
        let t = random_term(rng, s.n(), s.r(), max_tokens);
        if t.size() <= max_tokens {
            return (s, t);
        }
    }
}
