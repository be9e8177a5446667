//! Elements of `G_{n,r}` stored as minimal symbols.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::word_algebra::{is_basis, minimal_expansion_where, ABasis, Location, Signature, SimpleWord, Word};

/// A bijection from a basis to a list of words, position by position.
///
/// This is the raw form read from files; range entries may contain `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    /// The signature of both sides.
    pub sig: Signature,
    /// Domain basis.
    pub domain: Vec<Word>,
    /// Images of the domain elements.
    pub range: Vec<Word>,
}

impl Symbol {
    /// Canonicalizes the symbol.
    pub fn to_automorphism(&self) -> Result<Automorphism> {
        Automorphism::from_map(
            self.sig,
            self.domain.iter().cloned().zip(self.range.iter().cloned()).collect(),
        )
    }
}

/// An automorphism of `V_{n,r}` in canonical form: the domain is the
/// minimal expansion `Y` of `𝐱` with `Yψ ⊆ 𝐱⟨A⟩`, so every image is simple.
///
/// Two automorphisms are equal iff they are the same group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    domain: ABasis,
    range: Vec<SimpleWord>,
}

impl Automorphism {
    /// The identity of `G_{n,r}`.
    pub fn identity(sig: Signature) -> Self {
        Automorphism {
            domain: ABasis::roots(sig),
            range: sig.roots(),
        }
    }

    /// The automorphism sending each `pairs[i].0` to `pairs[i].1`.
    ///
    /// Both sides must be bases. Contractions in the domain are pushed down
    /// until the domain is an A-basis, then the symbol is made minimal.
    pub fn from_map(sig: Signature, pairs: Vec<(Word, Word)>) -> Result<Self> {
        for (y, z) in &pairs {
            y.check(&sig)?;
            z.check(&sig)?;
        }
        let (domain, range): (Vec<Word>, Vec<Word>) = pairs.iter().cloned().unzip();
        if !is_basis(&sig, &domain) {
            return Err(Error::NotABasis("domain".into()));
        }
        if !is_basis(&sig, &range) {
            return Err(Error::NotABasis("range".into()));
        }
        let mut simple = Vec::new();
        let mut work = pairs;
        while let Some((y, z)) = work.pop() {
            match y {
                Word::Simple(s) => simple.push((s, z)),
                Word::Lambda(cs) => {
                    for (a, c) in cs.into_iter().enumerate() {
                        work.push((c, z.descend_path(&[a as u8])));
                    }
                }
            }
        }
        Self::canonicalize(sig, simple)
    }

    /// Makes a symbol on an A-basis minimal.
    fn canonicalize(sig: Signature, pairs: Vec<(SimpleWord, Word)>) -> Result<Self> {
        let mut map: BTreeMap<SimpleWord, SimpleWord> = BTreeMap::new();
        let mut work = pairs;
        while let Some((y, z)) = work.pop() {
            match z {
                Word::Simple(s) => {
                    map.insert(y, s);
                }
                Word::Lambda(cs) => {
                    for (a, c) in cs.into_iter().enumerate() {
                        work.push((y.child(a), c));
                    }
                }
            }
        }
        let n = sig.n();
        loop {
            let candidates: Vec<SimpleWord> = map
                .keys()
                .filter_map(|k| k.parent().filter(|(_, a)| *a == 0).map(|(p, _)| p))
                .collect();
            let mut changed = false;
            for p in candidates {
                let Some(first) = map.get(&p.child(0)) else { continue };
                let Some((q, 0)) = first.parent() else { continue };
                let siblings = (0..n).all(|a| map.get(&p.child(a)) == Some(&q.child(a)));
                if siblings {
                    for a in 0..n {
                        map.remove(&p.child(a));
                    }
                    map.insert(p, q);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let domain = ABasis::new(sig, map.keys().cloned().collect())?;
        let range = domain.leaves().iter().map(|y| map[y].clone()).collect();
        Ok(Automorphism { domain, range })
    }

    /// The signature.
    pub fn sig(&self) -> Signature {
        self.domain.sig()
    }

    /// The canonical domain `Y`.
    pub fn domain(&self) -> &ABasis {
        &self.domain
    }

    /// The images of the domain leaves, in the same order.
    pub fn range(&self) -> &[SimpleWord] {
        &self.range
    }

    /// `(y, yψ)` for each domain leaf in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (&SimpleWord, &SimpleWord)> {
        self.domain.leaves().iter().zip(self.range.iter())
    }

    /// The canonical symbol in raw form.
    pub fn symbol(&self) -> Symbol {
        Symbol {
            sig: self.sig(),
            domain: self.domain.leaves().iter().cloned().map(Word::from).collect(),
            range: self.range.iter().cloned().map(Word::from).collect(),
        }
    }

    /// True for the identity.
    pub fn is_identity(&self) -> bool {
        self.domain.leaves() == self.range.as_slice()
    }

    /// The image `sψ` of a simple word.
    pub fn apply_simple(&self, s: &SimpleWord) -> Word {
        match self.domain.locate(s) {
            Location::Below { leaf, depth } => Word::Simple(self.range[leaf].extend(&s.path()[depth..])),
            Location::Above => Word::lambda(
                (0..self.sig().n())
                    .map(|a| self.apply_simple(&s.child(a)))
                    .collect(),
            ),
        }
    }

    /// The image `wψ` in standard form.
    pub fn apply(&self, w: &Word) -> Word {
        match w {
            Word::Simple(s) => self.apply_simple(s),
            Word::Lambda(cs) => Word::lambda(cs.iter().map(|c| self.apply(c)).collect()),
        }
    }

    /// `w ψ^k`, computed by repeated application.
    pub fn apply_power(&self, inverse: &Automorphism, w: &Word, k: i64) -> Word {
        let step = if k >= 0 { self } else { inverse };
        let mut out = w.clone();
        for _ in 0..k.unsigned_abs() {
            out = step.apply(&out);
        }
        out
    }

    /// `self` followed by `other` (right actions: `w(ψφ) = (wψ)φ`).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let pairs = self
            .pairs()
            .map(|(y, z)| (y.clone(), other.apply_simple(z)))
            .collect();
        Self::canonicalize(self.sig(), pairs).expect("composition of automorphisms")
    }

    /// The inverse automorphism.
    pub fn inverse(&self) -> Automorphism {
        let pairs = self
            .pairs()
            .map(|(y, z)| (z.clone(), Word::Simple(y.clone())))
            .collect();
        Self::canonicalize(self.sig(), pairs).expect("inverse of an automorphism")
    }

    /// `ψ^k` by iterated composition; negative `k` uses the inverse.
    pub fn power(&self, k: i64) -> Automorphism {
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        let mut out = Automorphism::identity(self.sig());
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// `ρ⁻¹ ψ ρ`.
    pub fn conjugate_by(&self, rho: &Automorphism) -> Automorphism {
        rho.inverse().compose(self).compose(rho)
    }
}

/// The minimal expansion `Y` of `x` with `Yψ ⊆ X⟨A⟩` for every `ψ` in
/// `autos`.
pub fn minimal_expansion_for(autos: &[&Automorphism], x: &ABasis) -> Result<ABasis> {
    for psi in autos {
        x.sig().check(&psi.sig())?;
    }
    Ok(minimal_expansion_where(x.sig(), x.leaves(), |w| {
        x.contains_below(w) && autos.iter().all(|psi| x.contains_word_below(&psi.apply_simple(w)))
    }))
}
