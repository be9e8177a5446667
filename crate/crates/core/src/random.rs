//! Random A-bases and automorphisms for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automorphism::Automorphism;
use crate::word_algebra::{ABasis, Signature, SimpleWord, Word};

/// An A-basis obtained by `expansions` simple expansions at random leaves
/// of depth below `max_depth` (fewer if no such leaf remains).
pub fn random_basis<R: Rng + ?Sized>(sig: Signature, expansions: usize, max_depth: usize, rng: &mut R) -> ABasis {
    let mut leaves = sig.roots();
    for _ in 0..expansions {
        let open: Vec<usize> = (0..leaves.len()).filter(|&i| leaves[i].depth() < max_depth).collect();
        let Some(&i) = open.choose(rng) else { break };
        let leaf = leaves.swap_remove(i);
        leaves.extend((0..sig.n()).map(|a| leaf.child(a)));
    }
    ABasis::new(sig, leaves).expect("expansions of the roots form an A-basis")
}

/// A random bijection between two random A-bases with the same number of
/// expansions.
pub fn random_automorphism<R: Rng + ?Sized>(
    sig: Signature,
    expansions: usize,
    max_depth: usize,
    rng: &mut R,
) -> Automorphism {
    loop {
        let y = random_basis(sig, expansions, max_depth, rng);
        let z = random_basis(sig, expansions, max_depth, rng);
        if y.len() != z.len() {
            continue;
        }
        let mut images: Vec<SimpleWord> = z.leaves().to_vec();
        images.shuffle(rng);
        let pairs = y
            .leaves()
            .iter()
            .cloned()
            .map(Word::Simple)
            .zip(images.into_iter().map(Word::Simple))
            .collect();
        return Automorphism::from_map(sig, pairs).expect("a bijection of A-bases");
    }
}

/// A random simple word of the given depth.
pub fn random_simple_word<R: Rng + ?Sized>(sig: Signature, depth: usize, rng: &mut R) -> SimpleWord {
    let path = (0..depth).map(|_| rng.gen_range(0..sig.n()) as u8).collect();
    SimpleWord::new(rng.gen_range(0..sig.r()), path)
}
