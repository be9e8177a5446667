//! Free-product decomposition, rebasing across ranks and the conjugacy
//! decision procedure with explicit conjugators.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::automorphism::Automorphism;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::orbits::{quasi_normal_basis, Characteristic, LeafType, Qnf};
use crate::power_conjugacy::multiplier_set;
use crate::word_algebra::{is_basis, ABasis, Location, Signature, SimpleWord, Word};

/// The test that rejected a pair of automorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    /// Part sizes are not congruent modulo `n - 1`.
    Congruence,
    /// One side has a periodic (or regular infinite) part and the other
    /// does not.
    PartMismatch,
    /// Periodic parts have different cycle types or incongruent
    /// multiplicities.
    CycleType,
    /// Regular infinite parts have different multiplier sets.
    MultiplierSet,
    /// Every candidate conjugator failed.
    Exhausted,
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gate::Congruence => "congruence",
            Gate::PartMismatch => "part-mismatch",
            Gate::CycleType => "cycle-type",
            Gate::MultiplierSet => "multiplier-set",
            Gate::Exhausted => "exhausted-search",
        })
    }
}

/// Outcome of a conjugacy test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyCertificate {
    /// A verified `ρ` with `ρ⁻¹ψρ = φ`, if the elements are conjugate.
    pub conjugator: Option<Automorphism>,
    /// The failing test otherwise.
    pub gate: Option<Gate>,
}

impl ConjugacyCertificate {
    fn found(rho: Automorphism) -> Self {
        ConjugacyCertificate {
            conjugator: Some(rho),
            gate: None,
        }
    }

    fn rejected(gate: Gate) -> Self {
        ConjugacyCertificate {
            conjugator: None,
            gate: Some(gate),
        }
    }

    /// True iff a conjugator was found.
    pub fn is_conjugate(&self) -> bool {
        self.conjugator.is_some()
    }
}

/// Census of orbit sizes of a periodic element on its quasi-normal basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleType(pub BTreeMap<usize, usize>);

impl CycleType {
    /// The cycle lengths `T_ψ`.
    pub fn lengths(&self) -> BTreeSet<usize> {
        self.0.keys().copied().collect()
    }

    /// Multiplicity `m_ψ(d, X)`.
    pub fn multiplicity(&self, d: usize) -> usize {
        self.0.get(&d).copied().unwrap_or(0)
    }
}

/// One free factor of a decomposition.
#[derive(Debug, Clone)]
pub struct Part {
    /// The leaves `X_T` of the quasi-normal basis, in canonical order; leaf
    /// `j` becomes the fresh generator `x_{j+1}`.
    pub leaves: Vec<SimpleWord>,
    /// The restriction of `ψ` on `V_{n,|X_T|}`.
    pub restricted: Automorphism,
    /// The restriction moved to `V_{n,s}` with `1 <= s <= n - 1`.
    pub rebased: Automorphism,
    /// `dictionary[j]` is the image in `V_{n,s}` of the fresh generator
    /// `x_{j+1}`.
    pub dictionary: Vec<SimpleWord>,
}

/// `ψ = ψ_P * ψ_RI` on `V_{n,r} = V_P * V_RI`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Quasi-normal form of `ψ`.
    pub qnf: Qnf,
    /// The periodic factor, if `X_P` is non-empty.
    pub periodic: Option<Part>,
    /// The regular infinite factor, if `X_RI` is non-empty.
    pub infinite: Option<Part>,
}

impl Decomposition {
    /// Rebuilds `ψ` from the rebased factors through the dictionaries.
    pub fn reassemble(&self) -> Result<Automorphism> {
        let mut pairs = Vec::new();
        for part in self.periodic.iter().chain(&self.infinite) {
            pairs.extend(stitch(part, part, &part.rebased));
        }
        Automorphism::from_map(self.qnf.psi().sig(), pairs)
    }
}

/// Splits `psi` into its periodic and regular infinite factors.
pub fn decompose(psi: &Automorphism, budget: &Budget) -> Result<Decomposition> {
    let qnf = quasi_normal_basis(psi, budget)?;
    let periodic: Vec<usize> = (0..qnf.basis().len())
        .filter(|&i| matches!(qnf.types()[i], LeafType::A { .. }))
        .collect();
    let infinite: Vec<usize> = (0..qnf.basis().len())
        .filter(|&i| !matches!(qnf.types()[i], LeafType::A { .. }))
        .collect();
    let periodic = restrict(&qnf, &periodic)?;
    let infinite = restrict(&qnf, &infinite)?;
    Ok(Decomposition {
        qnf,
        periodic,
        infinite,
    })
}

fn restrict(qnf: &Qnf, indices: &[usize]) -> Result<Option<Part>> {
    if indices.is_empty() {
        return Ok(None);
    }
    let basis = qnf.basis();
    let fresh: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(j, &i)| (i, j)).collect();
    let sig = Signature::new(basis.sig().n(), indices.len())?;
    let mut pairs = Vec::new();
    for y in qnf.expansion().leaves() {
        let (head, rest) = basis.split(y).expect("Y expands X");
        let Some(&g) = fresh.get(&head) else { continue };
        let z = qnf.psi().apply_simple(y);
        let z = z.as_simple().expect("Yψ lies in X<A>");
        let (zhead, zrest) = basis.split(z).expect("Yψ lies in X<A>");
        let zg = *fresh
            .get(&zhead)
            .ok_or_else(|| Error::Precondition("factor is not invariant".into()))?;
        pairs.push((
            Word::Simple(SimpleWord::new(g, rest.to_vec())),
            Word::Simple(SimpleWord::new(zg, zrest.to_vec())),
        ));
    }
    let restricted = Automorphism::from_map(sig, pairs)?;
    let (rebased, dictionary) = rebase_to_standard_rank(&restricted)?;
    Ok(Some(Part {
        leaves: indices.iter().map(|&i| basis.leaves()[i].clone()).collect(),
        restricted,
        rebased,
        dictionary,
    }))
}

/// Moves `theta ∈ G_{n,a}` to `G_{n,s}` with `1 <= s <= n - 1` and
/// `s ≡ a mod (n - 1)`.
///
/// The dictionary lists, for each generator of `V_{n,a}`, a leaf of the
/// expansion of `{x_1, ..., x_s}` obtained by repeatedly expanding the
/// leftmost leaf, read left to right.
pub fn rebase_to_standard_rank(theta: &Automorphism) -> Result<(Automorphism, Vec<SimpleWord>)> {
    let sig = theta.sig();
    let (n, a) = (sig.n(), sig.r());
    let s = (a - 1) % (n - 1) + 1;
    let target = Signature::new(n, s)?;
    let dictionary = ABasis::leftmost_expansion(target, &target.roots(), (a - s) / (n - 1));
    let translate = |w: &SimpleWord| Word::Simple(dictionary[w.gen()].extend(w.path()));
    let pairs = theta.pairs().map(|(y, z)| (translate(y), translate(z))).collect();
    Ok((Automorphism::from_map(target, pairs)?, dictionary))
}

/// Replaces each generator `x_{g+1}` of `w` by `images[g]`.
fn substitute(w: &Word, images: &[Word]) -> Word {
    match w {
        Word::Simple(s) => images[s.gen()].descend_path(s.path()),
        Word::Lambda(cs) => Word::lambda(cs.iter().map(|c| substitute(c, images)).collect()),
    }
}

/// Inverse of substituting the dictionary `words` for the generators.
fn unsubstitute(w: &Word, words: &ABasis, position: &[usize]) -> Word {
    match w {
        Word::Simple(s) => match words.locate(s) {
            Location::Below { leaf, depth } => {
                Word::Simple(SimpleWord::new(position[leaf], s.path()[depth..].to_vec()))
            }
            Location::Above => Word::lambda(
                (0..words.sig().n())
                    .map(|a| unsubstitute(&Word::Simple(s.child(a)), words, position))
                    .collect(),
            ),
        },
        Word::Lambda(cs) => Word::lambda(cs.iter().map(|c| unsubstitute(c, words, position)).collect()),
    }
}

/// Pairs `(x, xρ)` on the leaves of `from` for the conjugator `theta`
/// between the rebased factors of `from` and `to`.
pub(crate) fn stitch(from: &Part, to: &Part, theta: &Automorphism) -> Vec<(Word, Word)> {
    let sig = theta.sig();
    let words = ABasis::new(sig, to.dictionary.clone()).expect("dictionary is an A-basis");
    let position: Vec<usize> = words
        .leaves()
        .iter()
        .map(|w| to.dictionary.iter().position(|d| d == w).expect("same leaves"))
        .collect();
    let targets: Vec<Word> = to.leaves.iter().cloned().map(Word::Simple).collect();
    from.leaves
        .iter()
        .zip(&from.dictionary)
        .map(|(x, w)| {
            let image = theta.apply_simple(w);
            let back = unsubstitute(&image, &words, &position);
            (Word::Simple(x.clone()), substitute(&back, &targets))
        })
        .collect()
}

/// Orbits of a periodic element on its quasi-normal basis, each rotated to
/// start at its least element, sorted by that element.
fn periodic_orbits(qnf: &Qnf) -> Vec<Vec<SimpleWord>> {
    let basis = qnf.basis();
    let mut seen = vec![false; basis.len()];
    let mut orbits = Vec::new();
    for start in 0..basis.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut current = basis.leaves()[start].clone();
        loop {
            let index = basis.index_of(&current).expect("periodic leaves are permuted");
            if seen[index] {
                break;
            }
            seen[index] = true;
            orbit.push(current.clone());
            current = qnf
                .psi()
                .apply_simple(&current)
                .as_simple()
                .cloned()
                .expect("periodic leaves are permuted");
        }
        orbits.push(orbit);
    }
    orbits
}

fn rotate_to_min(orbit: &mut [SimpleWord]) {
    let k = (0..orbit.len()).min_by(|&i, &j| orbit[i].cmp(&orbit[j])).unwrap_or(0);
    orbit.rotate_left(k);
}

fn census(orbits: &[Vec<SimpleWord>]) -> CycleType {
    let mut out = BTreeMap::new();
    for o in orbits {
        *out.entry(o.len()).or_insert(0) += 1;
    }
    CycleType(out)
}

/// The cycle type of a periodic element.
pub fn cycle_type(psi: &Automorphism, budget: &Budget) -> Result<CycleType> {
    let qnf = quasi_normal_basis(psi, budget)?;
    if !qnf.is_periodic() {
        return Err(Error::Precondition("element is not periodic".into()));
    }
    Ok(census(&periodic_orbits(&qnf)))
}

/// Decides conjugacy of two periodic elements of the same group.
pub fn conjugate_periodic(psi: &Automorphism, phi: &Automorphism, budget: &Budget) -> Result<ConjugacyCertificate> {
    let sig = psi.sig();
    sig.check(&phi.sig())?;
    let qp = quasi_normal_basis(psi, budget)?;
    let qf = quasi_normal_basis(phi, budget)?;
    if !qp.is_periodic() || !qf.is_periodic() {
        return Err(Error::Precondition("element is not periodic".into()));
    }
    let mut op = periodic_orbits(&qp);
    let mut of = periodic_orbits(&qf);
    let (tp, tf) = (census(&op), census(&of));
    let n1 = sig.n() - 1;
    if tp.lengths() != tf.lengths()
        || tp.0.iter().any(|(d, &m)| m % n1 != tf.multiplicity(*d) % n1)
    {
        return Ok(ConjugacyCertificate::rejected(Gate::CycleType));
    }
    for (&d, &mp) in &tp.0 {
        let mf = tf.multiplicity(d);
        let (smaller, q) = if mp < mf {
            (&mut op, (mf - mp) / n1)
        } else {
            (&mut of, (mp - mf) / n1)
        };
        if q > 0 {
            expand_orbit(sig, smaller, d, q);
        }
    }
    for orbits in [&mut op, &mut of] {
        orbits.iter_mut().for_each(|o| rotate_to_min(o));
        orbits.sort_by(|a, b| (a.len(), &a[0]).cmp(&(b.len(), &b[0])));
    }
    let pairs: Vec<(Word, Word)> = op
        .iter()
        .zip(&of)
        .flat_map(|(a, b)| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (Word::Simple(x.clone()), Word::Simple(y.clone())))
        })
        .collect();
    let rho = Automorphism::from_map(sig, pairs)?;
    budget.tick()?;
    Ok(if psi.conjugate_by(&rho) == *phi {
        ConjugacyCertificate::found(rho)
    } else {
        ConjugacyCertificate::rejected(Gate::Exhausted)
    })
}

/// Replaces the first orbit of size `d` by the orbits of its `q`-fold
/// leftmost expansion.
fn expand_orbit(sig: Signature, orbits: &mut Vec<Vec<SimpleWord>>, d: usize, q: usize) {
    let index = orbits
        .iter()
        .enumerate()
        .filter(|(_, o)| o.len() == d)
        .min_by(|(_, a), (_, b)| a.iter().min().cmp(&b.iter().min()))
        .map(|(i, _)| i)
        .expect("an orbit of this size exists");
    let orbit = orbits.remove(index);
    let paths: Vec<Vec<u8>> = ABasis::leftmost_expansion(sig, &[SimpleWord::root(0)], q)
        .into_iter()
        .map(|w| w.path().to_vec())
        .collect();
    for e in paths {
        orbits.push(orbit.iter().map(|o| o.extend(&e)).collect());
    }
}

/// `from·from_path·ψ^power = to·to_path` for leaves `from`, `to` of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Link {
    from: usize,
    from_path: Vec<u8>,
    power: i64,
    to: usize,
    to_path: Vec<u8>,
}

struct ClassStructure {
    classes: Vec<Vec<usize>>,
    links: BTreeSet<Link>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

fn class_structure(qnf: &Qnf, budget: &Budget) -> Result<ClassStructure> {
    let basis = qnf.basis();
    let mut parent: Vec<usize> = (0..basis.len()).collect();
    let mut links = BTreeSet::new();
    let sources: BTreeSet<SimpleWord> = basis
        .leaves()
        .iter()
        .chain(qnf.expansion().leaves())
        .chain(qnf.image().leaves())
        .cloned()
        .collect();
    for v in &sources {
        let (h0, p0) = basis.split(v).expect("X, Y and Z lie in X<A>");
        for (t, e) in qnf.component(v, budget)? {
            let (h, p) = basis.split(&e).expect("components lie in X<A>");
            let (a, b) = (find(&mut parent, h0), find(&mut parent, h));
            parent[a] = b;
            if t != 0 {
                links.insert(Link {
                    from: h0,
                    from_path: p0.to_vec(),
                    power: t,
                    to: h,
                    to_path: p.to_vec(),
                });
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..basis.len() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    classes.sort();
    Ok(ClassStructure { classes, links })
}

/// The classes of `≡` on the quasi-normal basis, as sorted leaf indices.
pub fn equivalence_classes(qnf: &Qnf, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    Ok(class_structure(qnf, budget)?.classes)
}

/// `θ_i`: acts as `ψ` on the leaves of `class` and fixes the other leaves.
pub fn class_shift(qnf: &Qnf, class: &[usize]) -> Result<Automorphism> {
    let basis = qnf.basis();
    let pairs = basis
        .leaves()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let w = Word::Simple(x.clone());
            let image = if class.contains(&i) { qnf.psi().apply(&w) } else { w.clone() };
            (w, image)
        })
        .collect();
    Automorphism::from_map(basis.sig(), pairs)
}

/// Rewrites `leaf·path` as `(b·path')ψ^offset` with `b` of type B.
fn to_type_b(qnf: &Qnf, leaf: usize, path: &[u8]) -> (usize, Vec<u8>, i64) {
    match &qnf.types()[leaf] {
        LeafType::C { witness, power, path: sigma } => {
            let mut p = sigma.clone();
            p.extend_from_slice(path);
            (*witness, p, -*power)
        }
        _ => (leaf, path.to_vec(), 0),
    }
}

struct ClassSearch<'a> {
    qp: &'a Qnf,
    qf: &'a Qnf,
    order: Vec<usize>,
    tree: BTreeMap<usize, (usize, Vec<u8>, i64, Vec<u8>)>,
    links: Vec<Link>,
    endpoints: Vec<(SimpleWord, Characteristic)>,
    c_leaves: Vec<usize>,
    budget: &'a Budget,
}

impl ClassSearch<'_> {
    fn consistent(&self, node: usize, assigned: &BTreeMap<usize, Word>) -> bool {
        self.links.iter().all(|l| {
            if l.from != node && l.to != node {
                return true;
            }
            match (assigned.get(&l.from), assigned.get(&l.to)) {
                (Some(a), Some(b)) => {
                    self.qf.apply_power(&a.descend_path(&l.from_path), l.power) == b.descend_path(&l.to_path)
                }
                _ => true,
            }
        })
    }

    fn run(&self, index: usize, assigned: &mut BTreeMap<usize, Word>, out: &mut Vec<BTreeMap<usize, Word>>) -> Result<()> {
        self.budget.tick()?;
        if index == self.order.len() {
            let mut full = assigned.clone();
            for &x in &self.c_leaves {
                if let LeafType::C { witness, power, path } = &self.qp.types()[x] {
                    let z = &assigned[witness];
                    full.insert(x, self.qf.apply_power(&z.descend_path(path), -*power));
                }
            }
            if !out.contains(&full) {
                out.push(full);
            }
            return Ok(());
        }
        let node = self.order[index];
        let (par, gamma, k, delta) = &self.tree[&node];
        let v = assigned[par].descend_path(gamma);
        let ch = self.qp.leaf_characteristic(node).expect("type B");
        for (w, wch) in &self.endpoints {
            if wch != ch {
                continue;
            }
            let wd = Word::Simple(w.extend(delta));
            let answer = self.qf.orbit_test(&wd, &v, self.budget)?;
            let Some(j) = answer.shift else { continue };
            let image = self.qf.apply_power(&Word::Simple(w.clone()), j + k);
            assigned.insert(node, image);
            if self.consistent(node, assigned) {
                self.run(index + 1, assigned, out)?;
            }
            assigned.remove(&node);
        }
        Ok(())
    }
}

/// All images of the leaves of `class` extending some seed of the
/// representative, restricted to consistent choices.
fn class_candidates(
    qp: &Qnf,
    qf: &Qnf,
    class: &[usize],
    all_links: &BTreeSet<Link>,
    budget: &Budget,
) -> Result<Vec<BTreeMap<usize, Word>>> {
    let is_b = |i: usize| matches!(qp.types()[i], LeafType::B(_));
    let b_nodes: Vec<usize> = class.iter().copied().filter(|&i| is_b(i)).collect();
    let c_leaves: Vec<usize> = class.iter().copied().filter(|&i| !is_b(i)).collect();
    let Some(&rep) = b_nodes.first() else {
        return Err(Error::Precondition("class without a type-B leaf".into()));
    };
    let members: BTreeSet<usize> = class.iter().copied().collect();
    let mut links: Vec<Link> = Vec::new();
    for l in all_links.iter().filter(|l| members.contains(&l.from)) {
        let (a, ap, oa) = to_type_b(qp, l.from, &l.from_path);
        let (b, bp, ob) = to_type_b(qp, l.to, &l.to_path);
        let link = Link {
            from: a,
            from_path: ap,
            power: oa + l.power - ob,
            to: b,
            to_path: bp,
        };
        if !links.contains(&link) {
            links.push(link);
        }
    }
    let mut order = vec![rep];
    let mut tree = BTreeMap::new();
    let mut queue = VecDeque::from([rep]);
    while let Some(u) = queue.pop_front() {
        for l in &links {
            let (next, edge) = if l.from == u && !order.contains(&l.to) {
                (l.to, (u, l.from_path.clone(), l.power, l.to_path.clone()))
            } else if l.to == u && !order.contains(&l.from) {
                (l.from, (u, l.to_path.clone(), -l.power, l.from_path.clone()))
            } else {
                continue;
            };
            order.push(next);
            tree.insert(next, edge);
            queue.push_back(next);
        }
    }
    if order.len() != b_nodes.len() {
        return Err(Error::Precondition("type-B leaves of a class are not linked".into()));
    }
    let endpoints: Vec<(SimpleWord, Characteristic)> = qf
        .endpoint_characteristics()
        .iter()
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect();
    let search = ClassSearch {
        qp,
        qf,
        order,
        tree,
        links,
        endpoints,
        c_leaves,
        budget,
    };
    let ch = qp.leaf_characteristic(rep).expect("type B");
    let mut out = Vec::new();
    for (w, wch) in &search.endpoints {
        if wch != ch {
            continue;
        }
        let mut assigned = BTreeMap::from([(rep, Word::Simple(w.clone()))]);
        if search.consistent(rep, &assigned) {
            search.run(1, &mut assigned, &mut out)?;
        }
    }
    Ok(out)
}

/// Decides conjugacy of two regular infinite elements of the same group.
pub fn conjugate_regular_infinite(
    psi: &Automorphism,
    phi: &Automorphism,
    budget: &Budget,
) -> Result<ConjugacyCertificate> {
    let sig = psi.sig();
    sig.check(&phi.sig())?;
    let qp = quasi_normal_basis(psi, budget)?;
    let qf = quasi_normal_basis(phi, budget)?;
    if !qp.is_regular_infinite() || !qf.is_regular_infinite() {
        return Err(Error::Precondition("element is not regular infinite".into()));
    }
    if multiplier_set(&qp) != multiplier_set(&qf) {
        return Ok(ConjugacyCertificate::rejected(Gate::MultiplierSet));
    }
    let structure = class_structure(&qp, budget)?;
    let mut options = Vec::new();
    for class in &structure.classes {
        let candidates = class_candidates(&qp, &qf, class, &structure.links, budget)?;
        if candidates.is_empty() {
            return Ok(ConjugacyCertificate::rejected(Gate::Exhausted));
        }
        options.push(candidates);
    }
    let leaves = qp.basis().leaves();
    let mut choice = vec![0usize; options.len()];
    loop {
        budget.tick()?;
        let mut images: BTreeMap<usize, Word> = BTreeMap::new();
        for (c, &k) in choice.iter().enumerate() {
            images.extend(options[c][k].iter().map(|(i, w)| (*i, w.clone())));
        }
        let range: Vec<Word> = (0..leaves.len()).map(|i| images[&i].clone()).collect();
        if is_basis(&sig, &range) {
            let pairs = leaves.iter().cloned().map(Word::Simple).zip(range).collect();
            let rho = Automorphism::from_map(sig, pairs)?;
            if psi.conjugate_by(&rho) == *phi {
                return Ok(ConjugacyCertificate::found(rho));
            }
        }
        let mut c = options.len();
        loop {
            if c == 0 {
                return Ok(ConjugacyCertificate::rejected(Gate::Exhausted));
            }
            c -= 1;
            choice[c] += 1;
            if choice[c] < options[c].len() {
                break;
            }
            choice[c] = 0;
        }
    }
}

/// Decides whether `psi` and `phi` are conjugate in `G_{n,r}` and returns
/// a verified conjugator when they are.
pub fn conjugate(psi: &Automorphism, phi: &Automorphism, budget: &Budget) -> Result<ConjugacyCertificate> {
    let sig = psi.sig();
    sig.check(&phi.sig())?;
    let dp = decompose(psi, budget)?;
    let df = decompose(phi, budget)?;
    let n1 = sig.n() - 1;
    let size = |p: &Option<Part>| p.as_ref().map_or(0, |p| p.leaves.len());
    for (a, b) in [(&dp.periodic, &df.periodic), (&dp.infinite, &df.infinite)] {
        if size(a) % n1 != size(b) % n1 {
            return Ok(ConjugacyCertificate::rejected(Gate::Congruence));
        }
        if a.is_some() != b.is_some() {
            return Ok(ConjugacyCertificate::rejected(Gate::PartMismatch));
        }
    }
    let mut pairs = Vec::new();
    if let (Some(a), Some(b)) = (&dp.periodic, &df.periodic) {
        let cert = conjugate_periodic(&a.rebased, &b.rebased, budget)?;
        let Some(theta) = cert.conjugator else { return Ok(cert) };
        pairs.extend(stitch(a, b, &theta));
    }
    if let (Some(a), Some(b)) = (&dp.infinite, &df.infinite) {
        let cert = conjugate_regular_infinite(&a.rebased, &b.rebased, budget)?;
        let Some(theta) = cert.conjugator else { return Ok(cert) };
        pairs.extend(stitch(a, b, &theta));
    }
    let rho = Automorphism::from_map(sig, pairs)?;
    Ok(if psi.conjugate_by(&rho) == *phi {
        ConjugacyCertificate::found(rho)
    } else {
        ConjugacyCertificate::rejected(Gate::Exhausted)
    })
}

