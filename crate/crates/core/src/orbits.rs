//! Semi-normal and quasi-normal forms, X-components, characteristics,
//! ponds and the orbit-sharing test.
//!
//! All scans follow the forward and backward enumeration of an
//! `X`-component: a scan stops when the orbit leaves `X⟨A⟩` (states 1F/1B)
//! or when a leaf prefix repeats (states 2F/2B).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::automorphism::{minimal_expansion_for, Automorphism};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::word_algebra::{is_initial_segment, minimal_expansion_where, ABasis, SimpleWord, Word};

/// The five kinds of `X`-component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentType {
    /// A finite orbit inside `X⟨A⟩`.
    CompleteFinite,
    /// An infinite orbit inside `X⟨A⟩` in both directions.
    CompleteInfinite,
    /// Has an initial element and continues forever forwards.
    RightSemiInfinite,
    /// Has a terminal element and continues forever backwards.
    LeftSemiInfinite,
    /// A finite segment with both an initial and a terminal element.
    IncompleteFinite,
}

/// The pair `(m, Γ)` with `uψ^m = uΓ` and `|m|` minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic {
    /// The power `m`, never zero.
    pub power: i64,
    /// The multiplier `Γ`, never empty; 0-based letters.
    pub multiplier: Vec<u8>,
}

impl Characteristic {
    /// A characteristic from a power and 0-based letters.
    pub fn new(power: i64, multiplier: Vec<u8>) -> Self {
        Characteristic { power, multiplier }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ", self.power)?;
        for (k, a) in self.multiplier.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "a{}", a + 1)?;
        }
        f.write_str(")")
    }
}

/// Classification of a leaf of a semi-normal basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LeafType {
    /// The leaf lies in a complete finite component of this period.
    A { period: usize },
    /// The leaf has a characteristic.
    B(Characteristic),
    /// Neither; `leaf ψ^power = witness·path` with `witness` of type B.
    C {
        witness: usize,
        power: i64,
        path: Vec<u8>,
    },
}

/// A pond `(l, k, r)`: `r = lψ^k` with `l` terminal in a left
/// semi-infinite component and `r` initial in a right semi-infinite one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pond {
    /// The terminal element.
    pub left: SimpleWord,
    /// The width `k`.
    pub width: i64,
    /// The initial element.
    pub right: SimpleWord,
}

impl fmt::Display for Pond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pond l={} k={} r={}", self.left, self.width, self.right)
    }
}

/// Answer to an orbit-sharing query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitAnswer {
    /// True iff `v` lies in the orbit of `u`.
    pub related: bool,
    /// Some `m` with `uψ^m = v`; the least non-negative one for finite
    /// orbits.
    pub shift: Option<i64>,
}

impl OrbitAnswer {
    fn related(m: i64) -> Self {
        OrbitAnswer {
            related: true,
            shift: Some(m),
        }
    }

    fn unrelated() -> Self {
        OrbitAnswer {
            related: false,
            shift: None,
        }
    }
}

/// Order of a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// Finite order.
    Finite(u64),
    /// Infinite order.
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// Solutions `m` of `uψ^m = v`: one integer, or a residue class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Shift {
    pub(crate) base: i64,
    pub(crate) period: Option<i64>,
}

#[derive(Debug, Clone)]
struct Scan {
    elems: Vec<SimpleWord>,
    heads: Vec<usize>,
    repeat: Option<usize>,
}

fn scan(basis: &ABasis, map: &Automorphism, u: &SimpleWord, budget: &Budget) -> Result<Scan> {
    let (head, _) = basis
        .split(u)
        .ok_or_else(|| Error::Precondition(format!("{u} is not below the basis")))?;
    let mut elems = vec![u.clone()];
    let mut heads = vec![head];
    let mut seen: HashMap<usize, usize> = HashMap::from([(head, 0)]);
    loop {
        budget.tick()?;
        let Word::Simple(next) = map.apply_simple(elems.last().expect("non-empty")) else {
            return Ok(Scan { elems, heads, repeat: None });
        };
        let Some((head, _)) = basis.split(&next) else {
            return Ok(Scan { elems, heads, repeat: None });
        };
        elems.push(next);
        heads.push(head);
        if let Some(&first) = seen.get(&head) {
            return Ok(Scan {
                elems,
                heads,
                repeat: Some(first),
            });
        }
        seen.insert(head, heads.len() - 1);
    }
}

fn in_incomplete_component(
    basis: &ABasis,
    psi: &Automorphism,
    inv: &Automorphism,
    u: &SimpleWord,
    budget: &Budget,
) -> Result<bool> {
    Ok(scan(basis, psi, u, budget)?.repeat.is_none() && scan(basis, inv, u, budget)?.repeat.is_none())
}

fn is_semi_normal(basis: &ABasis, psi: &Automorphism, inv: &Automorphism, budget: &Budget) -> Result<bool> {
    for y in basis.leaves() {
        if in_incomplete_component(basis, psi, inv, y, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A basis with respect to which `psi` has no incomplete finite component.
///
/// Starts from the minimal expansion of `𝐱` inside `Y⟨A⟩ ∪ Z⟨A⟩` for the
/// canonical symbol `(Y, Z)` and expands at leaves found in incomplete
/// finite components.
pub fn semi_normal_basis(psi: &Automorphism, budget: &Budget) -> Result<ABasis> {
    let inv = psi.inverse();
    semi_normal_with(psi, &inv, budget)
}

fn semi_normal_with(psi: &Automorphism, inv: &Automorphism, budget: &Budget) -> Result<ABasis> {
    let sig = psi.sig();
    let range = ABasis::new(sig, psi.range().to_vec())?;
    let mut basis = minimal_expansion_where(sig, &sig.roots(), |w| {
        psi.domain().contains_below(w) || range.contains_below(w)
    });
    'outer: loop {
        for y in basis.leaves() {
            if in_incomplete_component(&basis, psi, inv, y, budget)? {
                basis = basis.simple_expansion(&y.clone())?;
                continue 'outer;
            }
        }
        return Ok(basis);
    }
}

/// The quasi-normal form of `psi` with all derived orbit data.
pub fn quasi_normal_basis(psi: &Automorphism, budget: &Budget) -> Result<Qnf> {
    Qnf::build(psi, budget)
}

/// The order of `psi`.
pub fn order_of(psi: &Automorphism, budget: &Budget) -> Result<Order> {
    Ok(quasi_normal_basis(psi, budget)?.order())
}

/// Quasi-normal basis `X_ψ` of an automorphism with leaf types,
/// endpoint sets and ponds.
#[derive(Debug, Clone)]
pub struct Qnf {
    psi: Automorphism,
    inv: Automorphism,
    basis: ABasis,
    types: Vec<LeafType>,
    expansion: ABasis,
    image: ABasis,
    terminals: Vec<SimpleWord>,
    initials: Vec<SimpleWord>,
    endpoint_characteristics: BTreeMap<SimpleWord, Characteristic>,
    ponds: Vec<Pond>,
    warnings: Vec<String>,
}

impl Qnf {
    fn build(psi: &Automorphism, budget: &Budget) -> Result<Qnf> {
        let inv = psi.inverse();
        let mut basis = semi_normal_with(psi, &inv, budget)?;
        'contract: loop {
            for parent in basis.contractible() {
                let candidate = basis.contract(&parent)?;
                if is_semi_normal(&candidate, psi, &inv, budget)? {
                    basis = candidate;
                    continue 'contract;
                }
            }
            break;
        }
        Self::assemble(psi.clone(), inv, basis, budget)
    }

    /// Orbit data of `psi` with respect to a semi-normal basis other than
    /// the quasi-normal one.
    pub fn on_basis(psi: &Automorphism, basis: ABasis, budget: &Budget) -> Result<Qnf> {
        psi.sig().check(&basis.sig())?;
        let inv = psi.inverse();
        if !is_semi_normal(&basis, psi, &inv, budget)? {
            return Err(Error::Precondition("basis is not semi-normal".into()));
        }
        Self::assemble(psi.clone(), inv, basis, budget)
    }

    fn assemble(psi: Automorphism, inv: Automorphism, basis: ABasis, budget: &Budget) -> Result<Qnf> {
        let sig = psi.sig();
        let mut types = Vec::with_capacity(basis.len());
        for y in basis.leaves() {
            let fwd = scan(&basis, &psi, y, budget)?;
            let bwd = scan(&basis, &inv, y, budget)?;
            let suffix = |scan: &Scan, k: usize| -> Vec<u8> {
                let head = &basis.leaves()[scan.heads[k]];
                scan.elems[k].path()[head.depth()..].to_vec()
            };
            let leaf_type = if fwd.repeat == Some(0) && fwd.elems.last() == Some(y) {
                LeafType::A {
                    period: fwd.elems.len() - 1,
                }
            } else if fwd.repeat == Some(0) {
                let last = fwd.elems.len() - 1;
                LeafType::B(Characteristic::new(last as i64, suffix(&fwd, last)))
            } else if bwd.repeat == Some(0) {
                let last = bwd.elems.len() - 1;
                LeafType::B(Characteristic::new(-(last as i64), suffix(&bwd, last)))
            } else if let Some(l) = fwd.repeat {
                LeafType::C {
                    witness: fwd.heads[l],
                    power: l as i64,
                    path: suffix(&fwd, l),
                }
            } else if let Some(l) = bwd.repeat {
                LeafType::C {
                    witness: bwd.heads[l],
                    power: -(l as i64),
                    path: suffix(&bwd, l),
                }
            } else {
                return Err(Error::Precondition(format!(
                    "{y} lies in an incomplete finite component of a semi-normal basis"
                )));
            };
            types.push(leaf_type);
        }

        let expansion = minimal_expansion_for(&[&psi], &basis)?;
        let image = ABasis::new(
            sig,
            expansion
                .leaves()
                .iter()
                .map(|y| psi.apply_simple(y).as_simple().cloned().expect("image in X<A>"))
                .collect(),
        )?;
        let outside = |forest: &ABasis| -> Vec<SimpleWord> {
            forest
                .inner_nodes()
                .into_iter()
                .filter(|w| basis.contains_below(w))
                .collect()
        };
        let terminals = outside(&expansion);
        let initials = outside(&image);

        let mut qnf = Qnf {
            psi,
            inv,
            basis,
            types,
            expansion,
            image,
            terminals,
            initials,
            endpoint_characteristics: BTreeMap::new(),
            ponds: Vec::new(),
            warnings: Vec::new(),
        };
        let endpoints: Vec<SimpleWord> = qnf.terminals.iter().chain(&qnf.initials).cloned().collect();
        for e in endpoints {
            if let Some(ch) = qnf.characteristic_of(&Word::Simple(e.clone()), budget)? {
                qnf.endpoint_characteristics.insert(e, ch);
            }
        }
        qnf.ponds = qnf.find_ponds(budget)?;
        for pond in &qnf.ponds {
            if pond.width < 2 {
                qnf.warnings.push(format!("{pond} has width below 2"));
            }
        }
        Ok(qnf)
    }

    fn find_ponds(&self, budget: &Budget) -> Result<Vec<Pond>> {
        let mut ponds = Vec::new();
        let plain = |set: &[SimpleWord]| -> Vec<SimpleWord> {
            set.iter()
                .filter(|w| !self.endpoint_characteristics.contains_key(*w))
                .cloned()
                .collect()
        };
        let lefts = plain(&self.terminals);
        let rights = plain(&self.initials);
        if lefts.is_empty() || rights.is_empty() {
            return Ok(ponds);
        }
        for l in &lefts {
            let gamma = self.complete_infinite_descent(l, budget)?;
            let lg = l.extend(&gamma);
            for r in &rights {
                if let Some(shift) = self.component_shift(&lg, &r.extend(&gamma), budget)? {
                    let k = shift.base;
                    let reached = self.apply_power(&Word::Simple(l.clone()), k);
                    if reached == Word::Simple(r.clone()) {
                        ponds.push(Pond {
                            left: l.clone(),
                            width: k,
                            right: r.clone(),
                        });
                    }
                }
            }
        }
        Ok(ponds)
    }

    fn complete_infinite_descent(&self, l: &SimpleWord, budget: &Budget) -> Result<Vec<u8>> {
        for len in 0.. {
            for gamma in all_paths(self.sig_n(), len) {
                budget.tick()?;
                if self.component_type(&l.extend(&gamma), budget)? == ComponentType::CompleteInfinite {
                    return Ok(gamma);
                }
            }
        }
        unreachable!("the loop over lengths only exits by returning")
    }

    fn sig_n(&self) -> usize {
        self.psi.sig().n()
    }

    /// The automorphism.
    pub fn psi(&self) -> &Automorphism {
        &self.psi
    }

    /// Its inverse.
    pub fn inverse(&self) -> &Automorphism {
        &self.inv
    }

    /// The quasi-normal basis `X_ψ`.
    pub fn basis(&self) -> &ABasis {
        &self.basis
    }

    /// Leaf types, indexed like `basis().leaves()`.
    pub fn types(&self) -> &[LeafType] {
        &self.types
    }

    /// The minimal expansion `Y` of `X_ψ` with `Yψ ⊆ X_ψ⟨A⟩`.
    pub fn expansion(&self) -> &ABasis {
        &self.expansion
    }

    /// `Z = Yψ`.
    pub fn image(&self) -> &ABasis {
        &self.image
    }

    /// `X⟨A⟩ ∖ Y⟨A⟩`: terminal elements of left semi-infinite components.
    pub fn terminals(&self) -> &[SimpleWord] {
        &self.terminals
    }

    /// `X⟨A⟩ ∖ Z⟨A⟩`: initial elements of right semi-infinite components.
    pub fn initials(&self) -> &[SimpleWord] {
        &self.initials
    }

    /// Endpoints that have a characteristic, with that characteristic.
    pub fn endpoint_characteristics(&self) -> &BTreeMap<SimpleWord, Characteristic> {
        &self.endpoint_characteristics
    }

    /// The pond set `P(ψ)`.
    pub fn ponds(&self) -> &[Pond] {
        &self.ponds
    }

    /// Anomalies found while building, such as ponds narrower than 2.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Characteristic of a type-B leaf.
    pub fn leaf_characteristic(&self, leaf: usize) -> Option<&Characteristic> {
        match &self.types[leaf] {
            LeafType::B(ch) => Some(ch),
            _ => None,
        }
    }

    /// True iff no leaf has type B.
    pub fn is_periodic(&self) -> bool {
        self.types.iter().all(|t| matches!(t, LeafType::A { .. }))
    }

    /// True iff no leaf has type A.
    pub fn is_regular_infinite(&self) -> bool {
        self.types.iter().all(|t| !matches!(t, LeafType::A { .. }))
    }

    /// The order of `ψ`.
    pub fn order(&self) -> Order {
        let mut order: u64 = 1;
        for t in &self.types {
            match t {
                LeafType::A { period } => order = lcm(order, *period as u64),
                _ => return Order::Infinite,
            }
        }
        Order::Finite(order)
    }

    /// `wψ^k`.
    pub fn apply_power(&self, w: &Word, k: i64) -> Word {
        self.psi.apply_power(&self.inv, w, k)
    }

    /// The type of the `X`-component of `u ∈ X⟨A⟩`.
    pub fn component_type(&self, u: &SimpleWord, budget: &Budget) -> Result<ComponentType> {
        Ok(match (self.reach(u, true, budget)?, self.reach(u, false, budget)?) {
            (Reach::Returns, _) | (_, Reach::Returns) => ComponentType::CompleteFinite,
            (Reach::Forever, Reach::Forever) => ComponentType::CompleteInfinite,
            (Reach::Forever, Reach::Exits) => ComponentType::RightSemiInfinite,
            (Reach::Exits, Reach::Forever) => ComponentType::LeftSemiInfinite,
            (Reach::Exits, Reach::Exits) => ComponentType::IncompleteFinite,
        })
    }

    /// How the orbit of `u ∈ X⟨A⟩` behaves in one direction. Once the walk
    /// reaches `yΘ` whose leaf `y` stays in `X⟨A⟩` forever without
    /// returning, so does the walk.
    fn reach(&self, u: &SimpleWord, forward: bool, budget: &Budget) -> Result<Reach> {
        let map = if forward { &self.psi } else { &self.inv };
        let mut w = u.clone();
        for step in 0usize.. {
            budget.tick()?;
            if step > 0 && w == *u {
                return Ok(Reach::Returns);
            }
            let (head, _) = self
                .basis
                .split(&w)
                .ok_or_else(|| Error::Precondition(format!("{w} is not below the basis")))?;
            let leaf = scan(&self.basis, map, &self.basis.leaves()[head], budget)?;
            if leaf.repeat.is_some() && leaf.elems.last() != leaf.elems.first() {
                return Ok(Reach::Forever);
            }
            match map.apply_simple(&w) {
                Word::Simple(next) if self.basis.contains_below(&next) => w = next,
                _ => return Ok(Reach::Exits),
            }
        }
        unreachable!("the walk only exits by returning")
    }

    /// The enumerated segment of the `X`-component of `u ∈ X⟨A⟩`, as pairs
    /// `(i, uψ^i)` in increasing `i`.
    pub fn component(&self, u: &SimpleWord, budget: &Budget) -> Result<Vec<(i64, SimpleWord)>> {
        let fwd = scan(&self.basis, &self.psi, u, budget)?;
        let bwd = scan(&self.basis, &self.inv, u, budget)?;
        let mut out: Vec<(i64, SimpleWord)> = bwd
            .elems
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(i, w)| (-(i as i64), w))
            .collect();
        out.reverse();
        out.extend(fwd.elems.into_iter().enumerate().map(|(i, w)| (i as i64, w)));
        Ok(out)
    }

    /// The characteristic of `u`, if `u` is a characteristic element.
    pub fn characteristic_of(&self, u: &Word, budget: &Budget) -> Result<Option<Characteristic>> {
        let mut fwd = u.clone();
        let mut bwd = u.clone();
        for k in 1..=self.basis.len() as i64 {
            budget.tick()?;
            fwd = self.psi.apply(&fwd);
            if let Some(gamma) = is_initial_segment(u, &fwd).filter(|g| !g.is_empty()) {
                return Ok(Some(Characteristic::new(k, gamma)));
            }
            bwd = self.inv.apply(&bwd);
            if let Some(gamma) = is_initial_segment(u, &bwd).filter(|g| !g.is_empty()) {
                return Ok(Some(Characteristic::new(-k, gamma)));
            }
        }
        Ok(None)
    }

    /// Moves `u ∈ X⟨A⟩` to `uψ^offset` whose leaf prefix has type A or B
    /// and whose remaining path does not start with that leaf's multiplier.
    fn normalize(&self, u: &SimpleWord) -> Result<(SimpleWord, i64)> {
        let (head, rest) = self
            .basis
            .split(u)
            .ok_or_else(|| Error::Precondition(format!("{u} is not below the basis")))?;
        let (head, mut suffix, mut offset) = match &self.types[head] {
            LeafType::A { .. } => return Ok((u.clone(), 0)),
            LeafType::B(_) => (head, rest.to_vec(), 0),
            LeafType::C { witness, power, path } => {
                let mut suffix = path.clone();
                suffix.extend_from_slice(rest);
                (*witness, suffix, *power)
            }
        };
        let ch = self
            .leaf_characteristic(head)
            .ok_or_else(|| Error::Precondition("type-C witness is not of type B".into()))?;
        while suffix.starts_with(&ch.multiplier) {
            suffix.drain(..ch.multiplier.len());
            offset -= ch.power;
        }
        Ok((self.basis.leaves()[head].extend(&suffix), offset))
    }

    /// All `m` with `uψ^m = v` inside one `X`-component, for `u, v ∈ X⟨A⟩`.
    pub(crate) fn component_shift(
        &self,
        u: &SimpleWord,
        v: &SimpleWord,
        budget: &Budget,
    ) -> Result<Option<Shift>> {
        let (u1, ou) = self.normalize(u)?;
        let (v1, ov) = self.normalize(v)?;
        let (head, _) = self.basis.split(&u1).expect("normalized words stay below the basis");
        let period = match self.types[head] {
            LeafType::A { period } => Some(period as i64),
            _ => None,
        };
        let found = self
            .component(&u1, budget)?
            .into_iter()
            .find(|(_, w)| *w == v1)
            .map(|(t, _)| Shift {
                base: ou + t - ov,
                period,
            });
        Ok(found)
    }

    /// Decides whether `u, v ∈ X⟨A⟩` lie in the same `X`-component.
    pub fn component_test(&self, u: &SimpleWord, v: &SimpleWord, budget: &Budget) -> Result<OrbitAnswer> {
        Ok(match self.component_shift(u, v, budget)? {
            Some(Shift { base, period }) => {
                OrbitAnswer::related(period.map_or(base, |p| base.rem_euclid(p)))
            }
            None => OrbitAnswer::unrelated(),
        })
    }

    fn shift_in_basis(&self, u: &SimpleWord, v: &SimpleWord, budget: &Budget) -> Result<Option<Shift>> {
        if let Some(shift) = self.component_shift(u, v, budget)? {
            return Ok(Some(shift));
        }
        for pond in &self.ponds {
            if let (Some(a), Some(b)) = (
                self.component_shift(u, &pond.left, budget)?,
                self.component_shift(&pond.right, v, budget)?,
            ) {
                return Ok(Some(Shift {
                    base: a.base + pond.width + b.base,
                    period: None,
                }));
            }
            if let (Some(a), Some(b)) = (
                self.component_shift(u, &pond.right, budget)?,
                self.component_shift(&pond.left, v, budget)?,
            ) {
                return Ok(Some(Shift {
                    base: a.base - pond.width + b.base,
                    period: None,
                }));
            }
        }
        Ok(None)
    }

    fn depth_needed(&self, w: &Word) -> usize {
        match w {
            Word::Simple(s) => self.basis.depth_to_enter(s),
            Word::Lambda(cs) => 1 + cs.iter().map(|c| self.depth_needed(c)).max().unwrap_or(0),
        }
    }

    /// Decides whether `u` and `v` share a `ψ`-orbit, crossing ponds.
    pub fn orbit_test(&self, u: &Word, v: &Word, budget: &Budget) -> Result<OrbitAnswer> {
        let depth = self.depth_needed(u).max(self.depth_needed(v));
        let mut residue: Option<(i64, i64)> = None;
        for gamma in all_paths(self.sig_n(), depth) {
            budget.tick()?;
            let ug = u.descend_path(&gamma);
            let vg = v.descend_path(&gamma);
            let (Word::Simple(ug), Word::Simple(vg)) = (ug, vg) else {
                return Err(Error::Precondition("descent did not reach simple words".into()));
            };
            match self.shift_in_basis(&ug, &vg, budget)? {
                None => return Ok(OrbitAnswer::unrelated()),
                Some(Shift { base, period: None }) => {
                    return Ok(if self.apply_power(u, base) == *v {
                        OrbitAnswer::related(base)
                    } else {
                        OrbitAnswer::unrelated()
                    });
                }
                Some(Shift {
                    base,
                    period: Some(p),
                }) => {
                    let next = match residue {
                        None => Some((base.rem_euclid(p), p)),
                        Some((b0, p0)) => intersect_residues(b0, p0, base, p),
                    };
                    match next {
                        Some(r) => residue = Some(r),
                        None => return Ok(OrbitAnswer::unrelated()),
                    }
                }
            }
        }
        let (base, _) = residue.expect("at least one descendant");
        Ok(if self.apply_power(u, base) == *v {
            OrbitAnswer::related(base)
        } else {
            OrbitAnswer::unrelated()
        })
    }
}

fn intersect_residues(b1: i64, p1: i64, b2: i64, p2: i64) -> Option<(i64, i64)> {
    let l = lcm(p1 as u64, p2 as u64) as i64;
    (0..l)
        .find(|t| (t - b1).rem_euclid(p1) == 0 && (t - b2).rem_euclid(p2) == 0)
        .map(|t| (t, l))
}

/// Long-run behaviour of a walk in one direction.
enum Reach {
    Returns,
    Exits,
    Forever,
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// All paths of length `len` over `n` letters in lexicographic order.
pub fn all_paths(n: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n as u8).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}
