//! Multiplier sets of powers, the divisor bounds and the power-conjugacy
//! solver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::automorphism::Automorphism;
use crate::budget::Budget;
use crate::conjugacy::{conjugate_periodic, conjugate_regular_infinite, decompose, stitch};
use crate::error::{Error, Result};
use crate::orbits::{gcd, lcm, quasi_normal_basis, Characteristic, LeafType, Order, Qnf};

/// The characteristics of the semi-infinite components of a regular
/// infinite element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiplierSet(pub BTreeSet<Characteristic>);

impl fmt::Display for MultiplierSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// `𝓜_ψ`, read off the characteristics of type-B leaves and of the
/// endpoints of semi-infinite components.
pub fn multiplier_set(qnf: &Qnf) -> MultiplierSet {
    let mut out: BTreeSet<Characteristic> = qnf.endpoint_characteristics().values().cloned().collect();
    for t in qnf.types() {
        if let LeafType::B(c) = t {
            out.insert(c.clone());
        }
    }
    MultiplierSet(out)
}

/// `𝓜_{ψ^a}` computed from `𝓜_ψ`: each `(m, Γ)` becomes `(m/d, Γ^q)`
/// with `d = gcd(m, a)` and `|a| = qd`; a negative `a` also negates the
/// power.
pub fn power_multiplier_set(set: &MultiplierSet, a: i64) -> Result<MultiplierSet> {
    if a == 0 {
        return Err(Error::Precondition("power must be non-zero".into()));
    }
    let out = set
        .0
        .iter()
        .map(|c| {
            let d = gcd(c.power.unsigned_abs(), a.unsigned_abs()) as i64;
            let q = a.unsigned_abs() as usize / d as usize;
            let power = c.power / d * a.signum();
            Characteristic::new(power, c.multiplier.repeat(q))
        })
        .collect();
    Ok(MultiplierSet(out))
}

/// The primitive root `√Γ` and exponent `m(Γ)` with `Γ = √Γ^{m(Γ)}`.
pub fn primitive_root(gamma: &[u8]) -> (Vec<u8>, usize) {
    let len = gamma.len();
    for p in 1..=len {
        if len % p == 0 && (p..len).all(|i| gamma[i] == gamma[i - p]) {
            return (gamma[..p].to_vec(), len / p);
        }
    }
    (Vec::new(), 0)
}

/// The bounds `(â, b̂)` on minimal solutions of `ψ^a ~ φ^b`.
///
/// Characteristics are grouped by primitive root; `(0, 0)` means the root
/// sets differ and no power of one is conjugate to a power of the other.
pub fn bounds(psi: &MultiplierSet, phi: &MultiplierSet) -> (u64, u64) {
    let group = |set: &MultiplierSet| {
        let mut out: BTreeMap<Vec<u8>, Vec<(u64, u64)>> = BTreeMap::new();
        for c in &set.0 {
            let (root, exponent) = primitive_root(&c.multiplier);
            out.entry(root).or_default().push((c.power.unsigned_abs(), exponent as u64));
        }
        out
    };
    let (p, q) = (group(psi), group(phi));
    if !p.keys().eq(q.keys()) {
        return (0, 0);
    }
    let (mut a_hat, mut b_hat) = (1u64, 1u64);
    for (root, pi) in &p {
        let qi = &q[root];
        let prod = |v: &[(u64, u64)], f: fn(&(u64, u64)) -> u64| v.iter().map(f).fold(1u64, u64::saturating_mul);
        let (pm, pe) = (prod(pi, |x| x.0), prod(pi, |x| x.1));
        let (qm, qe) = (prod(qi, |x| x.0), prod(qi, |x| x.1));
        let term = |m: u64, e: u64, k: usize, l: usize| m.saturating_pow(k as u32).saturating_mul(e.saturating_pow(l as u32));
        a_hat = a_hat.saturating_mul(term(pm, qe, qi.len(), pi.len()));
        b_hat = b_hat.saturating_mul(term(qm, pe, pi.len(), qi.len()));
    }
    (a_hat, b_hat)
}

/// A solution `ρ⁻¹ψ^aρ = φ^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerPair {
    /// Power of `ψ`.
    pub a: i64,
    /// Power of `φ`.
    pub b: i64,
    /// The multiplier `g` of a mixed solution; `None` when every multiple
    /// `(ag, bg)` is also a solution.
    pub g: Option<u64>,
    /// A verified conjugator.
    pub conjugator: Automorphism,
}

/// All solution pairs found, with the data that generates the rest.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PowerPairSet {
    /// Solutions in sweep order.
    pub pairs: Vec<PowerPair>,
    /// Orders `(k, m)` of the periodic factors, when both exist.
    pub periodic_orders: Option<(u64, u64)>,
    /// `(â, b̂)` for the regular infinite factors, when both exist.
    pub bounds: Option<(u64, u64)>,
}

impl PowerPairSet {
    /// True iff some power of `ψ` is conjugate to some power of `φ`.
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `lcm(k, m)`, or 1 without periodic factors.
    pub fn period(&self) -> u64 {
        self.periodic_orders.map_or(1, |(k, m)| lcm(k, m))
    }
}

/// `(a, b)` with `1 <= |a| <= a_hat`, `1 <= |b| <= b_hat`, ordered by
/// `|a| + |b|`, then `|a|`, then sign pattern `++, +-, -+, --`.
pub fn sweep(a_hat: u64, b_hat: u64) -> Vec<(i64, i64)> {
    let (a_hat, b_hat) = (a_hat as i64, b_hat as i64);
    let mut out = Vec::new();
    for total in 2..=a_hat + b_hat {
        for a in 1..=a_hat.min(total - 1) {
            let b = total - a;
            if b > b_hat {
                continue;
            }
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push((sa * a, sb * b));
            }
        }
    }
    out
}

/// Sweep position of `(a, b)`.
fn sweep_key(a: i64, b: i64) -> (u64, u64, usize) {
    let signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
    let sign = signs
        .iter()
        .position(|&s| s == (a.signum(), b.signum()))
        .expect("non-zero powers");
    (a.unsigned_abs() + b.unsigned_abs(), a.unsigned_abs(), sign)
}

/// A multiplier set `𝓜_{ψ^a}` with each `Γ^q` stored as its primitive
/// root and total exponent.
type CompactSet = BTreeSet<(i64, Vec<u8>, u64)>;

fn compact_power(roots: &[(i64, Vec<u8>, u64)], a: i64) -> CompactSet {
    roots
        .iter()
        .map(|(m, root, e)| {
            let d = gcd(m.unsigned_abs(), a.unsigned_abs());
            let q = a.unsigned_abs() / d;
            (m / d as i64 * a.signum(), root.clone(), e.saturating_mul(q))
        })
        .collect()
}

fn roots_of(set: &MultiplierSet) -> Vec<(i64, Vec<u8>, u64)> {
    set.0
        .iter()
        .map(|c| {
            let (root, e) = primitive_root(&c.multiplier);
            (c.power, root, e as u64)
        })
        .collect()
}

/// The pairs of [`sweep`] with `𝓜_{ψ^a} = 𝓜_{φ^b}`, in sweep order.
///
/// Each power's multiplier set is computed once in compact form and the
/// `b` side is indexed by set, so the cost is linear in `â + b̂` plus the
/// matches.
fn matching_powers(
    mp: &MultiplierSet,
    mf: &MultiplierSet,
    a_hat: u64,
    b_hat: u64,
    budget: &Budget,
) -> Result<Vec<(i64, i64)>> {
    let signed = |hat: u64| (1..=hat.min(i64::MAX as u64) as i64).flat_map(|k| [k, -k]);
    let (rp, rf) = (roots_of(mp), roots_of(mf));
    let mut by_set: BTreeMap<CompactSet, Vec<i64>> = BTreeMap::new();
    for b in signed(b_hat) {
        budget.tick()?;
        by_set.entry(compact_power(&rf, b)).or_default().push(b);
    }
    let mut out = Vec::new();
    for a in signed(a_hat) {
        budget.tick()?;
        if let Some(bs) = by_set.get(&compact_power(&rp, a)) {
            out.extend(bs.iter().map(|&b| (a, b)));
        }
    }
    out.sort_by_key(|&(a, b)| sweep_key(a, b));
    Ok(out)
}

struct Powers {
    base: Automorphism,
    inverse: Automorphism,
    cache: BTreeMap<i64, Automorphism>,
}

impl Powers {
    fn new(base: &Automorphism) -> Self {
        Powers {
            base: base.clone(),
            inverse: base.inverse(),
            cache: BTreeMap::from([(0, Automorphism::identity(base.sig()))]),
        }
    }

    fn get(&mut self, k: i64) -> &Automorphism {
        let step = k.signum();
        let mut j = 0;
        while j != k {
            let next = j + step;
            if !self.cache.contains_key(&next) {
                let f = if step > 0 { &self.base } else { &self.inverse };
                let value = self.cache[&j].compose(f);
                self.cache.insert(next, value);
            }
            j = next;
        }
        &self.cache[&k]
    }
}

/// The `(a, b, ρ)` within the bounds with `ρ⁻¹ψ^aρ = φ^b`, for regular
/// infinite `ψ` and `φ`.
///
/// Candidates that are positive multiples of a pair already found are
/// skipped, since the same `ρ` conjugates them; every solution is a
/// multiple of a returned pair.
pub fn power_conjugate_regular_infinite(
    psi: &Automorphism,
    phi: &Automorphism,
    budget: &Budget,
) -> Result<PowerPairSet> {
    psi.sig().check(&phi.sig())?;
    let qp = quasi_normal_basis(psi, budget)?;
    let qf = quasi_normal_basis(phi, budget)?;
    if !qp.is_regular_infinite() || !qf.is_regular_infinite() {
        return Err(Error::Precondition("element is not regular infinite".into()));
    }
    let (mp, mf) = (multiplier_set(&qp), multiplier_set(&qf));
    let (a_hat, b_hat) = bounds(&mp, &mf);
    let mut out = PowerPairSet {
        bounds: Some((a_hat, b_hat)),
        ..PowerPairSet::default()
    };
    let (mut pp, mut pf) = (Powers::new(psi), Powers::new(phi));
    for (a, b) in matching_powers(&mp, &mf, a_hat, b_hat, budget)? {
        let generated = out
            .pairs
            .iter()
            .any(|p| a % p.a == 0 && a / p.a > 0 && a / p.a * p.b == b);
        if generated {
            continue;
        }
        let cert = conjugate_regular_infinite(&pp.get(a).clone(), pf.get(b), budget)?;
        if let Some(rho) = cert.conjugator {
            out.pairs.push(PowerPair {
                a,
                b,
                g: None,
                conjugator: rho,
            });
        }
    }
    Ok(out)
}

fn finite_order(qnf: &Qnf) -> u64 {
    match qnf.order() {
        Order::Finite(k) => k,
        Order::Infinite => unreachable!("periodic factor"),
    }
}

/// All solutions of `ψ^a ~ φ^b` with verified conjugators.
///
/// Pure regular infinite pairs generate the solutions `(ag, bg)` for every
/// integer `g`; pure periodic pairs are all `1 <= a <= k`, `1 <= b <= m`;
/// mixed pairs carry their `g` and hold for every `h ≡ g` modulo the
/// period with `h | a` and `h | b`.
pub fn power_conjugate(psi: &Automorphism, phi: &Automorphism, budget: &Budget) -> Result<PowerPairSet> {
    let sig = psi.sig();
    sig.check(&phi.sig())?;
    let dp = decompose(psi, budget)?;
    let df = decompose(phi, budget)?;
    let mut out = PowerPairSet::default();
    if dp.periodic.is_some() != df.periodic.is_some() || dp.infinite.is_some() != df.infinite.is_some() {
        return Ok(out);
    }
    let n1 = sig.n() - 1;
    let size = |p: &Option<crate::conjugacy::Part>| p.as_ref().map_or(0, |p| p.leaves.len());
    if size(&dp.periodic) % n1 != size(&df.periodic) % n1 || size(&dp.infinite) % n1 != size(&df.infinite) % n1 {
        return Ok(out);
    }
    let mut ri: Vec<(i64, i64, Automorphism)> = Vec::new();
    if let (Some(a), Some(b)) = (&dp.infinite, &df.infinite) {
        let set = power_conjugate_regular_infinite(&a.rebased, &b.rebased, budget)?;
        out.bounds = set.bounds;
        if set.pairs.is_empty() {
            return Ok(out);
        }
        ri = set.pairs.into_iter().map(|p| (p.a, p.b, p.conjugator)).collect();
    }
    let mut periodic: Vec<(i64, i64, Automorphism)> = Vec::new();
    let mut orders = (1u64, 1u64);
    if let (Some(a), Some(b)) = (&dp.periodic, &df.periodic) {
        let k = finite_order(&quasi_normal_basis(&a.rebased, budget)?);
        let m = finite_order(&quasi_normal_basis(&b.rebased, budget)?);
        orders = (k, m);
        out.periodic_orders = Some(orders);
        let (mut pa, mut pb) = (Powers::new(&a.rebased), Powers::new(&b.rebased));
        for c in 1..=k as i64 {
            for d in 1..=m as i64 {
                let cert = conjugate_periodic(&pa.get(c).clone(), pb.get(d), budget)?;
                if let Some(rho) = cert.conjugator {
                    periodic.push((c, d, rho));
                }
            }
        }
        if dp.infinite.is_some() {
            periodic.push((0, 0, Automorphism::identity(a.rebased.sig())));
        }
    }
    let assemble = |theta_p: Option<&Automorphism>, theta_ri: Option<&Automorphism>| -> Result<Automorphism> {
        let mut pairs = Vec::new();
        if let (Some(a), Some(b), Some(t)) = (&dp.periodic, &df.periodic, theta_p) {
            pairs.extend(stitch(a, b, t));
        }
        if let (Some(a), Some(b), Some(t)) = (&dp.infinite, &df.infinite, theta_ri) {
            pairs.extend(stitch(a, b, t));
        }
        Automorphism::from_map(sig, pairs)
    };
    let (mut pp, mut pf) = (Powers::new(psi), Powers::new(phi));
    let mut verified = |a: i64, b: i64, rho: &Automorphism| -> Result<bool> {
        budget.tick()?;
        let lhs = pp.get(a).conjugate_by(rho);
        Ok(lhs == *pf.get(b))
    };
    match (dp.periodic.is_some(), dp.infinite.is_some()) {
        (false, _) => {
            for (a, b, theta) in &ri {
                let rho = assemble(None, Some(theta))?;
                if verified(*a, *b, &rho)? {
                    out.pairs.push(PowerPair { a: *a, b: *b, g: None, conjugator: rho });
                }
            }
        }
        (true, false) => {
            for (c, d, theta) in &periodic {
                let rho = assemble(Some(theta), None)?;
                if verified(*c, *d, &rho)? {
                    out.pairs.push(PowerPair { a: *c, b: *d, g: None, conjugator: rho });
                }
            }
        }
        (true, true) => {
            let (k, m) = (orders.0 as i64, orders.1 as i64);
            let l = lcm(orders.0, orders.1);
            let mut seen = BTreeSet::new();
            for (alpha, beta, theta_ri) in &ri {
                for (c, d, theta_p) in &periodic {
                    for g in 1..=l {
                        let gi = g as i64;
                        if (alpha * gi - c).rem_euclid(k) != 0 || (beta * gi - d).rem_euclid(m) != 0 {
                            continue;
                        }
                        let key = (alpha * gi, beta * gi, g);
                        if seen.contains(&key) {
                            continue;
                        }
                        let rho = assemble(Some(theta_p), Some(theta_ri))?;
                        if verified(key.0, key.1, &rho)? {
                            seen.insert(key);
                            out.pairs.push(PowerPair {
                                a: key.0,
                                b: key.1,
                                g: Some(g),
                                conjugator: rho,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
