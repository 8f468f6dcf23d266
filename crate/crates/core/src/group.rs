//! Z_p and Z_p × Z_p: elements, subgroups, cosets and the bilinear 2-cocycles.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::CyclotomicScalar;

/// Multiplicative inverse of `a` modulo the prime `p`; `None` for `a ≡ 0`.
pub fn inv_mod(a: u32, p: u32) -> Option<u32> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // Fermat: a^(p-2)
    let (mut base, mut e, mut acc) = (a as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    Some(acc as u32)
}

pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZpElt {
    p: u32,
    value: u32,
}

impl ZpElt {
    pub fn new(p: u32, value: i64) -> Self {
        Self { p, value: reduce(value, p) }
    }

    pub fn zero(p: u32) -> Self {
        Self { p, value: 0 }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn scale(self, k: u32) -> Self {
        Self { p: self.p, value: ((self.value as u64 * k as u64) % self.p as u64) as u32 }
    }

    pub fn inverse(self) -> Option<Self> {
        inv_mod(self.value, self.p).map(|v| Self { p: self.p, value: v })
    }

    pub fn all(p: u32) -> impl Iterator<Item = ZpElt> {
        (0..p).map(move |v| ZpElt { p, value: v })
    }
}

impl Add for ZpElt {
    type Output = ZpElt;
    fn add(self, rhs: ZpElt) -> ZpElt {
        debug_assert_eq!(self.p, rhs.p);
        ZpElt { p: self.p, value: (self.value + rhs.value) % self.p }
    }
}

impl Neg for ZpElt {
    type Output = ZpElt;
    fn neg(self) -> ZpElt {
        ZpElt { p: self.p, value: (self.p - self.value) % self.p }
    }
}

impl Sub for ZpElt {
    type Output = ZpElt;
    fn sub(self, rhs: ZpElt) -> ZpElt {
        self + (-rhs)
    }
}

impl fmt::Display for ZpElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An element `(g, h)` of Z_p × Z_p. Ordering is lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairElt {
    pub left: ZpElt,
    pub right: ZpElt,
}

impl PairElt {
    pub fn new(p: u32, left: i64, right: i64) -> Self {
        Self { left: ZpElt::new(p, left), right: ZpElt::new(p, right) }
    }

    pub fn zero(p: u32) -> Self {
        Self::new(p, 0, 0)
    }

    pub fn p(self) -> u32 {
        self.left.p()
    }

    pub fn is_zero(self) -> bool {
        self.left.value() == 0 && self.right.value() == 0
    }

    pub fn scale(self, k: u32) -> Self {
        Self { left: self.left.scale(k), right: self.right.scale(k) }
    }

    /// Rescales so the first nonzero coordinate is 1. Zero stays zero.
    pub fn normalized(self) -> Self {
        let lead = if self.left.value() != 0 { self.left } else { self.right };
        match lead.inverse() {
            Some(inv) => self.scale(inv.value()),
            None => self,
        }
    }

    pub fn all(p: u32) -> impl Iterator<Item = PairElt> {
        (0..p).flat_map(move |a| (0..p).map(move |b| PairElt::new(p, a as i64, b as i64)))
    }
}

impl Add for PairElt {
    type Output = PairElt;
    fn add(self, rhs: PairElt) -> PairElt {
        PairElt { left: self.left + rhs.left, right: self.right + rhs.right }
    }
}

impl Neg for PairElt {
    type Output = PairElt;
    fn neg(self) -> PairElt {
        PairElt { left: -self.left, right: -self.right }
    }
}

impl fmt::Display for PairElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubgroupKind {
    Trivial,
    /// The cyclic subgroup spanned by a normalized generator.
    Line(PairElt),
    Full,
}

/// A subgroup of Z_p × Z_p. For p prime these are the trivial group, the
/// p + 1 lines through the origin, and the whole group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    p: u32,
    kind: SubgroupKind,
}

impl Subgroup {
    pub fn trivial(p: u32) -> Self {
        Self { p, kind: SubgroupKind::Trivial }
    }

    pub fn full(p: u32) -> Self {
        Self { p, kind: SubgroupKind::Full }
    }

    /// The line spanned by a nonzero element.
    pub fn line(generator: PairElt) -> Self {
        assert!(!generator.is_zero(), "a line needs a nonzero generator");
        Self { p: generator.p(), kind: SubgroupKind::Line(generator.normalized()) }
    }

    /// Smallest subgroup containing `gens`.
    pub fn from_generators(p: u32, gens: &[PairElt]) -> Self {
        let closure = closure(p, gens);
        match closure.len() {
            1 => Self::trivial(p),
            n if n == p as usize => {
                let g = *closure.iter().find(|x| !x.is_zero()).expect("nonzero element");
                Self::line(g)
            }
            n => {
                debug_assert_eq!(n, (p * p) as usize);
                Self::full(p)
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        match self.kind {
            SubgroupKind::Trivial => 1,
            SubgroupKind::Line(_) => self.p as usize,
            SubgroupKind::Full => (self.p * self.p) as usize,
        }
    }

    pub fn elements(&self) -> Vec<PairElt> {
        match self.kind {
            SubgroupKind::Trivial => vec![PairElt::zero(self.p)],
            SubgroupKind::Line(g) => {
                let mut v: Vec<_> = (0..self.p).map(|k| g.scale(k)).collect();
                v.sort();
                v
            }
            SubgroupKind::Full => PairElt::all(self.p).collect(),
        }
    }

    pub fn contains(&self, x: PairElt) -> bool {
        match self.kind {
            SubgroupKind::Trivial => x.is_zero(),
            SubgroupKind::Line(g) => x.is_zero() || x.normalized() == g,
            SubgroupKind::Full => true,
        }
    }

    /// Brute-force closure check under addition and negation.
    pub fn is_closed(&self) -> bool {
        let els = self.elements();
        els.iter().all(|&a| self.contains(-a) && els.iter().all(|&b| self.contains(a + b)))
    }

    /// Lexicographically least representative of `x + H`.
    pub fn coset_rep(&self, x: PairElt) -> PairElt {
        self.elements().into_iter().map(|h| x + h).min().expect("subgroup is nonempty")
    }

    /// One representative per coset, each the lexicographically least member,
    /// listed in increasing order.
    pub fn cosets(&self) -> Vec<PairElt> {
        let reps: BTreeSet<PairElt> = PairElt::all(self.p).map(|x| self.coset_rep(x)).collect();
        reps.into_iter().collect()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SubgroupKind::Trivial => write!(f, "{{(0,0)}}"),
            SubgroupKind::Line(g) => write!(f, "<{g}>"),
            SubgroupKind::Full => write!(f, "Z_{p} x Z_{p}", p = self.p),
        }
    }
}

fn closure(p: u32, gens: &[PairElt]) -> BTreeSet<PairElt> {
    let mut set: BTreeSet<PairElt> = BTreeSet::from([PairElt::zero(p)]);
    let mut frontier = vec![PairElt::zero(p)];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = x + g;
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// All subgroups of Z_p × Z_p: trivial, the p + 1 lines ordered by their
/// normalized generator, then the full group.
pub fn enumerate_subgroups(p: u32) -> Vec<Subgroup> {
    let mut out = vec![Subgroup::trivial(p)];
    out.push(Subgroup::line(PairElt::new(p, 0, 1)));
    for c in 0..p {
        out.push(Subgroup::line(PairElt::new(p, 1, c as i64)));
    }
    out.push(Subgroup::full(p));
    out
}

/// Class `q` in Z_p, represented by the bilinear cocycle
/// `ω((g₁,h₁),(g₂,h₂)) = ζ^{q·h₁·g₂}` on Z_p × Z_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CocycleClass {
    pub p: u32,
    pub q: u32,
}

impl CocycleClass {
    pub fn new(p: u32, q: i64) -> Self {
        Self { p, q: reduce(q, p) }
    }

    pub fn trivial(p: u32) -> Self {
        Self { p, q: 0 }
    }

    pub fn exponent(&self, x: PairElt, y: PairElt) -> u32 {
        let e = self.q as u64 * x.right.value() as u64 * y.left.value() as u64;
        (e % self.p as u64) as u32
    }

    pub fn phase(&self, x: PairElt, y: PairElt) -> CyclotomicScalar {
        CyclotomicScalar::zeta_pow(self.p, self.exponent(x, y) as i64)
    }
}

pub fn cocycle_phase(c: CocycleClass, x: PairElt, y: PairElt) -> CyclotomicScalar {
    c.phase(x, y)
}
