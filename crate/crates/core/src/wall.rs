//! Domain walls in the Z_p toric code, used as an independent model of the
//! same multiplication table.
//!
//! A wall is either a pair of gapped boundaries facing each other across a
//! strip of vacuum, or an invertible relabelling of the anyons `e^a m^b`.
//! Stacking walls is computed purely from this data; nothing here consults
//! the ladder engine.

use std::fmt;
use std::sync::OnceLock;

use crate::bimodule::BimoduleLabel;
use crate::error::{Error, Result};
use crate::fusion::Decomposition;
use crate::group::inv_mod;
use crate::ring::RingTable;
use crate::scalar::ensure_prime;

/// Which anyons a gapped boundary condenses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryType {
    /// Rough: condenses `e`.
    ECondensing,
    /// Smooth: condenses `m`.
    MCondensing,
}

impl BoundaryType {
    fn flipped(self) -> Self {
        match self {
            Self::ECondensing => Self::MCondensing,
            Self::MCondensing => Self::ECondensing,
        }
    }
}

impl fmt::Display for BoundaryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ECondensing => "e",
            Self::MCondensing => "m",
        })
    }
}

/// A linear automorphism of Z_p² acting on anyon labels `(a, b) ~ e^a m^b`:
/// `(a, b) ↦ (m[0][0]·a + m[0][1]·b, m[1][0]·a + m[1][1]·b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AnyonMap {
    pub p: u32,
    pub m: [[u32; 2]; 2],
}

impl AnyonMap {
    pub fn new(p: u32, m: [[i64; 2]; 2]) -> Self {
        let r = |x: i64| x.rem_euclid(p as i64) as u32;
        Self { p, m: [[r(m[0][0]), r(m[0][1])], [r(m[1][0]), r(m[1][1])]] }
    }

    pub fn apply(&self, (a, b): (u32, u32)) -> (u32, u32) {
        let p = self.p as u64;
        let (a, b) = (a as u64, b as u64);
        let x = (self.m[0][0] as u64 * a + self.m[0][1] as u64 * b) % p;
        let y = (self.m[1][0] as u64 * a + self.m[1][1] as u64 * b) % p;
        (x as u32, y as u32)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AnyonMap) -> AnyonMap {
        let p = self.p as u64;
        let mut m = [[0u32; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let v = (0..2).map(|k| self.m[i][k] as u64 * other.m[k][j] as u64).sum::<u64>() % p;
                *cell = v as u32;
            }
        }
        AnyonMap { p: self.p, m }
    }

    pub fn det(&self) -> u32 {
        let p = self.p as u64;
        let ad = self.m[0][0] as u64 * self.m[1][1] as u64 % p;
        let bc = self.m[0][1] as u64 * self.m[1][0] as u64 % p;
        ((ad + p - bc) % p) as u32
    }

    pub fn is_bijective(&self) -> bool {
        self.det() != 0
    }

    /// Whether `e` is sent into the `e` sector (`Some(false)`), into the `m`
    /// sector (`Some(true)`), or neither.
    pub fn swaps_sectors(&self) -> Option<bool> {
        match self.apply((1, 0)) {
            (x, 0) if x != 0 => Some(false),
            (0, y) if y != 0 => Some(true),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WallModel {
    BoundaryPair { left: BoundaryType, right: BoundaryType },
    Invertible(AnyonMap),
}

/// How the invertible walls are turned into maps and composed when stacked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StackingConvention {
    /// `F_q` is `F_1 ∘ X_q` when true, `X_q ∘ F_1` otherwise.
    pub f_is_swap_after_x: bool,
    /// Stacking `w1` to the left of `w2` gives `w1 ∘ w2` when true, `w2 ∘ w1` otherwise.
    pub left_wall_applied_last: bool,
}

impl StackingConvention {
    pub const ALL: [StackingConvention; 4] = [
        Self { f_is_swap_after_x: true, left_wall_applied_last: true },
        Self { f_is_swap_after_x: true, left_wall_applied_last: false },
        Self { f_is_swap_after_x: false, left_wall_applied_last: true },
        Self { f_is_swap_after_x: false, left_wall_applied_last: false },
    ];
}

impl fmt::Display for StackingConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fq = if self.f_is_swap_after_x { "F_q = F_1∘X_q" } else { "F_q = X_q∘F_1" };
        let st = if self.left_wall_applied_last { "w1⊗w2 ↦ w1∘w2" } else { "w1⊗w2 ↦ w2∘w1" };
        write!(f, "{fq}, {st}")
    }
}

/// The wall model at a fixed prime under a fixed convention.
#[derive(Clone, Copy, Debug)]
pub struct WallOracle {
    pub p: u32,
    pub convention: StackingConvention,
}

impl WallOracle {
    pub fn new(p: u32, convention: StackingConvention) -> Result<Self> {
        ensure_prime(p)?;
        Ok(Self { p, convention })
    }

    fn x_map(&self, k: u32) -> AnyonMap {
        let kinv = inv_mod(k, self.p).expect("nonzero index");
        AnyonMap::new(self.p, [[k as i64, 0], [0, kinv as i64]])
    }

    fn swap(&self) -> AnyonMap {
        AnyonMap::new(self.p, [[0, 1], [1, 0]])
    }

    pub fn wall_of(&self, label: BimoduleLabel) -> WallModel {
        use BimoduleLabel::*;
        use BoundaryType::{ECondensing as E, MCondensing as M};
        match label {
            T => WallModel::BoundaryPair { left: E, right: E },
            L => WallModel::BoundaryPair { left: M, right: E },
            R => WallModel::BoundaryPair { left: E, right: M },
            F(0) => WallModel::BoundaryPair { left: M, right: M },
            X(k) => WallModel::Invertible(self.x_map(k)),
            F(q) => {
                let (s, x) = (self.swap(), self.x_map(q));
                WallModel::Invertible(if self.convention.f_is_swap_after_x { s.compose(&x) } else { x.compose(&s) })
            }
        }
    }

    /// Inverse of [`WallOracle::wall_of`] on invertible walls.
    pub fn label_of_map(&self, map: &AnyonMap) -> Result<BimoduleLabel> {
        let p = self.p;
        let [[a, b], [c, d]] = map.m;
        let unit = |x: u32, y: u32| x as u64 * y as u64 % p as u64 == 1;
        if b == 0 && c == 0 && unit(a, d) {
            return Ok(BimoduleLabel::X(a));
        }
        if a == 0 && d == 0 && unit(b, c) {
            let q = if self.convention.f_is_swap_after_x { c } else { b };
            return Ok(BimoduleLabel::F(q));
        }
        Err(Error::Oracle(format!("anyon map {:?} is not a wall of the catalogue", map.m)))
    }

    pub fn fuse_walls(&self, w1: &WallModel, w2: &WallModel) -> Result<Decomposition> {
        use WallModel::*;
        let boundary = |l: BoundaryType, r: BoundaryType| -> BimoduleLabel {
            use BoundaryType::{ECondensing as E, MCondensing as M};
            match (l, r) {
                (E, E) => BimoduleLabel::T,
                (M, E) => BimoduleLabel::L,
                (E, M) => BimoduleLabel::R,
                (M, M) => BimoduleLabel::F(0),
            }
        };
        let transport = |map: &AnyonMap, face: BoundaryType| -> Result<BoundaryType> {
            match map.swaps_sectors() {
                Some(true) => Ok(face.flipped()),
                Some(false) => Ok(face),
                None => Err(Error::Oracle(format!("anyon map {:?} mixes the e and m sectors", map.m))),
            }
        };
        match (w1, w2) {
            (BoundaryPair { left: l1, right: r1 }, BoundaryPair { left: l2, right: r2 }) => {
                // the trapped strip carries p states when both of its faces condense the same anyon
                let mult = if r1 == l2 { self.p as usize } else { 1 };
                Ok(Decomposition::single(boundary(*l1, *r2), mult))
            }
            (Invertible(map), BoundaryPair { left, right }) => {
                Ok(Decomposition::single(boundary(transport(map, *left)?, *right), 1))
            }
            (BoundaryPair { left, right }, Invertible(map)) => {
                Ok(Decomposition::single(boundary(*left, transport(map, *right)?), 1))
            }
            (Invertible(a), Invertible(b)) => {
                let c = if self.convention.left_wall_applied_last { a.compose(b) } else { b.compose(a) };
                Ok(Decomposition::single(self.label_of_map(&c)?, 1))
            }
        }
    }

    pub fn fuse(&self, a: BimoduleLabel, b: BimoduleLabel) -> Result<Decomposition> {
        self.fuse_walls(&self.wall_of(a), &self.wall_of(b))
    }

    pub fn table(&self) -> Result<RingTable> {
        let mut err = None;
        let t = RingTable::from_products(self.p, |a, b| {
            self.fuse(a, b).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Decomposition::default()
            })
        });
        err.map_or(Ok(t), Err)
    }

    /// Whether the invertible products agree with the target rules
    /// `F_q ⊗ F_r = X_{q⁻¹r}` and `F_q ⊗ X_l = F_{ql}`.
    pub fn meets_calibration_targets(&self) -> bool {
        let p = self.p;
        let inv = |a: u32| inv_mod(a, p).expect("nonzero");
        (1..p).all(|q| {
            (1..p).all(|r| {
                let ff = self.fuse(BimoduleLabel::F(q), BimoduleLabel::F(r)).ok();
                let fx = self.fuse(BimoduleLabel::F(q), BimoduleLabel::X(r)).ok();
                ff == Some(Decomposition::single(BimoduleLabel::X(inv(q) * r % p), 1))
                    && fx == Some(Decomposition::single(BimoduleLabel::F(q * r % p), 1))
            })
        })
    }
}

/// Prime used to pin the stacking convention.
pub const CALIBRATION_PRIME: u32 = 5;

/// The first convention in [`StackingConvention::ALL`] that reproduces the
/// invertible products at [`CALIBRATION_PRIME`]. Computed once.
pub fn calibrate() -> Result<StackingConvention> {
    static FROZEN: OnceLock<Option<StackingConvention>> = OnceLock::new();
    FROZEN
        .get_or_init(|| {
            StackingConvention::ALL
                .into_iter()
                .find(|&c| WallOracle::new(CALIBRATION_PRIME, c).is_ok_and(|o| o.meets_calibration_targets()))
        })
        .ok_or_else(|| Error::Oracle("no stacking convention reproduces the invertible products".into()))
}

pub fn wall_of(p: u32, label: BimoduleLabel) -> Result<WallModel> {
    Ok(WallOracle::new(p, calibrate()?)?.wall_of(label))
}

pub fn fuse_walls(p: u32, w1: &WallModel, w2: &WallModel) -> Result<Decomposition> {
    WallOracle::new(p, calibrate()?)?.fuse_walls(w1, w2)
}

/// The full table from wall stacking under the calibrated convention.
pub fn oracle_table(p: u32) -> Result<RingTable> {
    WallOracle::new(p, calibrate()?)?.table()
}

/// Bilinear and quadratic forms on anyon labels, as exponents of ζ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `⟨e^a m^b, e^c m^d⟩ = ζ^{ad − bc}`
    Antisymmetric,
    /// `⟨e^a m^b, e^c m^d⟩ = ζ^{ad + bc}`
    Symmetric,
    /// `θ(e^a m^b) = ζ^{ab}`, compared pointwise on the first argument.
    Spin,
}

impl Pairing {
    pub fn exponent(self, p: u32, (a, b): (u32, u32), (c, d): (u32, u32)) -> u32 {
        let p64 = p as u64;
        let (a, b, c, d) = (a as u64, b as u64, c as u64, d as u64);
        let v = match self {
            Self::Antisymmetric => (a * d % p64 + p64 - b * c % p64) % p64,
            Self::Symmetric => (a * d + b * c) % p64,
            Self::Spin => a * b % p64,
        };
        v as u32
    }
}

/// A wall and two anyons whose pairing it changes.
pub type Violation = (BimoduleLabel, (u32, u32), (u32, u32));

/// Every (wall, x, y) with `⟨w(x), w(y)⟩ ≠ ⟨x, y⟩` over the invertible walls.
pub fn pairing_violations(oracle: &WallOracle, pairing: Pairing) -> Vec<Violation> {
    let p = oracle.p;
    let labels: Vec<(u32, u32)> = (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for label in BimoduleLabel::basis(p).into_iter().filter(|l| l.is_invertible()) {
        let WallModel::Invertible(map) = oracle.wall_of(label) else { continue };
        for &x in &labels {
            for &y in &labels {
                if pairing.exponent(p, map.apply(x), map.apply(y)) != pairing.exponent(p, x, y) {
                    out.push((label, x, y));
                }
            }
        }
    }
    out
}
