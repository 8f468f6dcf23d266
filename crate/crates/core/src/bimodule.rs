//! Vec(Z_p)–Vec(Z_p) bimodule categories and the catalogue of indecomposables.
//!
//! A bimodule here is pointed and multiplicity free: a finite set of simple
//! objects, a left and a right Z_p action on that set, and three families of
//! scalar associators
//!
//! * `L(g, h, m)`: `g ▷ (h ▷ m) → (g + h) ▷ m`
//! * `C(g, m, h)`: `g ▷ (m ◁ h) → (g ▷ m) ◁ h`
//! * `R(m, g, h)`: `(m ◁ g) ◁ h → m ◁ (g + h)`

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{inv_mod, reduce, CocycleClass, PairElt, Subgroup};
use crate::scalar::{ensure_prime, CyclotomicScalar};

/// Name of an indecomposable bimodule.
///
/// `F(q)` carries `q` in `0..p`, `X(k)` carries `k` in `1..p`. Ordering
/// follows the basis order T, L, R, F0, X1, …, F1, … and does not depend on p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BimoduleLabel {
    T,
    L,
    R,
    F(u32),
    X(u32),
}

impl BimoduleLabel {
    /// All 2p + 2 labels in basis order.
    pub fn basis(p: u32) -> Vec<BimoduleLabel> {
        let mut out = vec![Self::T, Self::L, Self::R, Self::F(0)];
        out.extend((1..p).map(Self::X));
        out.extend((1..p).map(Self::F));
        out
    }

    /// Position in [`BimoduleLabel::basis`].
    pub fn index(self, p: u32) -> usize {
        match self {
            Self::T => 0,
            Self::L => 1,
            Self::R => 2,
            Self::F(0) => 3,
            Self::X(k) => 3 + k as usize,
            Self::F(q) => (p + 2 + q) as usize,
        }
    }

    fn sort_key(self) -> (u8, u32) {
        match self {
            Self::T => (0, 0),
            Self::L => (1, 0),
            Self::R => (2, 0),
            Self::F(0) => (3, 0),
            Self::X(k) => (4, k),
            Self::F(q) => (5, q),
        }
    }

    /// Number of simple objects.
    pub fn simple_count(self, p: u32) -> usize {
        match self {
            Self::T => (p * p) as usize,
            Self::L | Self::R | Self::X(_) => p as usize,
            Self::F(_) => 1,
        }
    }

    pub fn is_invertible(self) -> bool {
        match self {
            Self::X(_) => true,
            Self::F(q) => q != 0,
            _ => false,
        }
    }

    /// Parses and checks the index against `p`.
    pub fn parse_for(text: &str, p: u32) -> Result<Self> {
        let label: Self = text.parse()?;
        match label {
            Self::F(q) | Self::X(q) if q >= p => {
                Err(Error::Parse(format!("label {text} has index out of range for p = {p}")))
            }
            _ => Ok(label),
        }
    }
}

impl PartialOrd for BimoduleLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BimoduleLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for BimoduleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::T => write!(f, "T"),
            Self::L => write!(f, "L"),
            Self::R => write!(f, "R"),
            Self::F(q) => write!(f, "F{q}"),
            Self::X(k) => write!(f, "X{k}"),
        }
    }
}

impl FromStr for BimoduleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed bimodule label {s:?}"));
        match s {
            "T" => return Ok(Self::T),
            "L" => return Ok(Self::L),
            "R" => return Ok(Self::R),
            _ => {}
        }
        let (head, digits) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: u32 = digits.parse().map_err(|_| bad())?;
        match head {
            "F" => Ok(Self::F(n)),
            "X" if n == 0 => Err(Error::Parse(format!("{s}: invertible index must be nonzero"))),
            "X" => Ok(Self::X(n)),
            _ => Err(bad()),
        }
    }
}

/// A pointed bimodule with dense action and associator tables.
///
/// Objects are indices `0..simples.len()`. Group elements are passed as
/// values in `0..p`.
#[derive(Clone, Debug)]
pub struct BimoduleData {
    pub p: u32,
    pub label: Option<BimoduleLabel>,
    pub subgroup: Subgroup,
    pub cocycle: CocycleClass,
    /// Coset representative behind each object.
    pub simples: Vec<PairElt>,
    pub object_names: Vec<String>,
    /// `left_act[g][m] = g ▷ m`
    pub left_act: Vec<Vec<usize>>,
    /// `right_act[m][h] = m ◁ h`
    pub right_act: Vec<Vec<usize>>,
    /// Indexed `(g * p + h) * n + m`.
    pub left_assoc: Vec<CyclotomicScalar>,
    /// Indexed `(g * n + m) * p + h`.
    pub mixed_assoc: Vec<CyclotomicScalar>,
    /// Indexed `(m * p + g) * p + h`.
    pub right_assoc: Vec<CyclotomicScalar>,
}

impl BimoduleData {
    /// Builds a bimodule with trivial `L` and `R` and `C(g, m, h) = ζ^{c(g, m, h)}`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_actions(
        p: u32,
        label: Option<BimoduleLabel>,
        subgroup: Subgroup,
        cocycle: CocycleClass,
        simples: Vec<PairElt>,
        object_names: Vec<String>,
        left_act: Vec<Vec<usize>>,
        right_act: Vec<Vec<usize>>,
        mixed_exponent: impl Fn(u32, usize, u32) -> i64,
    ) -> Self {
        let n = simples.len();
        let pp = p as usize;
        let one = CyclotomicScalar::one(p);
        let mut mixed_assoc = Vec::with_capacity(pp * n * pp);
        for g in 0..p {
            for m in 0..n {
                for h in 0..p {
                    mixed_assoc.push(CyclotomicScalar::zeta_pow(p, mixed_exponent(g, m, h)));
                }
            }
        }
        Self {
            p,
            label,
            subgroup,
            cocycle,
            simples,
            object_names,
            left_act,
            right_act,
            left_assoc: vec![one.clone(); pp * pp * n],
            mixed_assoc,
            right_assoc: vec![one; n * pp * pp],
        }
    }

    pub fn object_count(&self) -> usize {
        self.simples.len()
    }

    pub fn left(&self, g: u32, m: usize) -> usize {
        self.left_act[g as usize][m]
    }

    pub fn right(&self, m: usize, h: u32) -> usize {
        self.right_act[m][h as usize]
    }

    pub fn l_assoc(&self, g: u32, h: u32, m: usize) -> &CyclotomicScalar {
        let (p, n) = (self.p as usize, self.object_count());
        &self.left_assoc[(g as usize * p + h as usize) * n + m]
    }

    pub fn c_assoc(&self, g: u32, m: usize, h: u32) -> &CyclotomicScalar {
        let (p, n) = (self.p as usize, self.object_count());
        &self.mixed_assoc[(g as usize * n + m) * p + h as usize]
    }

    pub fn r_assoc(&self, m: usize, g: u32, h: u32) -> &CyclotomicScalar {
        let p = self.p as usize;
        &self.right_assoc[(m * p + g as usize) * p + h as usize]
    }

    pub fn l_index(&self, g: u32, h: u32, m: usize) -> usize {
        (g as usize * self.p as usize + h as usize) * self.object_count() + m
    }

    pub fn c_index(&self, g: u32, m: usize, h: u32) -> usize {
        (g as usize * self.object_count() + m) * self.p as usize + h as usize
    }

    pub fn r_index(&self, m: usize, g: u32, h: u32) -> usize {
        let p = self.p as usize;
        (m * p + g as usize) * p + h as usize
    }

    /// `{(g, h) : g ▷ m ◁ h = m}` computed by brute force.
    pub fn stabilizer(&self, m: usize) -> Subgroup {
        let gens: Vec<PairElt> =
            PairElt::all(self.p).filter(|x| self.right(self.left(x.left.value(), m), x.right.value()) == m).collect();
        Subgroup::from_generators(self.p, &gens)
    }

    /// Exponent of `C(g, m, h)` when it is a root of unity.
    pub fn mixed_exponent(&self, g: u32, m: usize, h: u32) -> Option<u32> {
        self.c_assoc(g, m, h).phase_exponent()
    }

    /// The same bimodule after rescaling the chosen basis vectors of
    /// `g ▷ m` by `alpha(g, m)` and of `m ◁ h` by `beta(m, h)`. Both must be
    /// nonzero and equal to 1 when the group element is 0.
    pub fn gauge_transformed(
        &self,
        alpha: impl Fn(u32, usize) -> CyclotomicScalar,
        beta: impl Fn(usize, u32) -> CyclotomicScalar,
    ) -> Self {
        let p = self.p;
        let n = self.object_count();
        let add = |a: u32, b: u32| (a + b) % p;
        let mut out = self.clone();
        out.label = None;
        for g in 0..p {
            for h in 0..p {
                for m in 0..n {
                    let num = alpha(add(g, h), m);
                    let den = alpha(g, self.left(h, m)) * alpha(h, m);
                    let i = self.l_index(g, h, m);
                    out.left_assoc[i] = &self.left_assoc[i] * &(num * den.inv().expect("nonzero gauge"));

                    let num = beta(m, add(g, h));
                    let den = beta(m, g) * beta(self.right(m, g), h);
                    let i = self.r_index(m, g, h);
                    out.right_assoc[i] = &self.right_assoc[i] * &(num * den.inv().expect("nonzero gauge"));
                }
            }
        }
        for g in 0..p {
            for m in 0..n {
                for h in 0..p {
                    let num = alpha(g, m) * beta(self.left(g, m), h);
                    let den = alpha(g, self.right(m, h)) * beta(m, h);
                    let i = self.c_index(g, m, h);
                    out.mixed_assoc[i] = &self.mixed_assoc[i] * &(num * den.inv().expect("nonzero gauge"));
                }
            }
        }
        out
    }

    /// Checks every coherence condition exhaustively. An empty list means the
    /// data defines a bimodule.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let p = self.p;
        let n = self.object_count();
        let add = |a: u32, b: u32| (a + b) % p;

        if self.object_names.len() != n {
            out.push(format!("{} object names for {n} objects", self.object_names.len()));
        }
        if self.left_act.len() != p as usize || self.left_act.iter().any(|row| row.len() != n) {
            out.push("left action table has the wrong shape".into());
            return out;
        }
        if self.right_act.len() != n || self.right_act.iter().any(|row| row.len() != p as usize) {
            out.push("right action table has the wrong shape".into());
            return out;
        }
        let pp = p as usize;
        for (name, len) in
            [("left", self.left_assoc.len()), ("mixed", self.mixed_assoc.len()), ("right", self.right_assoc.len())]
        {
            if len != pp * pp * n {
                out.push(format!("{name} associator table has length {len}, expected {}", pp * pp * n));
                return out;
            }
        }
        if self.left_act.iter().flatten().chain(self.right_act.iter().flatten()).any(|&m| m >= n) {
            out.push("action table refers to a nonexistent object".into());
            return out;
        }

        for m in 0..n {
            if self.left(0, m) != m {
                out.push(format!("left action of 0 moves object {m}"));
            }
            if self.right(m, 0) != m {
                out.push(format!("right action of 0 moves object {m}"));
            }
            for g in 0..p {
                for h in 0..p {
                    if self.left(g, self.left(h, m)) != self.left(add(g, h), m) {
                        out.push(format!("left action is not an action at g={g}, h={h}, m={m}"));
                    }
                    if self.right(self.right(m, g), h) != self.right(m, add(g, h)) {
                        out.push(format!("right action is not an action at m={m}, g={g}, h={h}"));
                    }
                    if self.left(g, self.right(m, h)) != self.right(self.left(g, m), h) {
                        out.push(format!("actions do not commute at g={g}, m={m}, h={h}"));
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }

        for (name, table) in [("L", &self.left_assoc), ("C", &self.mixed_assoc), ("R", &self.right_assoc)] {
            if let Some(i) = table.iter().position(CyclotomicScalar::is_zero) {
                out.push(format!("{name} associator vanishes at flat index {i}"));
            }
        }
        for m in 0..n {
            for g in 0..p {
                let units = [
                    ("L(0,g,m)", self.l_assoc(0, g, m)),
                    ("L(g,0,m)", self.l_assoc(g, 0, m)),
                    ("R(m,0,g)", self.r_assoc(m, 0, g)),
                    ("R(m,g,0)", self.r_assoc(m, g, 0)),
                    ("C(0,m,g)", self.c_assoc(0, m, g)),
                    ("C(g,m,0)", self.c_assoc(g, m, 0)),
                ];
                for (what, v) in units {
                    if !v.is_one() {
                        out.push(format!("{what} is not 1 at g={g}, m={m}"));
                    }
                }
            }
        }

        for m in 0..n {
            for g1 in 0..p {
                for g2 in 0..p {
                    for g3 in 0..p {
                        let lhs = self.l_assoc(g2, g3, m) * self.l_assoc(g1, add(g2, g3), m);
                        let rhs = self.l_assoc(g1, g2, self.left(g3, m)) * self.l_assoc(add(g1, g2), g3, m);
                        if lhs != rhs {
                            out.push(format!("left pentagon fails at ({g1},{g2},{g3}), m={m}"));
                        }
                        let (h1, h2, h3) = (g1, g2, g3);
                        let lhs = self.r_assoc(m, h1, h2) * self.r_assoc(m, add(h1, h2), h3);
                        let rhs = self.r_assoc(self.right(m, h1), h2, h3) * self.r_assoc(m, h1, add(h2, h3));
                        if lhs != rhs {
                            out.push(format!("right pentagon fails at m={m}, ({h1},{h2},{h3})"));
                        }
                    }
                }
            }
        }

        for m in 0..n {
            for a in 0..p {
                for b in 0..p {
                    for h in 0..p {
                        // left-middle compatibility with g1 = a, g2 = b
                        let lhs = self.l_assoc(a, b, self.right(m, h)) * self.c_assoc(add(a, b), m, h);
                        let rhs = self.c_assoc(b, m, h) * self.c_assoc(a, self.left(b, m), h) * self.l_assoc(a, b, m);
                        if lhs != rhs {
                            out.push(format!("left-middle compatibility fails at g=({a},{b}), m={m}, h={h}"));
                        }
                        // middle-right compatibility with g = h, h1 = a, h2 = b
                        let g = h;
                        let lhs = self.r_assoc(m, a, b) * self.c_assoc(g, m, add(a, b));
                        let rhs = self.c_assoc(g, self.right(m, a), b)
                            * self.c_assoc(g, m, a)
                            * self.r_assoc(self.left(g, m), a, b);
                        if lhs != rhs {
                            out.push(format!("middle-right compatibility fails at g={g}, m={m}, h=({a},{b})"));
                        }
                    }
                }
            }
        }
        out
    }
}

/// All 2p + 2 indecomposable bimodules in basis order.
pub fn catalogue(p: u32) -> Result<Vec<BimoduleData>> {
    ensure_prime(p)?;
    Ok(BimoduleLabel::basis(p).into_iter().map(|l| entry(p, l)).collect())
}

/// The catalogue entry for one label; the label must be valid for `p`.
pub fn entry(p: u32, label: BimoduleLabel) -> BimoduleData {
    let pi = p as i64;
    let r = |x: i64| reduce(x, p) as usize;
    let line = |a: i64, b: i64| Subgroup::line(PairElt::new(p, a, b));
    let trivial_c = |_: u32, _: usize, _: u32| 0i64;

    match label {
        BimoduleLabel::T => {
            let n = (p * p) as usize;
            let obj = |a: i64, b: i64| r(a) * p as usize + r(b);
            let simples: Vec<PairElt> = PairElt::all(p).collect();
            let names = simples.iter().map(|x| x.to_string()).collect();
            let left = (0..pi).map(|g| (0..n).map(|m| obj(m as i64 / pi + g, m as i64 % pi)).collect()).collect();
            let right = (0..n).map(|m| (0..pi).map(|g| obj(m as i64 / pi, m as i64 % pi + g)).collect()).collect();
            BimoduleData::from_actions(
                p,
                Some(label),
                Subgroup::trivial(p),
                CocycleClass::trivial(p),
                simples,
                names,
                left,
                right,
                trivial_c,
            )
        }
        BimoduleLabel::L | BimoduleLabel::R => {
            let is_l = label == BimoduleLabel::L;
            let simples = (0..pi).map(|g| if is_l { PairElt::new(p, 0, g) } else { PairElt::new(p, g, 0) }).collect();
            let names = (0..p).map(|g| g.to_string()).collect();
            // both tables are indexed by (first argument, second argument)
            let moving: Vec<Vec<usize>> = (0..pi).map(|a| (0..pi).map(|g| r(a + g)).collect()).collect();
            let (left, right, subgroup) = if is_l {
                let fixed = vec![(0..p as usize).collect::<Vec<_>>(); p as usize];
                (fixed, moving, line(1, 0))
            } else {
                let fixed = (0..p as usize).map(|a| vec![a; p as usize]).collect();
                (moving, fixed, line(0, 1))
            };
            BimoduleData::from_actions(
                p,
                Some(label),
                subgroup,
                CocycleClass::trivial(p),
                simples,
                names,
                left,
                right,
                trivial_c,
            )
        }
        BimoduleLabel::F(q) => BimoduleData::from_actions(
            p,
            Some(label),
            Subgroup::full(p),
            CocycleClass::new(p, q as i64),
            vec![PairElt::zero(p)],
            vec!["*".to_string()],
            vec![vec![0]; p as usize],
            vec![vec![0; p as usize]],
            move |g, _, h| q as i64 * g as i64 * h as i64,
        ),
        BimoduleLabel::X(k) => {
            let kinv = inv_mod(k, p).expect("X index is a unit") as i64;
            let simples = (0..pi).map(|h| PairElt::new(p, 0, h * kinv)).collect();
            let names = (0..p).map(|h| h.to_string()).collect();
            let left = (0..pi).map(|g| (0..pi).map(|a| r(a + g)).collect()).collect();
            let right = (0..pi).map(|a| (0..pi).map(|g| r(a + k as i64 * g)).collect()).collect();
            BimoduleData::from_actions(
                p,
                Some(label),
                line(-(k as i64), 1),
                CocycleClass::trivial(p),
                simples,
                names,
                left,
                right,
                trivial_c,
            )
        }
    }
}
