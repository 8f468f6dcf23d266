//! The multiplication table of the Brauer-Picard ring of Vec(Z_p).

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bimodule::{catalogue, BimoduleLabel};
use crate::error::{Error, Result};
use crate::fusion::{decompose, Decomposition};
use crate::group::inv_mod;
use crate::scalar::ensure_prime;

/// Structure constants `N_{MN}^P` over the basis of indecomposables, stored
/// densely as `constants[(i * n + j) * n + k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTable {
    pub p: u32,
    pub basis: Vec<BimoduleLabel>,
    pub constants: Vec<u32>,
}

impl RingTable {
    pub fn from_products(p: u32, mut product: impl FnMut(BimoduleLabel, BimoduleLabel) -> Decomposition) -> Self {
        let basis = BimoduleLabel::basis(p);
        let n = basis.len();
        let mut constants = vec![0; n * n * n];
        for (i, &a) in basis.iter().enumerate() {
            for (j, &b) in basis.iter().enumerate() {
                for (l, m) in product(a, b).iter() {
                    constants[(i * n + j) * n + l.index(p)] = m as u32;
                }
            }
        }
        Self { p, basis, constants }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn constant(&self, a: BimoduleLabel, b: BimoduleLabel, c: BimoduleLabel) -> u32 {
        self.constants[self.offset(a.index(self.p), b.index(self.p), c.index(self.p))]
    }

    pub fn set_constant(&mut self, a: BimoduleLabel, b: BimoduleLabel, c: BimoduleLabel, value: u32) {
        let i = self.offset(a.index(self.p), b.index(self.p), c.index(self.p));
        self.constants[i] = value;
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    pub fn product(&self, a: BimoduleLabel, b: BimoduleLabel) -> Decomposition {
        let mut out = Decomposition::default();
        for &c in &self.basis {
            out.add(c, self.constant(a, b, c) as usize);
        }
        out
    }

    /// Entries where the two tables disagree, as readable lines.
    pub fn diff(&self, other: &RingTable) -> Vec<String> {
        if self.p != other.p {
            return vec![format!("tables for different primes: {} and {}", self.p, other.p)];
        }
        let mut out = Vec::new();
        for &a in &self.basis {
            for &b in &self.basis {
                let (x, y) = (self.product(a, b), other.product(a, b));
                if x != y {
                    out.push(format!("{a} ⊗ {b}: {x} vs {y}"));
                }
            }
        }
        out
    }

    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut products = serde_json::Map::new();
        for &a in &self.basis {
            for &b in &self.basis {
                let cell: Vec<Summand> =
                    self.product(a, b).iter().map(|(l, m)| Summand { label: l.to_string(), mult: m }).collect();
                products.insert(format!("{a},{b}"), serde_json::to_value(cell).expect("serializable"));
            }
        }
        let units = units_group(self);
        let report = check_axioms(self);
        let doc = TableJson {
            p: self.p,
            basis: self.basis.iter().map(ToString::to_string).collect(),
            products,
            units: UnitsJson {
                elements: units.units.iter().map(ToString::to_string).collect(),
                order: units.units.len(),
                dihedral: units.is_dihedral(),
            },
            checks: ChecksJson { unit: report.unit.is_empty(), associativity: report.associativity.is_empty() },
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let p = ensure_prime(doc.p)?;
        let basis = BimoduleLabel::basis(p);
        if doc.basis != basis.iter().map(ToString::to_string).collect::<Vec<_>>() {
            return Err(Error::Parse("basis does not match the canonical order".into()));
        }
        let n = basis.len();
        let mut table = Self { p, basis, constants: vec![0; n * n * n] };
        for (key, cell) in &doc.products {
            let (a, b) = key.split_once(',').ok_or_else(|| Error::Parse(format!("bad product key {key:?}")))?;
            let (a, b) = (BimoduleLabel::parse_for(a, p)?, BimoduleLabel::parse_for(b, p)?);
            let cell: Vec<Summand> = serde_json::from_value(cell.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            for s in cell {
                table.set_constant(a, b, BimoduleLabel::parse_for(&s.label, p)?, s.mult as u32);
            }
        }
        Ok(table)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
        writeln!(out, "| ⊗ | {} |", header.join(" | ")).unwrap();
        writeln!(out, "|---|{}", "---|".repeat(self.dim())).unwrap();
        for &a in &self.basis {
            let row: Vec<String> = self.basis.iter().map(|&b| self.product(a, b).to_string()).collect();
            writeln!(out, "| {a} | {} |", row.join(" | ")).unwrap();
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
        writeln!(out, "⊗,{}", header.join(",")).unwrap();
        for &a in &self.basis {
            let row: Vec<String> = self.basis.iter().map(|&b| self.product(a, b).to_string()).collect();
            writeln!(out, "{a},{}", row.join(",")).unwrap();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "md" | "markdown" => Ok(Self::Markdown),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}; expected json, md or csv"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Summand {
    label: String,
    mult: usize,
}

#[derive(Serialize, Deserialize)]
struct UnitsJson {
    elements: Vec<String>,
    order: usize,
    dihedral: bool,
}

#[derive(Serialize, Deserialize)]
struct ChecksJson {
    unit: bool,
    associativity: bool,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    p: u32,
    basis: Vec<String>,
    products: serde_json::Map<String, serde_json::Value>,
    units: UnitsJson,
    checks: ChecksJson,
}

/// Computes every product with the ladder engine, in parallel over pairs.
pub fn build_table(p: u32) -> Result<RingTable> {
    let cat = catalogue(p)?;
    let n = cat.len();
    let cells: Vec<Decomposition> =
        (0..n * n).into_par_iter().map(|ij| decompose(&cat[ij / n], &cat[ij % n])).collect::<Result<_>>()?;
    Ok(RingTable::from_products(p, |a, b| cells[a.index(p) * n + b.index(p)].clone()))
}

/// The multiplication table in closed form.
pub fn closed_form_table(p: u32) -> Result<RingTable> {
    use BimoduleLabel::*;
    ensure_prime(p)?;
    let pm = p as usize;
    let inv = |a: u32| inv_mod(a, p).expect("nonzero index");
    let mul = |a: u32, b: u32| (a as u64 * b as u64 % p as u64) as u32;
    // The four non-invertible rows and columns depend only on the class of
    // the invertible factor: X-type behaves like X1, F-type like F1.
    let kind = |l: BimoduleLabel| match l {
        X(_) => X(1),
        F(q) if q != 0 => F(1),
        other => other,
    };
    Ok(RingTable::from_products(p, |a, b| {
        let s = Decomposition::single;
        match (a, b) {
            (X(k), X(l)) => s(X(mul(k, l)), 1),
            (X(k), F(r)) if r != 0 => s(F(mul(inv(k), r)), 1),
            (F(q), X(l)) if q != 0 => s(F(mul(q, l)), 1),
            (F(q), F(r)) if q != 0 && r != 0 => s(X(mul(inv(q), r)), 1),
            _ => match (kind(a), kind(b)) {
                (T, T) => s(T, pm),
                (T, L) => s(T, 1),
                (T, R) => s(R, pm),
                (T, F(0)) => s(R, 1),
                (T, X(_)) => s(T, 1),
                (T, F(_)) => s(R, 1),
                (L, T) => s(L, pm),
                (L, L) => s(L, 1),
                (L, R) => s(F(0), pm),
                (L, F(0)) => s(F(0), 1),
                (L, X(_)) => s(L, 1),
                (L, F(_)) => s(F(0), 1),
                (R, T) => s(T, 1),
                (R, L) => s(T, pm),
                (R, R) => s(R, 1),
                (R, F(0)) => s(R, pm),
                (R, X(_)) => s(R, 1),
                (R, F(_)) => s(T, 1),
                (F(0), T) => s(L, 1),
                (F(0), L) => s(L, pm),
                (F(0), R) => s(F(0), 1),
                (F(0), F(0)) => s(F(0), pm),
                (F(0), X(_)) => s(F(0), 1),
                (F(0), F(_)) => s(L, 1),
                (X(_), x) => s(x, 1),
                (F(_), T) => s(L, 1),
                (F(_), L) => s(T, 1),
                (F(_), R) => s(F(0), 1),
                (F(_), F(0)) => s(R, 1),
                (x, y) => unreachable!("{x} ⊗ {y} handled above"),
            },
        }
    }))
}

/// Violations found by [`check_axioms`]; empty lists mean the axiom holds.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub unit: Vec<String>,
    pub associativity: Vec<String>,
    /// Multiplicities other than 0, 1 or p.
    pub multiplicities: Vec<String>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.unit.is_empty() && self.associativity.is_empty() && self.multiplicities.is_empty()
    }
}

pub fn check_unit(t: &RingTable) -> Vec<String> {
    let one = BimoduleLabel::X(1);
    let mut out = Vec::new();
    for &a in &t.basis {
        let single = Decomposition::single(a, 1);
        let (l, r) = (t.product(one, a), t.product(a, one));
        if l != single {
            out.push(format!("X1 ⊗ {a} = {l}"));
        }
        if r != single {
            out.push(format!("{a} ⊗ X1 = {r}"));
        }
    }
    out
}

/// `(M ⊗ N) ⊗ P = M ⊗ (N ⊗ P)` coefficientwise, for every triple.
pub fn check_associativity(t: &RingTable) -> Vec<String> {
    let n = t.dim();
    let c = |i: usize, j: usize, k: usize| t.constants[(i * n + j) * n + k] as u64;
    let mut out = Vec::new();
    for m in 0..n {
        for nn in 0..n {
            for pp in 0..n {
                for q in 0..n {
                    let lhs: u64 = (0..n).map(|e| c(m, nn, e) * c(e, pp, q)).sum();
                    let rhs: u64 = (0..n).map(|f| c(nn, pp, f) * c(m, f, q)).sum();
                    if lhs != rhs {
                        out.push(format!(
                            "({} ⊗ {}) ⊗ {} has {lhs}·{} but {} ⊗ ({} ⊗ {}) has {rhs}",
                            t.basis[m], t.basis[nn], t.basis[pp], t.basis[q], t.basis[m], t.basis[nn], t.basis[pp]
                        ));
                    }
                }
            }
        }
    }
    out
}

pub fn check_axioms(t: &RingTable) -> AxiomReport {
    let multiplicities = t
        .basis
        .iter()
        .flat_map(|&a| t.basis.iter().map(move |&b| (a, b)))
        .flat_map(|(a, b)| {
            t.product(a, b)
                .iter()
                .filter(|&(_, m)| m != 1 && m != t.p as usize)
                .map(move |(l, m)| format!("{a} ⊗ {b} contains {l} with multiplicity {m}"))
                .collect::<Vec<_>>()
        })
        .collect();
    AxiomReport { unit: check_unit(t), associativity: check_associativity(t), multiplicities }
}

/// The invertible basis elements and the relations they satisfy.
#[derive(Clone, Debug)]
pub struct UnitsGroup {
    pub units: Vec<BimoduleLabel>,
    /// `table[i][j] = units[i] ⊗ units[j]`, or `None` if not a single unit.
    pub table: Vec<Vec<Option<BimoduleLabel>>>,
    pub closed: bool,
    /// The X-labels form a cyclic group of order p − 1 under index multiplication.
    pub cyclic_x: bool,
    pub f1_squared_is_unit: bool,
    /// `F1 ⊗ X_k ⊗ F1 = X_{k⁻¹}` for every k.
    pub f1_conjugation_inverts: bool,
}

impl UnitsGroup {
    pub fn order(&self) -> usize {
        self.units.len()
    }

    pub fn is_dihedral(&self) -> bool {
        let p = self.units.iter().filter(|l| matches!(l, BimoduleLabel::X(_))).count() + 1;
        self.order() == 2 * (p - 1)
            && self.closed
            && self.cyclic_x
            && self.f1_squared_is_unit
            && self.f1_conjugation_inverts
    }
}

pub fn units_group(t: &RingTable) -> UnitsGroup {
    let p = t.p;
    let one = Decomposition::single(BimoduleLabel::X(1), 1);
    let single = |d: Decomposition| -> Option<BimoduleLabel> {
        let mut it = d.iter();
        match (it.next(), it.next()) {
            (Some((l, 1)), None) => Some(l),
            _ => None,
        }
    };
    let units: Vec<BimoduleLabel> = t
        .basis
        .iter()
        .copied()
        .filter(|&a| t.basis.iter().any(|&b| t.product(a, b) == one && t.product(b, a) == one))
        .collect();
    let table: Vec<Vec<Option<BimoduleLabel>>> =
        units.iter().map(|&a| units.iter().map(|&b| single(t.product(a, b))).collect()).collect();
    let closed = table.iter().flatten().all(|c| c.is_some_and(|l| units.contains(&l)));

    let xs: Vec<u32> = units.iter().filter_map(|l| if let BimoduleLabel::X(k) = l { Some(*k) } else { None }).collect();
    let x_closed = xs.iter().all(|&k| {
        xs.iter()
            .all(|&l| single(t.product(BimoduleLabel::X(k), BimoduleLabel::X(l))) == Some(BimoduleLabel::X(k * l % p)))
    });
    let has_generator = xs.iter().any(|&g| {
        let mut seen = std::collections::BTreeSet::new();
        let mut x = 1u32;
        for _ in 0..p - 1 {
            seen.insert(x);
            x = x * g % p;
        }
        seen.len() == (p - 1) as usize
    });
    let cyclic_x = xs.len() == (p - 1) as usize && x_closed && has_generator;

    let f1 = BimoduleLabel::F(1);
    let f1_squared_is_unit = t.product(f1, f1) == one;
    let f1_conjugation_inverts = xs.iter().all(|&k| {
        let left = single(t.product(f1, BimoduleLabel::X(k)));
        let whole = left.and_then(|l| single(t.product(l, f1)));
        whole == Some(BimoduleLabel::X(inv_mod(k, p).expect("nonzero")))
    });
    UnitsGroup { units, table, closed, cyclic_x, f1_squared_is_unit, f1_conjugation_inverts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BimoduleLabel::*;

    #[test]
    fn closed_form_spot_checks() {
        let t = closed_form_table(5).unwrap();
        assert_eq!(t.product(X(2), X(3)), Decomposition::single(X(1), 1));
        assert_eq!(t.product(F(2), F(3)), Decomposition::single(X(4), 1));
        assert_eq!(t.product(T, L), Decomposition::single(T, 1));
        assert_eq!(t.product(L, T), Decomposition::single(L, 5));
        assert_eq!(t.product(R, L), Decomposition::single(T, 5));
        assert_eq!(t.product(F(3), R), Decomposition::single(F(0), 1));
    }

    #[test]
    fn closed_form_is_a_ring() {
        for p in [2u32, 3, 5, 7] {
            let t = closed_form_table(p).unwrap();
            let r = check_axioms(&t);
            assert!(r.is_ok(), "p={p}: {r:?}");
        }
    }

    #[test]
    fn perturbation_is_located() {
        let mut t = closed_form_table(3).unwrap();
        t.set_constant(L, R, F(0), 2);
        let r = check_axioms(&t);
        assert!(!r.associativity.is_empty());
        assert!(r.multiplicities.iter().any(|m| m.contains("L ⊗ R")));
        let diff = t.diff(&closed_form_table(3).unwrap());
        assert_eq!(diff, vec!["L ⊗ R: 2*F0 vs 3*F0".to_string()]);
    }

    #[test]
    fn units_are_dihedral() {
        for p in [2u32, 3, 5, 7] {
            let u = units_group(&closed_form_table(p).unwrap());
            assert_eq!(u.order(), 2 * (p as usize - 1));
            assert!(u.is_dihedral(), "p={p}: {u:?}");
        }
        let u = units_group(&closed_form_table(2).unwrap());
        assert_eq!(u.units, vec![X(1), F(1)]);
    }

    #[test]
    fn serializations() {
        let t = closed_form_table(2).unwrap();
        let json = t.to_json();
        let back = RingTable::from_json(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["products"]["T,T"][0]["mult"], 2);
        assert_eq!(v["checks"]["associativity"], true);

        let md = t.to_markdown();
        let rows = md.lines().filter(|l| !l.starts_with("|---")).count();
        assert_eq!(rows, 2 * 2 + 3);

        let csv = t.to_csv();
        let cells: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
        assert_eq!(cells.len() - 1, t.dim());
        assert!(cells.iter().all(|r| r.len() == t.dim() + 1));
        assert_eq!(cells[1][1], "2*T");
        assert!(matches!("xml".parse::<Format>(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn engine_matches_closed_form_small_p() {
        for p in [2u32, 3] {
            let built = build_table(p).unwrap();
            assert_eq!(built.diff(&closed_form_table(p).unwrap()), Vec::<String>::new());
        }
    }
}
