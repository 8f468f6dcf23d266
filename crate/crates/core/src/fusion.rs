//! Classification of `Kar(Lad(M, N))` as a bimodule.
//!
//! The outer Z_p actions on the completed ladder category permute its simple
//! objects. Orbits of the combined action are indecomposable summands; the
//! stabilizer of an orbit fixes the label up to the cocycle class, which is
//! read off the mixed associator when the stabilizer is the whole group.

use std::collections::BTreeMap;
use std::fmt;

use crate::bimodule::{BimoduleData, BimoduleLabel};
use crate::error::{Error, Result};
use crate::group::{inv_mod, PairElt, Subgroup, SubgroupKind, ZpElt};
use crate::karoubi::{KarObject, KaroubiEnvelope};
use crate::ladder::{LadderCategory, LadderMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A nonzero morphism from the image of a simple under an outer action to
/// the representative of the simple it lands on.
#[derive(Clone, Debug)]
pub struct ActionMorphism {
    pub g: ZpElt,
    pub side: Side,
    /// Index of the simple being acted on.
    pub source: usize,
    /// Index of the simple the action lands on.
    pub target: usize,
    pub witness: LadderMorphism,
}

/// A formal sum of catalogue labels with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub summands: BTreeMap<BimoduleLabel, usize>,
}

impl Decomposition {
    pub fn single(label: BimoduleLabel, mult: usize) -> Self {
        Self { summands: BTreeMap::from([(label, mult)]) }
    }

    pub fn add(&mut self, label: BimoduleLabel, mult: usize) {
        if mult > 0 {
            *self.summands.entry(label).or_default() += mult;
        }
    }

    pub fn mult(&self, label: BimoduleLabel) -> usize {
        self.summands.get(&label).copied().unwrap_or(0)
    }

    /// Total number of simple objects: Σ mult · size(label).
    pub fn simple_count(&self, p: u32) -> usize {
        self.summands.iter().map(|(l, m)| m * l.simple_count(p)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BimoduleLabel, usize)> + '_ {
        self.summands.iter().map(|(l, m)| (*l, *m))
    }

    /// Parses the printed form, e.g. `3*T + F1`.
    pub fn parse(text: &str, p: u32) -> Result<Self> {
        let mut out = Self::default();
        if text.trim() == "0" {
            return Ok(out);
        }
        for term in text.split('+') {
            let term = term.trim();
            let (mult, label) = match term.split_once('*') {
                Some((m, l)) => {
                    let m: usize =
                        m.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?;
                    (m, l.trim())
                }
                None => (1, term),
            };
            out.add(BimoduleLabel::parse_for(label, p)?, mult);
        }
        Ok(out)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            self.iter().map(|(l, m)| if m == 1 { l.to_string() } else { format!("{m}*{l}") }).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// One indecomposable summand as found by the engine.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    /// Least simple of the orbit.
    pub base: usize,
    pub base_name: String,
    pub size: usize,
    pub stabilizer: Subgroup,
    /// Mixed associator exponent at `(g, h) = (1, 1)` on the base simple.
    pub exponent: u32,
    pub label: BimoduleLabel,
}

/// Everything computed on the way to a decomposition.
#[derive(Clone, Debug)]
pub struct FusionReport {
    pub p: u32,
    pub left: String,
    pub right: String,
    pub ladder_objects: usize,
    pub components: usize,
    /// End-algebra dimension → number of ladder objects with it.
    pub end_dimensions: BTreeMap<usize, usize>,
    pub primitive_idempotents: usize,
    pub simples: usize,
    pub orbits: Vec<OrbitReport>,
    pub decomposition: Decomposition,
}

/// The completed ladder category with its outer actions tabulated.
pub struct FusionContext<'a> {
    pub kar: KaroubiEnvelope<'a>,
    /// `left[s][g]`
    pub left: Vec<Vec<ActionMorphism>>,
    /// `right[s][h]`
    pub right: Vec<Vec<ActionMorphism>>,
}

impl<'a> FusionContext<'a> {
    pub fn new(m: &'a BimoduleData, n: &'a BimoduleData) -> Result<Self> {
        let lad = LadderCategory::new(m, n)?;
        let kar = KaroubiEnvelope::new(lad)?;
        let p = lad.p();
        let mut left = Vec::with_capacity(kar.simples.len());
        let mut right = Vec::with_capacity(kar.simples.len());
        for s in 0..kar.simples.len() {
            let mut l = Vec::with_capacity(p as usize);
            let mut r = Vec::with_capacity(p as usize);
            for g in 0..p {
                l.push(compute_action(&kar, g, Side::Left, s)?);
                r.push(compute_action(&kar, g, Side::Right, s)?);
            }
            left.push(l);
            right.push(r);
        }
        Ok(Self { kar, left, right })
    }

    pub fn p(&self) -> u32 {
        self.kar.lad.p()
    }

    pub fn lad(&self) -> &LadderCategory<'a> {
        &self.kar.lad
    }

    pub fn simple_count(&self) -> usize {
        self.kar.simples.len()
    }

    pub fn simple_name(&self, s: usize) -> String {
        let simple = &self.kar.simples[s];
        let base = simple.representative.base;
        let name = self.lad().object_name(base);
        if self.kar.idempotents[self.lad().object_index(base)].len() > 1 {
            format!("{name}[{}]", simple.character)
        } else {
            name
        }
    }

    pub fn outer_action(&self, g: u32, side: Side, s: usize) -> &ActionMorphism {
        let g = (g % self.p()) as usize;
        match side {
            Side::Left => &self.left[s][g],
            Side::Right => &self.right[s][g],
        }
    }

    /// `g ▷ s ◁ h` as a simple index.
    pub fn act(&self, g: u32, s: usize, h: u32) -> usize {
        let t = self.outer_action(g, Side::Left, s).target;
        self.outer_action(h, Side::Right, t).target
    }

    /// Exponent `k` with (right h after left g) = ζ^k · (left g after right h)
    /// as maps from `(g ▷ s) ◁ h` to the common target simple.
    pub fn mixed_associator(&self, g: u32, h: u32, s: usize) -> Result<u32> {
        let lad = self.lad();
        let wl = self.outer_action(g, Side::Left, s);
        let wr_after = self.outer_action(h, Side::Right, wl.target);
        let a = lad.compose(&lad.act_right(h % self.p(), &wl.witness), &wr_after.witness)?;

        let wr = self.outer_action(h, Side::Right, s);
        let wl_after = self.outer_action(g, Side::Left, wr.target);
        let b = lad.compose(&lad.act_left(g % self.p(), &wr.witness), &wl_after.witness)?;

        if wr_after.target != wl_after.target {
            return Err(Error::Internal(format!("outer actions do not commute on simple {}", self.simple_name(s))));
        }
        let ratio = a.ratio_to(&b).ok_or_else(|| {
            Error::Internal(format!("action composites are not proportional on {}", self.simple_name(s)))
        })?;
        ratio
            .phase_exponent()
            .ok_or_else(|| Error::Internal(format!("associator ratio {ratio} is not a root of unity")))
    }

    /// `{(g, h) : g ▷ s ◁ h = s}`.
    pub fn stabilizer(&self, s: usize) -> Subgroup {
        let p = self.p();
        let gens: Vec<PairElt> =
            PairElt::all(p).filter(|x| self.act(x.left.value(), s, x.right.value()) == s).collect();
        Subgroup::from_generators(p, &gens)
    }

    /// Orbits of the combined action, each sorted, listed by least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.simple_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                orbit.push(x);
                for y in [self.left[x][1].target, self.right[x][1].target] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            orbit.sort();
            out.push(orbit);
        }
        out
    }

    pub fn classify_orbit(&self, orbit: &[usize]) -> Result<OrbitReport> {
        let p = self.p();
        let base = orbit[0];
        let stabilizer = self.stabilizer(base);
        let exponent = self.mixed_associator(1, 1, base)?;
        let label = label_for(stabilizer, exponent)?;
        if label.simple_count(p) != orbit.len() {
            return Err(Error::Classification(format!(
                "orbit of {} has {} simples but {label} has {}",
                self.simple_name(base),
                orbit.len(),
                label.simple_count(p)
            )));
        }
        Ok(OrbitReport { base, base_name: self.simple_name(base), size: orbit.len(), stabilizer, exponent, label })
    }

    pub fn report(&self) -> Result<FusionReport> {
        let lad = self.lad();
        let mut end_dimensions = BTreeMap::new();
        for d in self.kar.end_dimensions() {
            *end_dimensions.entry(d).or_insert(0) += 1;
        }
        let orbits = self.orbits().iter().map(|o| self.classify_orbit(o)).collect::<Result<Vec<_>>>()?;
        let mut decomposition = Decomposition::default();
        for o in &orbits {
            decomposition.add(o.label, 1);
        }
        Ok(FusionReport {
            p: self.p(),
            left: bimodule_name(lad.left),
            right: bimodule_name(lad.right),
            ladder_objects: lad.objects().len(),
            components: self.kar.components.len(),
            primitive_idempotents: self.kar.end_dimensions().iter().sum(),
            end_dimensions,
            simples: self.simple_count(),
            orbits,
            decomposition,
        })
    }
}

fn bimodule_name(b: &BimoduleData) -> String {
    b.label.map_or_else(|| "(unlabelled)".to_string(), |l| l.to_string())
}

fn compute_action(kar: &KaroubiEnvelope, g: u32, side: Side, s: usize) -> Result<ActionMorphism> {
    let lad = &kar.lad;
    let rep = &kar.simples[s].representative;
    let idem = match side {
        Side::Left => lad.act_left(g, &rep.idem),
        Side::Right => lad.act_right(g, &rep.idem),
    };
    let acted = KarObject { base: idem.source, idem };
    // Projectors on a shared base are either equal or orthogonal, so an exact
    // match identifies the target without composing.
    let same_base = kar.by_component[kar.component_of_object(acted.base)]
        .iter()
        .copied()
        .find(|&t| kar.simples[t].representative == acted);
    let (target, witness) = match same_base {
        Some(t) => (t, acted.idem.normalized()),
        None => kar.locate(&acted)?,
    };
    Ok(ActionMorphism { g: lad.zp(g), side, source: s, target, witness })
}

/// The catalogue label with the given stabilizer and mixed-associator exponent.
pub fn label_for(stabilizer: Subgroup, exponent: u32) -> Result<BimoduleLabel> {
    let p = stabilizer.p();
    match stabilizer.kind() {
        SubgroupKind::Trivial => Ok(BimoduleLabel::T),
        SubgroupKind::Full => Ok(BimoduleLabel::F(exponent % p)),
        SubgroupKind::Line(gen) => match (gen.left.value(), gen.right.value()) {
            (1, 0) => Ok(BimoduleLabel::L),
            (0, 1) => Ok(BimoduleLabel::R),
            (1, c) => {
                // ⟨(-k, 1)⟩ = ⟨(1, -k⁻¹)⟩
                let cinv = inv_mod(c, p).expect("c is nonzero");
                Ok(BimoduleLabel::X((p - cinv) % p))
            }
            _ => Err(Error::Classification(format!("unrecognized stabilizer {stabilizer}"))),
        },
    }
}

/// The relative tensor product of two bimodules as a sum of catalogue labels.
pub fn decompose(m: &BimoduleData, n: &BimoduleData) -> Result<Decomposition> {
    Ok(FusionContext::new(m, n)?.report()?.decomposition)
}

/// [`decompose`] with the intermediate data.
pub fn decompose_detailed(m: &BimoduleData, n: &BimoduleData) -> Result<FusionReport> {
    FusionContext::new(m, n)?.report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{catalogue, entry, BimoduleLabel as B};
    use crate::scalar::{rational, CyclotomicScalar};

    fn dec(p: u32, l: B, r: B) -> Decomposition {
        decompose(&entry(p, l), &entry(p, r)).unwrap()
    }

    #[test]
    fn worked_products() {
        for p in [2u32, 3, 5] {
            assert_eq!(dec(p, B::T, B::T), Decomposition::single(B::T, p as usize));
            assert_eq!(dec(p, B::R, B::F(0)), Decomposition::single(B::R, p as usize));
            assert_eq!(dec(p, B::L, B::R), Decomposition::single(B::F(0), p as usize));
        }
        assert_eq!(dec(5, B::X(2), B::X(3)), Decomposition::single(B::X(1), 1));
        assert_eq!(dec(5, B::F(2), B::F(3)), Decomposition::single(B::X(4), 1));
        assert_eq!(dec(5, B::F(2), B::X(3)), Decomposition::single(B::F(1), 1));
        assert_eq!(dec(3, B::X(2), B::F(1)), Decomposition::single(B::F(2), 1));
    }

    #[test]
    fn t_t_left_action() {
        let p = 3;
        let t = entry(p, B::T);
        let ctx = FusionContext::new(&t, &t).unwrap();
        for s in 0..ctx.simple_count() {
            let base = ctx.kar.simples[s].representative.base;
            let (a, b) = (base.m / p as usize, base.m % p as usize);
            for g in 0..p {
                let t = ctx.outer_action(g, Side::Left, s).target;
                let tb = ctx.kar.simples[t].representative.base;
                assert_eq!(tb.m, ((a + g as usize) % p as usize) * p as usize + b);
                assert_eq!(tb.n, base.n);
            }
        }
    }

    #[test]
    fn x_x_right_action() {
        let (p, k, l) = (5u32, 2u32, 4u32);
        let (xk, xl) = (entry(p, B::X(k)), entry(p, B::X(l)));
        let ctx = FusionContext::new(&xk, &xl).unwrap();
        for s in 0..ctx.simple_count() {
            let a = ctx.kar.simples[s].representative.base.m as u32;
            assert_eq!(ctx.kar.simples[s].representative.base.n, 0);
            for g in 0..p {
                let t = ctx.outer_action(g, Side::Right, s).target;
                let tb = ctx.kar.simples[t].representative.base;
                assert_eq!((tb.m as u32, tb.n), ((a + k * l * g) % p, 0));
            }
        }
    }

    #[test]
    fn r_f0_right_action_trivial() {
        let p = 3;
        let (r, f0) = (entry(p, B::R), entry(p, B::F(0)));
        let ctx = FusionContext::new(&r, &f0).unwrap();
        assert_eq!(ctx.simple_count(), (p * p) as usize);
        for s in 0..ctx.simple_count() {
            for h in 0..p {
                assert_eq!(ctx.outer_action(h, Side::Right, s).target, s);
            }
        }
    }

    #[test]
    fn witnesses_absorb_idempotents() {
        let p = 3;
        let cat = catalogue(p).unwrap();
        for (m, n) in [(3usize, 3usize), (2, 1), (5, 7), (7, 6)] {
            let ctx = FusionContext::new(&cat[m], &cat[n]).unwrap();
            let lad = ctx.lad();
            for s in 0..ctx.simple_count() {
                let e = &ctx.kar.simples[s].representative.idem;
                for g in 0..p {
                    for side in [Side::Left, Side::Right] {
                        let a = ctx.outer_action(g, side, s);
                        let acted = match side {
                            Side::Left => lad.act_left(g, e),
                            Side::Right => lad.act_right(g, e),
                        };
                        let te = &ctx.kar.simples[a.target].representative.idem;
                        assert!(!a.witness.is_zero());
                        assert_eq!(lad.compose(&acted, &a.witness).unwrap(), a.witness);
                        assert_eq!(lad.compose(&a.witness, te).unwrap(), a.witness);
                        assert!(a.witness.leading().unwrap().1.is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn f_x_associator_exponent() {
        for p in [3u32, 5] {
            for q in 1..p {
                for l in 1..p {
                    let (f, x) = (entry(p, B::F(q)), entry(p, B::X(l)));
                    let ctx = FusionContext::new(&f, &x).unwrap();
                    assert_eq!(ctx.simple_count(), 1);
                    for g in 0..p {
                        for h in 0..p {
                            assert_eq!(ctx.mixed_associator(g, h, 0).unwrap(), q * l * g * h % p);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn label_for_lines() {
        let p = 5;
        for k in 1..p {
            let h = Subgroup::line(PairElt::new(p, -(k as i64), 1));
            assert_eq!(label_for(h, 0).unwrap(), B::X(k));
        }
        assert_eq!(label_for(Subgroup::line(PairElt::new(p, 1, 0)), 0).unwrap(), B::L);
        assert_eq!(label_for(Subgroup::line(PairElt::new(p, 0, 3)), 0).unwrap(), B::R);
        assert_eq!(label_for(Subgroup::full(p), 7).unwrap(), B::F(2));
    }

    #[test]
    fn decomposition_text_round_trip() {
        let mut d = Decomposition::single(B::F(1), 1);
        d.add(B::T, 3);
        assert_eq!(d.to_string(), "3*T + F1");
        assert_eq!(Decomposition::parse("3*T + F1", 3).unwrap(), d);
        assert_eq!(d.simple_count(3), 28);
        assert!(Decomposition::parse("2*Q", 3).is_err());
    }

    fn gauge_twisted(p: u32, label: B) -> BimoduleData {
        let alpha = |g: u32, m: usize| {
            let s = if g == 0 { 1 } else { 2 };
            CyclotomicScalar::zeta_pow(p, (g as i64) * (m as i64 + 1) + (g * g) as i64).scale(&rational(s, 1))
        };
        let beta = |m: usize, h: u32| {
            let s = if h == 0 { 1 } else { 3 };
            CyclotomicScalar::zeta_pow(p, (h as i64) * (2 * m as i64 + 1)).scale(&rational(s, 1))
        };
        entry(p, label).gauge_transformed(alpha, beta)
    }

    #[test]
    fn gauge_twisted_inputs_give_the_same_labels() {
        let p = 3;
        let labels = BimoduleLabel::basis(p);
        for &l in &labels {
            for &r in &labels {
                let plain = dec(p, l, r);
                let twisted = decompose(&gauge_twisted(p, l), &gauge_twisted(p, r)).unwrap();
                assert_eq!(plain, twisted, "{l} ⊗ {r}");
            }
        }
    }

    #[test]
    fn x1_is_a_two_sided_unit() {
        for p in [2u32, 3, 5] {
            for l in BimoduleLabel::basis(p) {
                assert_eq!(dec(p, B::X(1), l), Decomposition::single(l, 1));
                assert_eq!(dec(p, l, B::X(1)), Decomposition::single(l, 1));
            }
        }
    }

    #[test]
    fn orbit_invariants() {
        for p in [2u32, 3] {
            let cat = catalogue(p).unwrap();
            for m in &cat {
                for n in &cat {
                    let ctx = FusionContext::new(m, n).unwrap();
                    let report = ctx.report().unwrap();
                    assert_eq!(report.decomposition.simple_count(p), ctx.simple_count());
                    for orbit in ctx.orbits() {
                        let h = ctx.stabilizer(orbit[0]);
                        for &s in &orbit {
                            assert_eq!(ctx.stabilizer(s), h);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn associator_is_bilinear_on_every_orbit() {
        for p in [2u32, 3, 5] {
            let cat = catalogue(p).unwrap();
            for m in &cat {
                for n in &cat {
                    let ctx = FusionContext::new(m, n).unwrap();
                    for orbit in ctx.orbits() {
                        let s = orbit[0];
                        let e11 = ctx.mixed_associator(1, 1, s).unwrap();
                        for g in 0..p {
                            for h in 0..p {
                                assert_eq!(ctx.mixed_associator(g, h, s).unwrap(), g * h * e11 % p);
                            }
                        }
                    }
                }
            }
        }
    }
}
