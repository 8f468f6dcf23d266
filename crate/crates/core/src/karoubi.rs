//! Idempotent completion of a ladder category.
//!
//! Every endomorphism algebra of a ladder object is spanned by the rungs in
//! its stabilizer, which is either `{0}` or all of Z_p. Primitive idempotents
//! are therefore the character projectors of a cyclic group algebra, and
//! simple objects of the completion are pairs (object, projector) up to
//! isomorphism.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ladder::{LadderCategory, LadderMorphism, LadderObject};
use crate::scalar::{rational, CyclotomicScalar, Rational};

/// An object of the completion: a ladder object with an idempotent on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KarObject {
    pub base: LadderObject,
    pub idem: LadderMorphism,
}

/// Canonical representative of an isomorphism class of simple objects.
#[derive(Clone, Debug)]
pub struct KarSimple {
    pub representative: KarObject,
    /// Position in [`KaroubiEnvelope::simples`].
    pub class_index: usize,
    /// Which primitive idempotent of the base object was chosen.
    pub character: usize,
    /// Connected component of the base object.
    pub component: usize,
    /// Every (object, character) pair isomorphic to the representative.
    pub members: Vec<(LadderObject, usize)>,
}

/// `Some(r)` with `r^n = x` when `x` is the n-th power of a rational.
fn rational_root(x: &Rational, n: u32) -> Option<Rational> {
    if x.is_zero() {
        return Some(x.clone());
    }
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(n);
        (num_traits::pow::pow(r.clone(), n as usize) == *v).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

/// A complete orthogonal family of primitive idempotents in `End(obj)`.
///
/// For a one dimensional End this is the rescaled identity rung. For a p
/// dimensional End generated by `u = [1]` with `u^p = c·[0]`, the generator is
/// rescaled to `v` with `v^p = 1` and `e_k = (1/p) Σ_j ζ^{kj} v^j`.
pub fn primitive_idempotents(lad: &LadderCategory, obj: LadderObject) -> Result<Vec<LadderMorphism>> {
    let p = lad.p();
    let end = lad.end_algebra(obj);
    let zero_rung = lad.zp(0);
    let id = &end.products[0][0];
    let c0 = id
        .coeff(zero_rung)
        .filter(|_| id.coeffs.len() == 1)
        .ok_or_else(|| Error::Internal("rung 0 does not square to a multiple of itself".into()))?;
    match end.dim() {
        1 => {
            let e = lad.identity(obj).scale(&c0.inv()?);
            Ok(vec![e])
        }
        d if d == p as usize => {
            if !c0.is_one() {
                return Err(Error::Unsupported("rung 0 is not a unit in End".into()));
            }
            if !end.is_commutative() {
                return Err(Error::Unsupported("noncommutative endomorphism algebra".into()));
            }
            let u = lad.basic(obj, obj, lad.zp(1))?;
            let mut powers = vec![lad.identity(obj)];
            for _ in 1..p {
                let next = lad.compose(powers.last().expect("nonempty"), &u)?;
                powers.push(next);
            }
            let up = lad.compose(&powers[p as usize - 1], &u)?;
            let c = up
                .ratio_to(&powers[0])
                .ok_or_else(|| Error::Unsupported("u^p is not a multiple of the identity".into()))?;
            let c_rat = c
                .as_rational()
                .ok_or_else(|| Error::Unsupported(format!("u^p = {c} is not split over the coefficient field")))?;
            let root = rational_root(&c_rat, p)
                .ok_or_else(|| Error::Unsupported(format!("u^p = {c} has no rational p-th root")))?;
            let inv_root = root.recip();
            let mut v_pow = Vec::with_capacity(p as usize);
            let mut scale = Rational::from_integer(1.into());
            for up in &powers {
                v_pow.push(up.scale(&CyclotomicScalar::from_rational(p, scale.clone())));
                scale = &scale * &inv_root;
            }
            let inv_p = rational(1, p as i64);
            let mut out = Vec::with_capacity(p as usize);
            for k in 0..p as i64 {
                let mut e = LadderMorphism::zero(obj, obj);
                for (j, vj) in v_pow.iter().enumerate() {
                    let w = CyclotomicScalar::zeta_pow(p, k * j as i64).scale(&inv_p);
                    e = e.checked_add(&vj.scale(&w))?;
                }
                out.push(e);
            }
            Ok(out)
        }
        d => Err(Error::Unsupported(format!("endomorphism algebra of dimension {d}"))),
    }
}

/// Reduced row echelon basis of the span of `vectors`, pivots on least rungs.
pub fn span_basis(vectors: impl IntoIterator<Item = LadderMorphism>) -> Vec<LadderMorphism> {
    let mut basis: Vec<LadderMorphism> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            let (pivot, _) = b.leading().expect("basis vectors are nonzero");
            if let Some(c) = v.coeff(pivot).cloned() {
                v = v.checked_sub(&b.scale(&c)).expect("same objects");
            }
        }
        if v.is_zero() {
            continue;
        }
        let v = v.normalized();
        let (pivot, _) = v.leading().expect("nonzero");
        for b in basis.iter_mut() {
            if let Some(c) = b.coeff(pivot).cloned() {
                *b = b.checked_sub(&v.scale(&c)).expect("same objects");
            }
        }
        basis.push(v);
    }
    basis.sort_by_key(|b| b.leading().map(|(r, _)| r));
    basis
}

/// Basis of `b.idem ∘ Hom(a.base, b.base) ∘ a.idem`.
pub fn kar_hom_basis(lad: &LadderCategory, a: &KarObject, b: &KarObject) -> Vec<LadderMorphism> {
    let candidates = lad.hom_basis(a.base, b.base).into_iter().map(|r| {
        let f = lad.basic(a.base, b.base, r).expect("admissible");
        let f = lad.compose(&a.idem, &f).expect("matching objects");
        lad.compose(&f, &b.idem).expect("matching objects")
    });
    span_basis(candidates)
}

/// Two primitive objects are isomorphic when nonzero maps exist both ways
/// whose composites are nonzero multiples of the idempotents.
pub fn is_isomorphic(lad: &LadderCategory, a: &KarObject, b: &KarObject) -> bool {
    let (ab, ba) = (kar_hom_basis(lad, a, b), kar_hom_basis(lad, b, a));
    let (Some(f), Some(g)) = (ab.first(), ba.first()) else {
        return false;
    };
    let gf = lad.compose(f, g).expect("matching objects");
    let fg = lad.compose(g, f).expect("matching objects");
    gf.ratio_to(&a.idem).is_some_and(|c| !c.is_zero()) && fg.ratio_to(&b.idem).is_some_and(|c| !c.is_zero())
}

/// The simple objects of the idempotent completion of `Lad(M, N)`.
pub struct KaroubiEnvelope<'a> {
    pub lad: LadderCategory<'a>,
    pub components: Vec<Vec<LadderObject>>,
    /// Component of each object, indexed by [`LadderCategory::object_index`].
    pub component_of: Vec<usize>,
    pub simples: Vec<KarSimple>,
    /// Simples whose base lies in each component.
    pub by_component: Vec<Vec<usize>>,
    /// Primitive idempotents of every ladder object.
    pub idempotents: Vec<Vec<LadderMorphism>>,
}

impl<'a> KaroubiEnvelope<'a> {
    pub fn new(lad: LadderCategory<'a>) -> Result<Self> {
        let (components, component_of) = lad.components();
        let mut idempotents = vec![Vec::new(); component_of.len()];
        for o in lad.objects() {
            idempotents[lad.object_index(o)] = primitive_idempotents(&lad, o)?;
        }
        let mut simples: Vec<KarSimple> = Vec::new();
        let mut by_component = vec![Vec::new(); components.len()];
        for (ci, comp) in components.iter().enumerate() {
            for &o in comp {
                for (k, e) in idempotents[lad.object_index(o)].iter().enumerate() {
                    let candidate = KarObject { base: o, idem: e.clone() };
                    // distinct projectors on one base are orthogonal, so only
                    // classes founded on other objects need a check
                    let found = by_component[ci].iter().copied().find(|&s: &usize| {
                        let rep = &simples[s].representative;
                        rep.base != o && is_isomorphic(&lad, rep, &candidate)
                    });
                    match found {
                        Some(s) => simples[s].members.push((o, k)),
                        None => {
                            let class_index = simples.len();
                            by_component[ci].push(class_index);
                            simples.push(KarSimple {
                                representative: candidate,
                                class_index,
                                character: k,
                                component: ci,
                                members: vec![(o, k)],
                            });
                        }
                    }
                }
            }
        }
        Ok(Self { lad, components, component_of, simples, by_component, idempotents })
    }

    pub fn component_of_object(&self, o: LadderObject) -> usize {
        self.component_of[self.lad.object_index(o)]
    }

    /// The simple isomorphic to a primitive object `x`, with a normalized
    /// nonzero morphism from `x` to its representative.
    pub fn locate(&self, x: &KarObject) -> Result<(usize, LadderMorphism)> {
        for &s in &self.by_component[self.component_of_object(x.base)] {
            let t = &self.simples[s].representative;
            for r in self.lad.hom_basis(x.base, t.base) {
                let f = self.lad.basic(x.base, t.base, r)?;
                let w = self.lad.compose(&self.lad.compose(&x.idem, &f)?, &t.idem)?;
                if !w.is_zero() {
                    return Ok((s, w.normalized()));
                }
            }
        }
        Err(Error::Internal(format!("no simple receives a nonzero map from {}", self.lad.object_name(x.base))))
    }

    pub fn end_dimensions(&self) -> Vec<usize> {
        self.idempotents.iter().map(Vec::len).collect()
    }
}
