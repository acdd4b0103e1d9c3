//! Monoid, comonoid, bimonoid and Hopf objects in the tensor category.
//!
//! Every law here is multilinear in its arguments, so it is checked on
//! spanning elements (zero and block-local nonzero elements) only; that is
//! exhaustive.

use std::sync::Arc;

use crate::limits::Limits;
use crate::report::{witness, ValidationReport};
use crate::semimodule::{enumerate_homs, Elem, FinSemimodule, Hom};
use crate::tensor::{Bimorphism, TensorObject, TripleTensor};
use crate::{Error, Result};

/// `(A, m, e)`. The multiplication may be partial (degree-truncated).
#[derive(Clone, Debug)]
pub struct MonoidObject {
    mult: Bimorphism,
    unit: Elem,
}

impl MonoidObject {
    pub fn new(mult: Bimorphism, unit: Elem) -> Result<Self> {
        let c = mult.target();
        if !(mult.left().same_as(c) && mult.right().same_as(c)) {
            return Err(Error::Mismatch("multiplication must be A × A → A".into()));
        }
        Ok(MonoidObject { mult, unit })
    }

    pub fn carrier(&self) -> &Arc<FinSemimodule> {
        self.mult.target()
    }

    pub fn mult(&self) -> &Bimorphism {
        &self.mult
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Option<Elem> {
        self.mult.apply(x, y)
    }

    /// `e ∘ ε` for a scalar: `s ↦ s·e`.
    pub fn unit_times(&self, s: u32) -> Elem {
        self.carrier().act(s, &self.unit)
    }
}

/// `π(a) = a⊗1 + 1⊗a` into the given `A ⊗ A`.
pub fn pi(m: &MonoidObject, square: &TensorObject) -> Result<Hom> {
    let a = m.carrier();
    let e = m.unit();
    Hom::from_fn(a, square.object(), |x| square.object().add(&square.pure(x, e), &square.pure(e, x))).validated()
}

pub fn check_monoid(m: &MonoidObject) -> ValidationReport {
    let a = m.carrier();
    let mut r = ValidationReport::new("monoid");
    r.absorb("mult", m.mult.check());
    let span = a.spanning_elements();
    let span = &span;
    let n = |x: &Elem| a.name(x);
    r.law(
        "unit",
        span.iter()
            .map(|x| witness(m.mul(&m.unit, x).as_ref() == Some(x) && m.mul(x, &m.unit).as_ref() == Some(x), || n(x))),
    );
    r.law(
        "associative",
        span.iter().flat_map(|x| span.iter().flat_map(move |y| span.iter().map(move |z| (x, y, z)))).map(
            |(x, y, z)| {
                let lhs = m.mul(x, y).and_then(|xy| m.mul(&xy, z));
                let rhs = m.mul(y, z).and_then(|yz| m.mul(x, &yz));
                // Under truncation one side may be undefined; only defined pairs are compared.
                witness(lhs.zip(rhs).is_none_or(|(l, r)| l == r), || format!("({}·{})·{}", n(x), n(y), n(z)))
            },
        ),
    );
    r
}

/// `(C, μ, ε)` with `μ` landing in a fixed `C ⊗ C` and `ε` in `F1`.
#[derive(Clone, Debug)]
pub struct ComonoidObject {
    square: TensorObject,
    comult: Hom,
    counit: Hom,
}

impl ComonoidObject {
    pub fn new(square: TensorObject, comult: Hom, counit: Hom) -> Result<Self> {
        let c = square.left();
        let ok = square.right().same_as(c)
            && comult.source().same_as(c)
            && comult.target().same_as(square.object())
            && counit.source().same_as(c)
            && counit.target().num_blocks() == 1
            && counit.target().block(0).is_unit();
        if !ok {
            return Err(Error::Mismatch("comultiplication must be C → C⊗C and counit C → F1".into()));
        }
        Ok(ComonoidObject { square, comult, counit })
    }

    pub fn carrier(&self) -> &Arc<FinSemimodule> {
        self.square.left()
    }

    pub fn square(&self) -> &TensorObject {
        &self.square
    }

    pub fn comult(&self) -> &Hom {
        &self.comult
    }

    pub fn counit(&self) -> &Hom {
        &self.counit
    }

    pub fn counit_scalar(&self, x: &[u32]) -> u32 {
        self.counit.apply(x)[0]
    }

    /// `μ(x)` as a list of pure tensors.
    pub fn split(&self, x: &[u32]) -> Vec<(Elem, Elem)> {
        self.square.decompose(&self.comult.apply(x))
    }
}

pub fn check_comonoid(c: &ComonoidObject, limits: &Limits) -> Result<ValidationReport> {
    let a = c.carrier();
    let mut r = ValidationReport::new("comonoid");
    r.absorb("comult", c.comult.check());
    r.absorb("counit", c.counit.check());
    let span = a.spanning_elements();
    let n = |x: &Elem| a.name(x);
    r.law(
        "counit.left",
        span.iter().map(|x| {
            let parts = c.split(x);
            let v = a.sum(&parts.iter().map(|(p, q)| a.act(c.counit_scalar(p), q)).collect::<Vec<_>>());
            witness(v == *x, || n(x))
        }),
    );
    r.law(
        "counit.right",
        span.iter().map(|x| {
            let parts = c.split(x);
            let v = a.sum(&parts.iter().map(|(p, q)| a.act(c.counit_scalar(q), p)).collect::<Vec<_>>());
            witness(v == *x, || n(x))
        }),
    );
    let triple = TripleTensor::new(a, a, a, limits)?;
    let assoc = triple.associator()?;
    // `triple.ab` is a fresh copy of `C ⊗ C`, identical in layout.
    let (ab_c, a_bc) = (&triple.ab_c, &triple.a_bc);
    r.law(
        "coassociative",
        span.iter().map(|x| {
            let parts = c.split(x);
            let lhs: Vec<Elem> = parts.iter().map(|(p, q)| ab_c.pure(&c.comult.apply(p), q)).collect();
            let rhs: Vec<Elem> = parts.iter().map(|(p, q)| a_bc.pure(p, &c.comult.apply(q))).collect();
            witness(assoc.forward.apply(&ab_c.object().sum(&lhs)) == a_bc.object().sum(&rhs), || n(x))
        }),
    );
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct BimonoidObject {
    pub monoid: MonoidObject,
    pub comonoid: ComonoidObject,
}

impl BimonoidObject {
    pub fn new(monoid: MonoidObject, comonoid: ComonoidObject) -> Result<Self> {
        if !monoid.carrier().same_as(comonoid.carrier()) {
            return Err(Error::Mismatch("monoid and comonoid live on different carriers".into()));
        }
        Ok(BimonoidObject { monoid, comonoid })
    }

    pub fn carrier(&self) -> &Arc<FinSemimodule> {
        self.monoid.carrier()
    }

    /// Product in `B ⊗ B` with `(x⊗y)(x'⊗y') = xx' ⊗ yy'`, if defined.
    pub fn square_mul(&self, u: &[u32], v: &[u32]) -> Option<Elem> {
        let sq = self.comonoid.square();
        let m = &self.monoid;
        let mut terms = Vec::new();
        for (x, y) in sq.decompose(u) {
            for (x2, y2) in sq.decompose(v) {
                terms.push(sq.pure(&m.mul(&x, &x2)?, &m.mul(&y, &y2)?));
            }
        }
        Some(sq.object().sum(&terms))
    }
}

pub fn check_bimonoid(b: &BimonoidObject, limits: &Limits) -> Result<ValidationReport> {
    let mut r = ValidationReport::new("bimonoid");
    r.absorb("monoid", check_monoid(&b.monoid));
    r.absorb("comonoid", check_comonoid(&b.comonoid, limits)?);
    r.checks.extend(check_compatibility(b).checks);
    Ok(r)
}

/// The laws linking the two halves: comultiplication and counit are
/// multiplicative and unital.
pub fn check_compatibility(b: &BimonoidObject) -> ValidationReport {
    let (m, c) = (&b.monoid, &b.comonoid);
    let a = b.carrier();
    let mut r = ValidationReport::new("bimonoid");
    let span = a.spanning_elements();
    let n = |x: &Elem| a.name(x);
    let pairs = || span.iter().flat_map(|x| span.iter().map(move |y| (x, y)));
    let base = a.base();
    let sq = c.square();
    r.law(
        "comult.multiplicative",
        pairs().filter_map(|(x, y)| Some((x, y, m.mul(x, y)?))).map(|(x, y, xy)| {
            let lhs = c.comult.apply(&xy);
            let rhs = b.square_mul(&c.comult.apply(x), &c.comult.apply(y));
            witness(rhs.as_ref() == Some(&lhs), || format!("{}·{}", n(x), n(y)))
        }),
    );
    r.law("comult.unit", [witness(c.comult.apply(m.unit()) == sq.pure(m.unit(), m.unit()), || n(m.unit()))]);
    r.law(
        "counit.multiplicative",
        pairs().filter_map(|(x, y)| Some((x, y, m.mul(x, y)?))).map(|(x, y, xy)| {
            let lhs = c.counit_scalar(&xy);
            let rhs = base.mul(c.counit_scalar(x), c.counit_scalar(y));
            witness(lhs == rhs, || format!("{}·{}", n(x), n(y)))
        }),
    );
    r.law("counit.unit", [witness(c.counit_scalar(m.unit()) == base.one(), || n(m.unit()))]);
    r
}

#[derive(Clone, Debug)]
pub struct HopfObject {
    pub bimonoid: BimonoidObject,
    pub antipode: Hom,
}

impl HopfObject {
    pub fn new(bimonoid: BimonoidObject, antipode: Hom) -> Result<Self> {
        let a = bimonoid.carrier();
        if !(antipode.source().same_as(a) && antipode.target().same_as(a)) {
            return Err(Error::Mismatch("antipode must be an endomorphism of the carrier".into()));
        }
        Ok(HopfObject { bimonoid, antipode })
    }

    pub fn carrier(&self) -> &Arc<FinSemimodule> {
        self.bimonoid.carrier()
    }
}

/// `Σ m(f(x₁), g(x₂))` over `μ(x) = Σ x₁ ⊗ x₂`, if every product is defined.
fn convolve_at(f: &Hom, g: &Hom, c: &ComonoidObject, m: &MonoidObject, x: &[u32]) -> Option<Elem> {
    let mut terms = Vec::new();
    for (p, q) in c.split(x) {
        terms.push(m.mul(&f.apply(&p), &g.apply(&q))?);
    }
    Some(m.carrier().sum(&terms))
}

/// `f ⋆ g = m ∘ (f ⊗ g) ∘ μ`.
pub fn convolution(f: &Hom, g: &Hom, c: &ComonoidObject, m: &MonoidObject) -> Result<Hom> {
    let ok = f.source().same_as(c.carrier())
        && g.source().same_as(c.carrier())
        && f.target().same_as(m.carrier())
        && g.target().same_as(m.carrier());
    if !ok {
        return Err(Error::Mismatch("convolution needs maps from the comonoid to the monoid".into()));
    }
    let mut undefined = false;
    let h = Hom::from_fn(c.carrier(), m.carrier(), |x| {
        convolve_at(f, g, c, m, x).unwrap_or_else(|| {
            undefined = true;
            m.carrier().zero()
        })
    });
    if undefined {
        return Err(Error::Precondition("convolution hits an undefined product".into()));
    }
    Ok(h)
}

/// Whether `s` satisfies `s ⋆ id = e∘ε = id ⋆ s`.
fn antipode_laws(b: &BimonoidObject, s: &Hom, r: &mut ValidationReport) -> bool {
    let (m, c) = (&b.monoid, &b.comonoid);
    let a = b.carrier();
    let id = Hom::identity(a);
    let span = a.spanning_elements();
    r.law(
        "antipode.convolution",
        span.iter().map(|x| {
            let target = Some(m.unit_times(c.counit_scalar(x)));
            witness(convolve_at(s, &id, c, m, x) == target && convolve_at(&id, s, c, m, x) == target, || a.name(x))
        }),
    )
}

pub fn check_hopf(h: &HopfObject, limits: &Limits) -> Result<ValidationReport> {
    let mut r = ValidationReport::new("hopf");
    r.absorb("bimonoid", check_bimonoid(&h.bimonoid, limits)?);
    r.checks.extend(check_antipode(h).checks);
    Ok(r)
}

/// The antipode layer alone: `S` is a hom and a convolution inverse of `id`.
pub fn check_antipode(h: &HopfObject) -> ValidationReport {
    let mut r = ValidationReport::new("hopf");
    r.absorb("antipode", h.antipode.check());
    antipode_laws(&h.bimonoid, &h.antipode, &mut r);
    r
}

/// Every endomorphism satisfying the antipode equations.
pub fn antipodes(b: &BimonoidObject, limits: &Limits) -> Result<Vec<Hom>> {
    let a = b.carrier();
    Ok(enumerate_homs(a, a, limits)?
        .into_iter()
        .filter(|s| antipode_laws(b, s, &mut ValidationReport::new("candidate")))
        .collect())
}

/// `S(xy) = S(y)S(x)`, `S(e) = e`, `μ∘S = (S⊗S)∘σ∘μ`, `ε∘S = ε`.
pub fn check_antipode_reverses(h: &HopfObject) -> ValidationReport {
    let (m, c) = (&h.bimonoid.monoid, &h.bimonoid.comonoid);
    let s = &h.antipode;
    let a = h.carrier();
    let sq = c.square();
    let span = a.spanning_elements();
    let n = |x: &Elem| a.name(x);
    let mut r = ValidationReport::new("antipode as a map to the opposite bimonoid");
    r.law(
        "anti_multiplicative",
        span.iter().flat_map(|x| span.iter().map(move |y| (x, y))).filter_map(|(x, y)| Some((x, y, m.mul(x, y)?))).map(
            |(x, y, xy)| {
                witness(m.mul(&s.apply(y), &s.apply(x)) == Some(s.apply(&xy)), || format!("{}·{}", n(x), n(y)))
            },
        ),
    );
    r.law("unit", [witness(s.apply(m.unit()) == *m.unit(), || n(m.unit()))]);
    r.law(
        "anti_comultiplicative",
        span.iter().map(|x| {
            let swapped: Vec<Elem> = c.split(x).iter().map(|(p, q)| sq.pure(&s.apply(q), &s.apply(p))).collect();
            witness(c.comult.apply(&s.apply(x)) == sq.object().sum(&swapped), || n(x))
        }),
    );
    r.law("counit", span.iter().map(|x| witness(c.counit_scalar(&s.apply(x)) == c.counit_scalar(x), || n(x))));
    r
}
