//! Primitive elements, the Lie object they carry in a Hopf object, and the
//! bounded-degree check of the adjunction between envelopes and primitives.
//!
//! `Prim(B)` is computed as `E1 ∩ E2` with `E1` the equalizer of `π` and
//! `μ`, and `E2` the equalizer of `ε` and `0`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::abelian::{inv, is_abelian};
use crate::envelope::{enveloping, multiplicative_homs, universal_factorization, EnvelopeObject};
use crate::lie::{check_lie, enumerate_lie_morphisms, lie_of_monoid, LieObject};
use crate::limits::Limits;
use crate::monoidal::{pi, BimonoidObject, HopfObject};
use crate::report::{witness, ValidationReport};
use crate::semimodule::{equalizer, subobject, Elem, FinSemimodule, Hom};
use crate::tensor::Bimorphism;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct PrimitiveSubobject {
    pub parent: BimonoidObject,
    pub object: Arc<FinSemimodule>,
    pub embedding: Hom,
    /// Members in the order of the parent's element enumeration.
    pub members: Vec<Elem>,
    pub e1: Vec<Elem>,
    pub e2: Vec<Elem>,
    position: HashMap<Elem, u32>,
}

impl PrimitiveSubobject {
    pub fn contains(&self, x: &[u32]) -> bool {
        self.position.contains_key(x)
    }

    /// The element of `Prim(B)` corresponding to `x`, if `x` is primitive.
    pub fn corestrict(&self, x: &[u32]) -> Option<Elem> {
        self.position.get(x).map(|&i| vec![i])
    }
}

fn embedded(obj: &Arc<FinSemimodule>, emb: &Hom, limits: &Limits) -> Result<Vec<Elem>> {
    Ok(obj.elements(limits)?.iter().map(|x| emb.apply(x)).collect())
}

pub fn primitives(b: &BimonoidObject, limits: &Limits) -> Result<PrimitiveSubobject> {
    let a = b.carrier();
    let c = &b.comonoid;
    let (o1, emb1) = equalizer(&pi(&b.monoid, c.square())?, c.comult(), limits)?;
    let (o2, emb2) = equalizer(c.counit(), &Hom::zero(a, c.counit().target()), limits)?;
    let (e1, e2) = (embedded(&o1, &emb1, limits)?, embedded(&o2, &emb2, limits)?);
    let members: Vec<Elem> = e1.iter().filter(|x| e2.contains(x)).cloned().collect();

    let sq = c.square().object();
    let one = b.monoid.unit();
    let scan: Vec<Elem> = a
        .elements(limits)?
        .into_iter()
        .filter(|x| {
            let target = sq.add(&c.square().pure(x, one), &c.square().pure(one, x));
            c.comult().apply(x) == target && c.counit_scalar(x) == a.base().zero()
        })
        .collect();
    if scan != members {
        return Err(Error::Internal("equalizer description disagrees with the elementwise scan".into()));
    }

    let (object, embedding) = subobject(a, &members);
    let position = members.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect();
    Ok(PrimitiveSubobject { parent: b.clone(), object, embedding, members, e1, e2, position })
}

/// Multiplicativity, unit, comultiplication and counit compatibility of `f`.
pub fn bimonoid_morphism_report(f: &Hom, b: &BimonoidObject, b2: &BimonoidObject) -> ValidationReport {
    let (m, m2) = (&b.monoid, &b2.monoid);
    let (c, c2) = (&b.comonoid, &b2.comonoid);
    let a = b.carrier();
    let span = a.spanning_elements();
    let n = |x: &Elem| a.name(x);
    let mut r = ValidationReport::new("bimonoid morphism");
    r.law(
        "multiplicative",
        span.iter().flat_map(|x| span.iter().map(move |y| (x, y))).filter_map(|(x, y)| Some((x, y, m.mul(x, y)?))).map(
            |(x, y, xy)| {
                witness(m2.mul(&f.apply(x), &f.apply(y)) == Some(f.apply(&xy)), || format!("{}·{}", n(x), n(y)))
            },
        ),
    );
    r.law("unit", [witness(f.apply(m.unit()) == *m2.unit(), || n(m.unit()))]);
    r.law(
        "comult",
        span.iter().map(|x| {
            let pushed: Vec<Elem> =
                c.split(x).iter().map(|(p, q)| c2.square().pure(&f.apply(p), &f.apply(q))).collect();
            witness(c2.square().object().sum(&pushed) == c2.comult().apply(&f.apply(x)), || n(x))
        }),
    );
    r.law("counit", span.iter().map(|x| witness(c2.counit_scalar(&f.apply(x)) == c.counit_scalar(x), || n(x))));
    r
}

/// The bimonoid morphism laws plus `f ∘ S = S' ∘ f`.
pub fn hopf_morphism_report(f: &Hom, h: &HopfObject, h2: &HopfObject) -> ValidationReport {
    let mut r = bimonoid_morphism_report(f, &h.bimonoid, &h2.bimonoid);
    r.subject = "hopf morphism".into();
    let a = h.carrier();
    r.law(
        "antipode",
        a.spanning_elements()
            .iter()
            .map(|x| witness(f.apply(&h.antipode.apply(x)) == h2.antipode.apply(&f.apply(x)), || a.name(x))),
    );
    r
}

/// `Prim(f)`, for a bimonoid morphism `f`.
pub fn prim_map(f: &Hom, p: &PrimitiveSubobject, p2: &PrimitiveSubobject) -> Result<Hom> {
    if !bimonoid_morphism_report(f, &p.parent, &p2.parent).passed() {
        return Err(Error::Precondition("not a bimonoid morphism".into()));
    }
    let mut stray = None;
    let g = Hom::from_fn(&p.object, &p2.object, |x| {
        let y = f.apply(&p.embedding.apply(x));
        p2.corestrict(&y).unwrap_or_else(|| {
            stray = Some(y);
            p2.object.zero()
        })
    });
    match stray {
        Some(y) => Err(Error::Internal(format!("a primitive maps to {}", p2.parent.carrier().name(&y)))),
        None => Ok(g),
    }
}

/// Restriction of `S` to invertibles and primitives, `S p = −p` on
/// primitives, `Prim ⊆ Inv`, and closure of `Prim` under negation.
pub fn check_antipode_on_primitives(h: &HopfObject, limits: &Limits) -> Result<ValidationReport> {
    let a = h.carrier();
    let s = &h.antipode;
    let p = primitives(&h.bimonoid, limits)?;
    let invs = inv(a).members(limits)?;
    let mut r = ValidationReport::new("antipode on invertibles and primitives");
    r.law("antipode.restricts_to_inv", invs.iter().map(|x| witness(a.neg(&s.apply(x)).is_some(), || a.name(x))));
    r.law("antipode.restricts_to_prim", p.members.iter().map(|x| witness(p.contains(&s.apply(x)), || a.name(x))));
    r.law(
        "antipode.negates_primitives",
        p.members.iter().map(|x| witness(a.is_zero(&a.add(x, &s.apply(x))), || a.name(x))),
    );
    r.law("prim_in_inv", p.members.iter().map(|x| witness(a.neg(x).is_some(), || a.name(x))));
    r.law(
        "prim_internal_group",
        p.members.iter().map(|x| witness(a.neg(x).is_some_and(|y| p.contains(&y)), || a.name(x))),
    );
    Ok(r)
}

/// The primitives with `[x,y] = m(x,y) + m(y,Sx)`.
#[derive(Clone, Debug)]
pub struct PBar {
    pub lie: LieObject,
    pub prim: PrimitiveSubobject,
}

/// `m(x,y) + m(y,Sx)`, undefined when a product exceeds the degree bound.
fn bracket_in(h: &HopfObject, x: &[u32], y: &[u32]) -> Option<Elem> {
    let m = &h.bimonoid.monoid;
    Some(h.carrier().add(&m.mul(x, y)?, &m.mul(y, &h.antipode.apply(x))?))
}

/// `P̄(H)`. On a truncated `H` the bracket is partial exactly where the
/// products are.
pub fn p_bar(h: &HopfObject, limits: &Limits) -> Result<PBar> {
    let prim = primitives(&h.bimonoid, limits)?;
    let a = h.carrier();
    let mut stray = None;
    let bracket = Bimorphism::from_partial_fn(&prim.object, &prim.object, &prim.object, |u, v| {
        let z = bracket_in(h, &prim.embedding.apply(u), &prim.embedding.apply(v))?;
        prim.corestrict(&z).or_else(|| {
            stray.get_or_insert(z);
            Some(prim.object.zero())
        })
    });
    if let Some(z) = stray {
        return Err(Error::Internal(format!("bracket value {} is not primitive", a.name(&z))));
    }
    Ok(PBar { lie: LieObject::new(bracket.validated()?)?, prim })
}

/// The mirror and subtraction forms of the bracket, the Lie laws, and
/// abelianness of the carrier. Forms are compared where products exist.
pub fn check_p_bar(h: &HopfObject, limits: &Limits) -> Result<ValidationReport> {
    let pb = p_bar(h, limits)?;
    let a = h.carrier();
    let m = &h.bimonoid.monoid;
    let s = &h.antipode;
    let members = &pb.prim.members;
    let pairs = || members.iter().flat_map(|x| members.iter().map(move |y| (x, y)));
    let br = |x: &Elem, y: &Elem| {
        let (u, v) = (pb.prim.corestrict(x).expect("member"), pb.prim.corestrict(y).expect("member"));
        pb.lie.br(&u, &v).map(|z| pb.prim.embedding.apply(&z))
    };
    let name = |x: &Elem, y: &Elem| format!("{}, {}", a.name(x), a.name(y));
    let mut r = ValidationReport::new("primitive Lie object");
    r.law(
        "bracket.mirror",
        pairs().map(|(x, y)| {
            let mirror = m.mul(x, y).and_then(|xy| Some(a.add(&xy, &m.mul(&s.apply(y), x)?)));
            witness(mirror == br(x, y), || name(x, y))
        }),
    );
    r.law(
        "bracket.subtraction",
        pairs().map(|(x, y)| {
            let sub = m.mul(x, y).and_then(|xy| Some(a.add(&xy, &a.neg(&m.mul(y, x)?)?)));
            witness(sub == br(x, y), || name(x, y))
        }),
    );
    r.absorb("lie", check_lie(&pb.lie));
    r.law("abelian", [witness(is_abelian(&pb.prim.object), || "carrier has a non-invertible element".into())]);
    Ok(r)
}

/// Every hom `U≤d L → H` that is a Hopf morphism, found among the
/// multiplicative homs.
pub fn hopf_morphisms(e: &EnvelopeObject, h: &HopfObject, limits: &Limits) -> Result<Vec<Hom>> {
    let u = e.hopf()?;
    Ok(multiplicative_homs(e, &h.bimonoid.monoid, limits)?
        .into_iter()
        .filter(|g| hopf_morphism_report(g, &u, h).passed())
        .collect())
}

/// Outcome of the bounded-degree adjunction check.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub degree: usize,
    /// Lie morphisms `L → P̄(H)`.
    pub lie_morphisms: Vec<Hom>,
    /// `f̃: U≤d L → H` for each Lie morphism, in the same order.
    pub factorizations: Vec<Hom>,
    pub hopf_morphisms: Vec<Hom>,
    /// False when an enumeration hit a limit; the report then records where.
    pub conclusive: bool,
    pub report: ValidationReport,
}

/// Lie morphisms `L → P̄(H)` against Hopf morphisms `U≤d L → H`, with the
/// bijection `f ↦ f̃` verified by round trips through `η`.
pub fn adjunction_check(l: &LieObject, h: &HopfObject, degree: usize, limits: &Limits) -> Result<Adjunction> {
    if !is_abelian(l.carrier()) {
        return Err(Error::Precondition("the adjunction needs an abelian Lie object".into()));
    }
    let e = enveloping(l, degree, limits)?;
    let u = e.hopf()?;
    let pb = p_bar(h, limits)?;
    let mut out = Adjunction {
        degree,
        lie_morphisms: vec![],
        factorizations: vec![],
        hopf_morphisms: vec![],
        conclusive: true,
        report: ValidationReport::new(format!("adjunction at degree ≤ {degree}")),
    };
    let enumerated =
        enumerate_lie_morphisms(l, &pb.lie, limits).and_then(|lm| Ok((lm, hopf_morphisms(&e, h, limits)?)));
    let (lie_ms, hopf_ms) = match enumerated {
        Ok(x) => x,
        Err(err @ Error::Resource { .. }) => {
            out.conclusive = false;
            out.report.fail("enumeration", err.to_string());
            return Ok(out);
        }
        Err(err) => return Err(err),
    };

    let m = &h.bimonoid.monoid;
    let (lie_h, inv_h) = lie_of_monoid(m)?;
    let a = h.carrier();
    let mut facts = Vec::with_capacity(lie_ms.len());
    for (i, f) in lie_ms.iter().enumerate() {
        let into_h = f.then(&pb.prim.embedding);
        let fi = Hom::from_fn(l.carrier(), lie_h.carrier(), |x| {
            inv_h.corestrict(&into_h.apply(x)).expect("primitives are invertible")
        });
        let ft = universal_factorization(&e, m, &fi)?;
        out.report.absorb(&format!("f#{i}"), hopf_morphism_report(&ft, &u, h));
        facts.push(ft);
    }
    let r = &mut out.report;
    r.law(
        "cardinality",
        [witness(lie_ms.len() == hopf_ms.len(), || {
            format!("{} Lie morphisms, {} Hopf morphisms", lie_ms.len(), hopf_ms.len())
        })],
    );
    r.law(
        "factorization.hopf",
        facts.iter().enumerate().map(|(i, ft)| witness(hopf_ms.contains(ft), || format!("f#{i}"))),
    );
    r.law(
        "factorization.injective",
        (0..facts.len())
            .flat_map(|i| (i + 1..facts.len()).map(move |j| (i, j)))
            .map(|(i, j)| witness(facts[i] != facts[j], || format!("f#{i} and f#{j}"))),
    );
    r.law(
        "round_trip",
        hopf_ms.iter().enumerate().map(|(i, g)| {
            let back = e.eta().then(g);
            let span = l.carrier().spanning_elements();
            let ok = span.iter().all(|x| pb.prim.contains(&back.apply(x))) && {
                let f = Hom::from_fn(l.carrier(), &pb.prim.object, |x| {
                    pb.prim.corestrict(&back.apply(x)).expect("checked")
                });
                lie_ms.iter().position(|f2| *f2 == f).is_some_and(|k| facts[k] == *g)
            };
            witness(ok, || format!("g#{i} into {}", a.name(&g.apply(e.monoid().unit()))))
        }),
    );
    out.lie_morphisms = lie_ms;
    out.factorizations = facts;
    out.hopf_morphisms = hopf_ms;
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::lie::tests::{dual_numbers, free_mod, l1, l2};
    use crate::monoidal::{ComonoidObject, MonoidObject};
    use crate::semimodule::enumerate_homs;
    use crate::semiring::Builtin;
    use crate::tensor::tensor;
    use crate::tensor_algebra::truncated_tensor_algebra;

    /// Hopf structure on a free monoid with basis `1, …` from comultiplication
    /// terms and counit values on basis vectors.
    fn hopf_on(m: MonoidObject, comult: &[&[(usize, usize)]], counit: &[u32], antipode: &[&[u32]]) -> HopfObject {
        let a = m.carrier().clone();
        let sq = tensor(&a, &a, &Limits::default()).unwrap();
        let basis = |i: usize| a.inject(i, a.base().one());
        let mu = Hom::linear(&a, sq.object(), |i| {
            let terms: Vec<Elem> = comult[i].iter().map(|&(p, q)| sq.pure(&basis(p), &basis(q))).collect();
            sq.object().sum(&terms)
        })
        .unwrap();
        let f1 = Arc::new(FinSemimodule::unit(a.base()));
        let eps = Hom::linear(&a, &f1, |i| vec![counit[i]]).unwrap();
        let s = Hom::linear(&a, &a, |i| antipode[i].to_vec()).unwrap();
        let b = BimonoidObject::new(m, ComonoidObject::new(sq, mu, eps).unwrap()).unwrap();
        HopfObject::new(b, s).unwrap()
    }

    /// Dual numbers with `x` primitive.
    pub(crate) fn x2() -> HopfObject {
        hopf_on(dual_numbers(), &[&[(0, 0)], &[(1, 0), (0, 1)]], &[1, 0], &[&[1, 0], &[0, 1]])
    }

    /// The group algebra of `C2` over `Z/2`, basis `1, g`.
    pub(crate) fn g2() -> HopfObject {
        let a = free_mod(Builtin::ZMod(2), 2);
        let c: [[&[u32]; 2]; 2] = [[&[1, 0], &[0, 1]], [&[0, 1], &[1, 0]]];
        let m =
            MonoidObject::new(Bimorphism::bilinear(&a, &a, &a, |i, j| c[i][j].to_vec()).unwrap(), vec![1, 0]).unwrap();
        hopf_on(m, &[&[(0, 0)], &[(1, 1)]], &[1, 1], &[&[1, 0], &[0, 1]])
    }

    fn l1z3() -> LieObject {
        LieObject::abelian(&free_mod(Builtin::ZMod(3), 1))
    }

    #[test]
    fn hopf_fixtures_are_lawful() {
        for h in [x2(), g2()] {
            let r = crate::monoidal::check_hopf(&h, &Limits::default()).unwrap();
            assert!(r.passed(), "{:?}", r.first_violation());
        }
    }

    #[test]
    fn primitives_of_small_hopf_objects() {
        let l = Limits::default();
        let p = primitives(&x2().bimonoid, &l).unwrap();
        assert_eq!(p.members, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(p.e1, vec![vec![0, 0], vec![0, 1]]);
        let p = primitives(&g2().bimonoid, &l).unwrap();
        assert_eq!(p.members, vec![vec![0, 0]]);
        assert!(!p.e1.contains(&vec![1, 1]));

        let t = truncated_tensor_algebra(&free_mod(Builtin::ZMod(2), 2), 2, &l).unwrap();
        let p = primitives(t.bimonoid(), &l).unwrap();
        for x in t.generators().spanning_elements() {
            assert!(p.contains(&t.iota1().apply(&x)));
        }
    }

    #[test]
    fn antipode_on_primitives_including_characteristic_three() {
        let l = Limits::default();
        let u3 = enveloping(&l1z3(), 2, &l).unwrap().hopf().unwrap();
        for h in [x2(), g2(), u3.clone()] {
            let r = check_antipode_on_primitives(&h, &l).unwrap();
            assert!(r.passed(), "{:?}", r.first_violation());
        }
        let a = u3.carrier();
        let x = enveloping(&l1z3(), 2, &l).unwrap().eta().apply(&[1]);
        assert_eq!(u3.antipode.apply(&x), a.act(2, &x));
        // The unit is invertible but S fixes it, so S ≠ −id on Inv(H).
        let one = u3.bimonoid.monoid.unit().clone();
        assert_eq!(u3.antipode.apply(&one), one);
        assert_ne!(a.neg(&one), Some(one));
    }

    #[test]
    fn primitive_brackets() {
        let l = Limits::default();
        let pb = p_bar(&x2(), &l).unwrap();
        assert!(pb.lie.bracket().eval(&[1], &[1]).iter().all(|&c| c == 0));
        assert!(check_p_bar(&x2(), &l).unwrap().passed());
        assert!(check_p_bar(&g2(), &l).unwrap().passed());

        let e = enveloping(&l2(), 2, &l).unwrap();
        let u = e.hopf().unwrap();
        let r = check_p_bar(&u, &l).unwrap();
        assert!(r.passed(), "{:?}", r.first_violation());
        let pb = p_bar(&u, &l).unwrap();
        let c = |v: &[u32]| pb.prim.corestrict(&e.eta().apply(v)).unwrap();
        assert_eq!(pb.lie.br(&c(&[1, 0]), &c(&[0, 1])), Some(c(&[0, 1])));
        let eta = Hom::from_fn(l2().carrier(), &pb.prim.object, |v| c(v));
        assert!(crate::lie::is_lie_morphism(&eta, &l2(), &pb.lie));
    }

    #[test]
    fn bimonoid_morphisms_preserve_primitives() {
        let l = Limits::default();
        for h in [x2(), g2()] {
            let p = primitives(&h.bimonoid, &l).unwrap();
            let ends: Vec<Hom> = enumerate_homs(h.carrier(), h.carrier(), &l)
                .unwrap()
                .into_iter()
                .filter(|f| bimonoid_morphism_report(f, &h.bimonoid, &h.bimonoid).passed())
                .collect();
            assert!(!ends.is_empty());
            for f in ends {
                prim_map(&f, &p, &p).unwrap();
            }
        }
    }

    #[test]
    fn adjunction_counts() {
        let l = Limits::default();
        let triv = LieObject::abelian(&Arc::new(FinSemimodule::trivial(l1().carrier().base())));
        for (lie, h, n) in [(l1(), x2(), 2), (l2(), x2(), 2), (triv.clone(), x2(), 1), (triv, g2(), 1), (l1(), g2(), 1)]
        {
            let adj = adjunction_check(&lie, &h, 2, &l).unwrap();
            assert!(adj.conclusive);
            assert!(adj.report.passed(), "{:?}", adj.report.first_violation());
            assert_eq!((adj.lie_morphisms.len(), adj.hopf_morphisms.len()), (n, n));
        }
        let adj = adjunction_check(&l2(), &x2(), 2, &l).unwrap();
        let pb = p_bar(&x2(), &l).unwrap();
        for f in &adj.lie_morphisms {
            assert!(pb.prim.object.is_zero(&f.apply(&[0, 1])));
        }
        let tight = Limits { enum_budget: 1, ..Limits::default() };
        assert!(!adjunction_check(&l1(), &x2(), 2, &tight).unwrap().conclusive);
    }
}
