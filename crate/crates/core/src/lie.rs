//! Lie objects: a carrier with an alternating bracket satisfying Jacobi.

use std::sync::Arc;

use crate::abelian::{inv, InvSubobject};
use crate::limits::Limits;
use crate::monoidal::MonoidObject;
use crate::report::{witness, ValidationReport};
use crate::semimodule::{enumerate_homs, Elem, FinSemimodule, Hom};
use crate::tensor::Bimorphism;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct LieObject {
    bracket: Bimorphism,
}

impl LieObject {
    pub fn new(bracket: Bimorphism) -> Result<Self> {
        let c = bracket.target();
        if !(bracket.left().same_as(c) && bracket.right().same_as(c)) {
            return Err(Error::Mismatch("bracket must be L × L → L".into()));
        }
        Ok(LieObject { bracket })
    }

    /// The zero bracket on `a`.
    pub fn abelian(a: &Arc<FinSemimodule>) -> Self {
        LieObject { bracket: Bimorphism::zero(a, a, a) }
    }

    pub fn carrier(&self) -> &Arc<FinSemimodule> {
        self.bracket.target()
    }

    pub fn bracket(&self) -> &Bimorphism {
        &self.bracket
    }

    pub fn br(&self, x: &[u32], y: &[u32]) -> Option<Elem> {
        self.bracket.apply(x, y)
    }
}

/// Bimorphism laws, `[x,x] = 0` and Jacobi.
///
/// `[x,x] = 0` for a sum of block components is equivalent to the
/// in-block identity together with `[v,w] + [w,v] = 0` across blocks, and
/// Jacobi is trilinear, so spanning elements suffice. Undefined brackets
/// (from degree truncation) are skipped.
pub fn check_lie(l: &LieObject) -> ValidationReport {
    let mut rep = ValidationReport::new("lie");
    rep.absorb("bracket", l.bracket.check());
    if !rep.passed() {
        return rep;
    }
    let a = l.carrier();
    let zero_or_undef = |v: Option<Elem>| v.is_none_or(|v| a.is_zero(&v));
    let in_block = (0..a.num_blocks()).flat_map(|i| a.block(i).elements().map(move |v| a.inject(i, v)));
    let span = a.spanning_elements();
    let span = &span;
    let ok = rep.law(
        "alternating",
        in_block.map(|x| witness(zero_or_undef(l.br(&x, &x)), || format!("[{0}, {0}]", a.name(&x)))),
    ) && rep.law(
        "alternating.cross_block",
        span.iter().flat_map(|x| span.iter().map(move |y| (x, y))).filter(|(x, y)| block_of(x) != block_of(y)).map(
            |(x, y)| {
                let s = l.br(x, y).zip(l.br(y, x)).map(|(p, q)| a.add(&p, &q));
                witness(zero_or_undef(s), || format!("[{0}, {1}] + [{1}, {0}]", a.name(x), a.name(y)))
            },
        ),
    );
    if !ok {
        return rep;
    }
    rep.law(
        "jacobi",
        span.iter().flat_map(|x| span.iter().flat_map(move |y| span.iter().map(move |z| (x, y, z)))).map(
            |(x, y, z)| {
                let term = |p: &Elem, q: &Elem, r: &Elem| l.br(q, r).and_then(|qr| l.br(p, &qr));
                let s = (|| Some(a.sum([&term(x, y, z)?, &term(y, z, x)?, &term(z, x, y)?])))();
                witness(zero_or_undef(s), || format!("({}, {}, {})", a.name(x), a.name(y), a.name(z)))
            },
        ),
    );
    rep
}

/// The single nonzero block of a spanning element, if any.
fn block_of(x: &[u32]) -> Option<usize> {
    x.iter().position(|&v| v != 0)
}

/// The commutator bracket `[a,b] = m(a,b) + (−m(b,a))` on `Inv(M)`.
pub fn lie_of_monoid(m: &MonoidObject) -> Result<(LieObject, InvSubobject)> {
    let parent = m.carrier();
    let sub = inv(parent);
    let emb = &sub.embedding;
    let mut missing = None;
    let bracket = Bimorphism::from_partial_fn(&sub.object, &sub.object, &sub.object, |x, y| {
        let (x, y) = (emb.apply(x), emb.apply(y));
        let (p, q) = (m.mul(&x, &y)?, m.mul(&y, &x)?);
        let v = parent.add(&p, &parent.neg(&q)?);
        let r = sub.corestrict(&v);
        if r.is_none() {
            missing = Some(parent.name(&v));
        }
        r
    });
    if let Some(v) = missing {
        return Err(Error::Internal(format!("commutator {v} is not invertible")));
    }
    Ok((LieObject::new(bracket)?, sub))
}

/// `f([x,y]) = [f x, f y]` wherever the source bracket is defined.
pub fn is_lie_morphism(f: &Hom, l: &LieObject, l2: &LieObject) -> bool {
    let span = l.carrier().spanning_elements();
    span.iter().all(|x| {
        span.iter().all(|y| match l.br(x, y) {
            None => true,
            Some(v) => l2.br(&f.apply(x), &f.apply(y)) == Some(f.apply(&v)),
        })
    })
}

pub fn enumerate_lie_morphisms(l: &LieObject, l2: &LieObject, limits: &Limits) -> Result<Vec<Hom>> {
    Ok(enumerate_homs(l.carrier(), l2.carrier(), limits)?.into_iter().filter(|f| is_lie_morphism(f, l, l2)).collect())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::abelian::{is_abelian, restrict_hom_to_inv};
    use crate::semimodule::{chain, free};
    use crate::semiring::{builtin, Builtin};

    pub(crate) fn free_mod(b: Builtin, n: usize) -> Arc<FinSemimodule> {
        Arc::new(free(&Arc::new(builtin(b).unwrap()), n, &Limits::default()).unwrap())
    }

    /// Structure constants `c[i][j]` as coefficient vectors.
    pub(crate) fn bilinear(a: &Arc<FinSemimodule>, c: &[&[&[u32]]]) -> Bimorphism {
        Bimorphism::bilinear(a, a, a, |i, j| c[i][j].to_vec()).unwrap()
    }

    pub(crate) fn l1() -> LieObject {
        LieObject::abelian(&free_mod(Builtin::ZMod(2), 1))
    }

    /// `[x,y] = [y,x] = y` over `Z/2`.
    pub(crate) fn l2() -> LieObject {
        let a = free_mod(Builtin::ZMod(2), 2);
        LieObject::new(bilinear(&a, &[&[&[0, 0], &[0, 1]], &[&[0, 1], &[0, 0]]])).unwrap()
    }

    /// Upper-triangular 2×2 matrices over `Z/2`, basis `E11, E12, E22`.
    pub(crate) fn upper_triangular() -> MonoidObject {
        let a = free_mod(Builtin::ZMod(2), 3);
        let e = |k: usize| -> &'static [u32] { [&[1, 0, 0][..], &[0, 1, 0], &[0, 0, 1], &[0, 0, 0]][k] };
        let z = 3;
        let table: [[usize; 3]; 3] = [[0, 1, z], [z, z, 1], [z, z, 2]];
        MonoidObject::new(Bimorphism::bilinear(&a, &a, &a, |i, j| e(table[i][j]).to_vec()).unwrap(), vec![1, 0, 1])
            .unwrap()
    }

    /// Dual numbers `Z/2[x]/(x²)`, basis `1, x`.
    pub(crate) fn dual_numbers() -> MonoidObject {
        let a = free_mod(Builtin::ZMod(2), 2);
        let c: [[&[u32]; 2]; 2] = [[&[1, 0], &[0, 1]], [&[0, 1], &[0, 0]]];
        MonoidObject::new(Bimorphism::bilinear(&a, &a, &a, |i, j| c[i][j].to_vec()).unwrap(), vec![1, 0]).unwrap()
    }

    #[test]
    fn l1_and_l2_are_lie() {
        assert!(check_lie(&l1()).passed());
        assert!(check_lie(&l2()).passed());
    }

    #[test]
    fn square_bracket_violates_alternation() {
        let a = free_mod(Builtin::ZMod(2), 2);
        let bad = LieObject::new(bilinear(&a, &[&[&[0, 1], &[0, 1]], &[&[0, 1], &[0, 0]]])).unwrap();
        let r = check_lie(&bad);
        assert_eq!(r.violations().next().unwrap().law, "alternating");
    }

    #[test]
    fn jacobi_violation_is_found() {
        // Antisymmetric with [x,y] = x, [y,z] = y, [z,x] = z; the Jacobi sum is x + y + z.
        let a = free_mod(Builtin::ZMod(3), 3);
        let n = |v: [u32; 3]| v.map(|c| (3 - c) % 3);
        let (x, y, z, o) = ([1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]);
        let c = [[o, x, n(z)], [n(x), o, y], [z, n(y), o]];
        let b = Bimorphism::bilinear(&a, &a, &a, |i, j| c[i][j].to_vec()).unwrap();
        let r = check_lie(&LieObject::new(b).unwrap());
        assert_eq!(r.violations().next().unwrap().law, "jacobi");
    }

    #[test]
    fn upper_triangular_commutator() {
        let m = upper_triangular();
        let (lie, sub) = lie_of_monoid(&m).unwrap();
        assert!(check_lie(&lie).passed());
        assert!(is_abelian(lie.carrier()));
        let e11 = sub.corestrict(&[1, 0, 0]).unwrap();
        let e12 = sub.corestrict(&[0, 1, 0]).unwrap();
        assert_eq!(lie.br(&e11, &e12), Some(e12));
    }

    #[test]
    fn commutative_monoid_has_zero_bracket() {
        let (lie, _) = lie_of_monoid(&dual_numbers()).unwrap();
        let span = lie.carrier().spanning_elements();
        assert!(span.iter().all(|x| span.iter().all(|y| lie.carrier().is_zero(&lie.br(x, y).unwrap()))));
    }

    #[test]
    fn boolean_algebra_has_zero_lie_object() {
        let c = chain(3);
        let m = MonoidObject::new(Bimorphism::from_fn(&c, &c, &c, |x, y| vec![x[0].min(y[0])]), vec![2]).unwrap();
        let (lie, _) = lie_of_monoid(&m).unwrap();
        assert_eq!(lie.carrier().size(), 1);
        assert!(check_lie(&lie).passed());
    }

    #[test]
    fn lie_morphism_counts() {
        let l = Limits::default();
        let triv = LieObject::abelian(&Arc::new(FinSemimodule::trivial(l1().carrier().base())));
        assert_eq!(enumerate_lie_morphisms(&l2(), &triv, &l).unwrap().len(), 1);
        let ends = enumerate_lie_morphisms(&l1(), &l1(), &l).unwrap();
        assert_eq!(ends.len(), 2);
        assert!(ends.contains(&Hom::identity(l1().carrier())));
        let (x2, _) = lie_of_monoid(&dual_numbers()).unwrap();
        // Every linear map into an abelian bracket is a Lie morphism.
        assert_eq!(enumerate_lie_morphisms(&l1(), &x2, &l).unwrap().len(), 4);
        // L2 → L1 must kill y = [x,y].
        assert_eq!(enumerate_lie_morphisms(&l2(), &l1(), &l).unwrap().len(), 2);
    }

    #[test]
    fn restriction_of_monoid_morphisms_is_a_lie_morphism() {
        let l = Limits::default();
        let (m, n) = (upper_triangular(), upper_triangular());
        let (lm, sm) = lie_of_monoid(&m).unwrap();
        let (ln, sn) = lie_of_monoid(&n).unwrap();
        let mut seen = 0;
        for f in enumerate_homs(m.carrier(), n.carrier(), &l).unwrap() {
            let span = m.carrier().spanning_elements();
            let multiplicative = f.apply(m.unit()) == *n.unit()
                && span.iter().all(|x| {
                    span.iter().all(|y| f.apply(&m.mul(x, y).unwrap()) == n.mul(&f.apply(x), &f.apply(y)).unwrap())
                });
            if multiplicative {
                seen += 1;
                let r = restrict_hom_to_inv(&f, &sm, &sn).unwrap();
                assert!(is_lie_morphism(&r, &lm, &ln));
            }
        }
        assert!(seen >= 1);
    }
}
