//! The enveloping monoid `U≤d L`: the tensor bimonoid on `L` modulo the
//! congruence generated by `w·x·y·w' ~ w·y·x·w' + w·[x,y]·w'`.
//!
//! The bracket term sits one degree below the others, so the congruence is
//! filtered rather than graded. Every class is represented by a lift of
//! least degree, and a product of classes is defined when the degrees of
//! their lifts add up to at most `d`.

mod engine;
mod universal;

use std::sync::Arc;

pub use engine::{envelope_engines, ClosureEngine, EnvelopeEngine, LinearEngine, Piece};
pub use universal::{
    check_universal_property, induced_map, multiplicative_homs, stability_check, universal_factorization,
};

use crate::abelian::is_abelian;
use crate::lie::{is_lie_morphism, lie_of_monoid, LieObject};
use crate::limits::Limits;
use crate::monoidal::{check_bimonoid, BimonoidObject, ComonoidObject, HopfObject, MonoidObject};
use crate::report::{witness, ValidationReport};
use crate::semimodule::{Elem, FinSemimodule, Hom};
use crate::tensor::{tensor, Bimorphism};
use crate::tensor_algebra::{truncated_tensor_algebra, GradedBimonoid, Word};
use crate::{Error, Result};

/// `T≤d L`, its quotient and least-degree lifts.
#[derive(Clone, Debug)]
struct Graded {
    tensor: GradedBimonoid,
    piece: Piece,
}

impl Graded {
    fn quotient(&self) -> &Arc<FinSemimodule> {
        &self.piece.object
    }

    fn q(&self) -> &Hom {
        &self.piece.q
    }

    fn degree_of(&self, u: &[u32]) -> usize {
        let c = self.quotient();
        (0..u.len())
            .filter(|&b| u[b] != c.block(b).zero())
            .map(|b| self.piece.lift_degree[b][u[b] as usize])
            .max()
            .unwrap_or(0)
    }

    fn lift(&self, u: &[u32]) -> Elem {
        self.piece.lift(u)
    }

    fn bimonoid(&self, limits: &Limits) -> Result<BimonoidObject> {
        let u = self.quotient();
        let (t, q) = (&self.tensor, self.q());
        let d = t.degree();
        let mult = Bimorphism::from_partial_fn(u, u, u, |x, y| {
            if u.is_zero(x) || u.is_zero(y) {
                return Some(u.zero());
            }
            if self.degree_of(x) + self.degree_of(y) > d {
                return None;
            }
            Some(q.apply(&t.monoid().mul(&self.lift(x), &self.lift(y))?))
        })
        .validated()?;
        let unit = q.apply(t.monoid().unit());
        let square = tensor(u, u, limits)?;
        let qq = t.comonoid().square().map(q, q, &square)?;
        let comult =
            Hom::from_fn(u, square.object(), |x| qq.apply(&t.comonoid().comult().apply(&self.lift(x)))).validated()?;
        let f1 = t.comonoid().counit().target().clone();
        let counit = Hom::from_fn(u, &f1, |x| t.comonoid().counit().apply(&self.lift(x)));
        BimonoidObject::new(MonoidObject::new(mult, unit)?, ComonoidObject::new(square, comult, counit)?)
    }
}

#[derive(Clone, Debug)]
pub struct EnvelopeObject {
    lie: LieObject,
    /// Engine used, or `"identity"` when there were no seeds.
    engine: &'static str,
    g: Graded,
    bimonoid: BimonoidObject,
    eta: Hom,
}

pub fn enveloping(l: &LieObject, degree: usize, limits: &Limits) -> Result<EnvelopeObject> {
    enveloping_with(l, degree, None, limits)
}

/// All words of length `n` over `letters`.
fn words_of_length(letters: &[Elem], n: usize) -> Vec<Vec<Elem>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.iter()
            .flat_map(|w| {
                letters.iter().map(move |a| {
                    let mut w = w.clone();
                    w.push(a.clone());
                    w
                })
            })
            .collect()
    })
}

/// `w·x·y·w' ~ w·y·x·w' + w·[x,y]·w'` for letters `x, y` and words `w, w'`.
fn seeds(l: &LieObject, t: &GradedBimonoid) -> Vec<(Elem, Elem)> {
    let d = t.degree();
    let a = l.carrier();
    let one = a.base().one();
    let letters: Vec<Elem> = a.spanning_elements().into_iter().filter(|x| !a.is_zero(x)).collect();
    let mut out = vec![];
    let elem = |parts: &[&[Elem]]| t.word_elem(&Word { coef: one, letters: parts.concat() });
    for left in 0..=d.saturating_sub(2) {
        for right in 0..=d - 2 - left {
            for w in words_of_length(&letters, left) {
                for w2 in words_of_length(&letters, right) {
                    for x in &letters {
                        for y in &letters {
                            let xy = [x.clone(), y.clone()];
                            let yx = [y.clone(), x.clone()];
                            let br = [l.br(x, y).expect("total bracket")];
                            let lhs = elem(&[&w, &xy, &w2]);
                            let rhs = t.carrier().add(&elem(&[&w, &yx, &w2]), &elem(&[&w, &br, &w2]));
                            out.push((lhs, rhs));
                        }
                    }
                }
            }
        }
    }
    out
}

/// `U≤d L` using the named engine for every seeded degree, or the first
/// applicable one when `engine` is `None`.
pub fn enveloping_with(l: &LieObject, degree: usize, engine: Option<&str>, limits: &Limits) -> Result<EnvelopeObject> {
    if degree < 2 {
        return Err(Error::InvalidParameter(
            "the envelope relation lives in degree 2; the bound must be at least 2".into(),
        ));
    }
    l.bracket().require_total("the envelope")?;
    let registry = envelope_engines();
    let forced = engine.map(|e| registry.get(e)).transpose()?;
    let t = truncated_tensor_algebra(l.carrier(), degree, limits)?;
    let tc = t.carrier();
    let block_degree: Vec<usize> = (0..tc.num_blocks()).map(|b| t.block_degree(b)).collect();
    let s = seeds(l, &t);
    let (piece, engine) = if s.is_empty() {
        (Piece::identity(tc, &block_degree), "identity")
    } else {
        let e = match forced {
            Some(e) if e.applies(tc) => e,
            Some(e) => return Err(Error::InvalidParameter(format!("envelope engine `{}` does not apply", e.name()))),
            None => registry.iter().find(|e| e.applies(tc)).expect("closure applies everywhere"),
        };
        (e.quotient(tc, &block_degree, &s, limits)?, e.name())
    };
    let g = Graded { tensor: t, piece };
    let bimonoid = g.bimonoid(limits)?;
    let e = EnvelopeObject { lie: l.clone(), eta: g.tensor.iota1().then(g.q()), engine, g, bimonoid };
    e.check_descends()?;
    Ok(e)
}

impl EnvelopeObject {
    pub fn lie(&self) -> &LieObject {
        &self.lie
    }

    pub fn degree(&self) -> usize {
        self.g.tensor.degree()
    }

    pub fn tensor(&self) -> &GradedBimonoid {
        &self.g.tensor
    }

    pub fn engine(&self) -> &'static str {
        self.engine
    }

    pub fn quotient(&self) -> &Arc<FinSemimodule> {
        self.g.quotient()
    }

    pub fn q(&self) -> &Hom {
        self.g.q()
    }

    pub fn eta(&self) -> &Hom {
        &self.eta
    }

    pub fn bimonoid(&self) -> &BimonoidObject {
        &self.bimonoid
    }

    pub fn monoid(&self) -> &MonoidObject {
        &self.bimonoid.monoid
    }

    pub fn comonoid(&self) -> &ComonoidObject {
        &self.bimonoid.comonoid
    }

    pub fn piece(&self) -> &Piece {
        &self.g.piece
    }

    /// Size of the image of `T≤n L`: classes whose lifts have degree at most `n`.
    pub fn filtration_size(&self, n: usize) -> u128 {
        self.g.piece.lift_degree.iter().map(|b| b.iter().filter(|&&k| k <= n).count() as u128).product()
    }

    /// Degree of the least-degree lift.
    pub fn degree_of(&self, u: &[u32]) -> usize {
        self.g.degree_of(u)
    }

    /// Whether `x` and `y` in `T≤d L` are identified.
    pub fn related(&self, x: &[u32], y: &[u32]) -> bool {
        self.g.q().apply(x) == self.g.q().apply(y)
    }

    /// A preimage in `T≤d L` of a quotient element.
    pub fn lift(&self, u: &[u32]) -> Elem {
        self.g.lift(u)
    }

    /// Bug trap: the structure maps of `T≤d L` must descend along `q`.
    fn check_descends(&self) -> Result<()> {
        let r = self.descent_report();
        match r.first_violation() {
            Some(v) => Err(Error::Internal(format!("envelope structure does not descend: {v}"))),
            None => Ok(()),
        }
    }

    /// `q` is multiplicative, `(q⊗q)∘μ = δ∘q` and `υ∘q = ε`.
    pub fn descent_report(&self) -> ValidationReport {
        let (t, q) = (&self.g.tensor, self.g.q());
        let tc = t.carrier();
        let (m, c) = (self.monoid(), self.comonoid());
        let span = tc.spanning_elements();
        let n = |x: &Elem| tc.name(x);
        let mut r = ValidationReport::new("envelope quotient");
        r.law(
            "q.multiplicative",
            span.iter().flat_map(|x| span.iter().map(move |y| (x, y))).filter_map(|(x, y)| {
                let xy = t.monoid().mul(x, y)?;
                Some(witness(m.mul(&q.apply(x), &q.apply(y)) == Some(q.apply(&xy)), || format!("{}·{}", n(x), n(y))))
            }),
        );
        r.law("q.unit", [witness(q.apply(t.monoid().unit()) == *m.unit(), || "1".into())]);
        let sq = c.square();
        r.law(
            "comult.descends",
            span.iter().map(|x| {
                let lhs: Vec<Elem> =
                    t.comonoid().split(x).iter().map(|(a, b)| sq.pure(&q.apply(a), &q.apply(b))).collect();
                witness(sq.object().sum(&lhs) == c.comult().apply(&q.apply(x)), || n(x))
            }),
        );
        r.law(
            "counit.descends",
            span.iter().map(|x| witness(c.counit_scalar(&q.apply(x)) == t.comonoid().counit_scalar(x), || n(x))),
        );
        r
    }

    /// `S(q w) = q(S_T w)`; needs `L` abelian.
    pub fn antipode(&self) -> Result<Hom> {
        if !is_abelian(self.lie.carrier()) {
            return Err(Error::Precondition("the envelope antipode needs an abelian Lie object".into()));
        }
        let st = self.g.tensor.antipode()?;
        let u = self.g.quotient();
        let s = Hom::from_fn(u, u, |x| self.g.q().apply(&st.apply(&self.lift(x)))).validated()?;
        let tc = self.g.tensor.carrier();
        if let Some(x) =
            tc.spanning_elements().iter().find(|x| s.apply(&self.g.q().apply(x)) != self.g.q().apply(&st.apply(x)))
        {
            return Err(Error::Internal(format!("antipode does not descend at {}", tc.name(x))));
        }
        Ok(s)
    }

    pub fn hopf(&self) -> Result<HopfObject> {
        HopfObject::new(self.bimonoid.clone(), self.antipode()?)
    }

    /// `η` corestricted to `Inv(U)`, as a candidate Lie morphism.
    pub fn eta_into_lie(&self) -> Result<(Hom, LieObject)> {
        let (lie_u, sub) = lie_of_monoid(self.monoid())?;
        let mut outside = None;
        let h = Hom::from_fn(self.lie.carrier(), lie_u.carrier(), |x| {
            let y = self.eta.apply(x);
            sub.corestrict(&y).unwrap_or_else(|| {
                outside = Some(self.g.quotient().name(&y));
                lie_u.carrier().zero()
            })
        });
        match outside {
            Some(y) => Err(Error::Precondition(format!("η reaches the non-invertible element {y}"))),
            None => Ok((h, lie_u)),
        }
    }
}

/// Descent laws, the bimonoid laws on `U≤d L`, and `η` being a Lie
/// morphism when `L` is abelian.
pub fn check_envelope(e: &EnvelopeObject, limits: &Limits) -> Result<ValidationReport> {
    let mut r = ValidationReport::new("envelope");
    r.absorb("quotient", e.descent_report());
    r.absorb("bimonoid", check_bimonoid(&e.bimonoid, limits)?);
    if is_abelian(e.lie.carrier()) {
        let ok = match e.eta_into_lie() {
            Ok((h, lie_u)) => is_lie_morphism(&h, &e.lie, &lie_u),
            Err(_) => false,
        };
        r.law("eta.lie_morphism", [witness(ok, || "η".into())]);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::engine::{ClosureEngine, EnvelopeEngine, LinearEngine, Piece};
    use super::*;
    use crate::lie::enumerate_lie_morphisms;
    use crate::lie::tests::{dual_numbers, l1, l2, upper_triangular};
    use crate::monoidal::{check_hopf, convolution};

    fn word(e: &EnvelopeObject, letters: &[usize]) -> Elem {
        let a = e.lie().carrier();
        let one = a.base().one();
        e.tensor().word_elem(&Word { coef: one, letters: letters.iter().map(|&i| a.inject(i, one)).collect() })
    }

    #[test]
    fn abelian_line_adds_no_identifications() {
        let l = Limits::default();
        let e = enveloping(&l1(), 2, &l).unwrap();
        assert_eq!(e.quotient().size(), 8);
        assert_eq!(e.quotient().size(), e.tensor().carrier().size());
        assert!(check_envelope(&e, &l).unwrap().passed());
    }

    #[test]
    fn two_dimensional_bracket_collapses_one_direction() {
        let l = Limits::default();
        let e = enveloping(&l2(), 2, &l).unwrap();
        assert_eq!(e.quotient().size(), 1 << 6);
        let (xy, yx, y) = (word(&e, &[0, 1]), word(&e, &[1, 0]), word(&e, &[1]));
        assert!(e.related(&xy, &e.tensor().carrier().add(&yx, &y)));
        assert!(!e.related(&xy, &yx));
        let br = l2().br(&[1, 0], &[0, 1]).unwrap();
        assert_eq!(e.eta().apply(&br), e.eta().apply(&[0, 1]));
        let r = check_envelope(&e, &l).unwrap();
        assert!(r.passed(), "{:?}", r.first_violation());
        let e3 = enveloping(&l2(), 3, &l).unwrap();
        assert_eq!(e3.quotient().size(), 1 << 10);
        assert!(check_envelope(&e3, &l).unwrap().passed());
    }

    #[test]
    fn trivial_lie_object_envelope_is_the_unit() {
        let l = Limits::default();
        let triv = Arc::new(FinSemimodule::trivial(l1().carrier().base()));
        let e = enveloping(&LieObject::abelian(&triv), 3, &l).unwrap();
        assert_eq!(e.quotient().size(), 2);
        assert_eq!(e.eta().apply(&triv.zero()), e.quotient().zero());
    }

    #[test]
    fn degree_bound_below_two_is_rejected() {
        assert!(matches!(enveloping(&l1(), 1, &Limits::default()), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn engines_agree() {
        let l = Limits::with_cap(1 << 17);
        for (lie, d) in [(l1(), 2), (l1(), 3), (l2(), 2), (l2(), 3)] {
            let t = truncated_tensor_algebra(lie.carrier(), d, &l).unwrap();
            let tc = t.carrier();
            let bd: Vec<usize> = (0..tc.num_blocks()).map(|b| t.block_degree(b)).collect();
            let s = seeds(&lie, &t);
            let lin = LinearEngine.quotient(tc, &bd, &s, &l).unwrap();
            let clo = ClosureEngine.quotient(tc, &bd, &s, &l).unwrap();
            assert_eq!(lin.object.size(), clo.object.size());
            for x in tc.elements(&l).unwrap() {
                assert_eq!(lin.object.is_zero(&lin.q.apply(&x)), clo.object.is_zero(&clo.q.apply(&x)));
            }
            let max = |p: &Piece| p.lift_degree.iter().flatten().copied().max();
            assert_eq!(max(&lin), max(&clo));
        }
        let lie = LieObject::abelian(&crate::semimodule::chain(3));
        assert!(matches!(enveloping_with(&lie, 2, Some("linear"), &l), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn antipode_on_the_envelope() {
        let l = Limits::default();
        let e = enveloping(&l2(), 2, &l).unwrap();
        let s = e.antipode().unwrap();
        let one = e.monoid().unit().clone();
        assert_eq!(s.apply(&one), one);
        let q = |x: &Elem| e.q().apply(x);
        assert_eq!(s.apply(&q(&word(&e, &[0, 1]))), q(&word(&e, &[1, 0])));
        assert!(check_hopf(&e.hopf().unwrap(), &l).unwrap().passed());

        let e1 = enveloping(&l1(), 2, &l).unwrap();
        let s1 = e1.antipode().unwrap();
        let conv = convolution(&s1, &Hom::identity(e1.quotient()), e1.comonoid(), e1.monoid()).unwrap();
        let els = e1.quotient().elements(&l).unwrap();
        assert_eq!(els.len(), 8);
        for u in els {
            assert_eq!(conv.apply(&u), e1.monoid().unit_times(e1.comonoid().counit_scalar(&u)));
        }
    }

    #[test]
    fn factorizations_into_dual_numbers() {
        let l = Limits::default();
        let m = dual_numbers();
        let e = enveloping(&l1(), 2, &l).unwrap();
        let (lie_m, _) = lie_of_monoid(&m).unwrap();
        let zero = Hom::zero(l1().carrier(), lie_m.carrier());
        let ft = universal_factorization(&e, &m, &zero).unwrap();
        for u in e.quotient().elements(&l).unwrap() {
            assert_eq!(ft.apply(&u), m.unit_times(e.comonoid().counit_scalar(&u)));
        }
        // x ↦ x: the square of x goes to x² = 0.
        let f = Hom::linear(l1().carrier(), lie_m.carrier(), |_| vec![0, 1]).unwrap();
        let ft = universal_factorization(&e, &m, &f).unwrap();
        assert!(m.carrier().is_zero(&ft.apply(&e.q().apply(&word(&e, &[0, 0])))));
        assert_eq!(ft.apply(&e.eta().apply(&[1])), vec![0, 1]);
    }

    #[test]
    fn universal_property_on_small_targets() {
        let l = Limits::default();
        for (lie, d) in [(l1(), 2), (l1(), 3), (l2(), 2), (l2(), 3)] {
            let e = enveloping(&lie, d, &l).unwrap();
            for m in [dual_numbers(), upper_triangular()] {
                let r = check_universal_property(&e, &m, &l).unwrap();
                assert!(r.passed(), "{:?}", r.first_violation());
                let (lie_m, _) = lie_of_monoid(&m).unwrap();
                let n = enumerate_lie_morphisms(&lie, &lie_m, &l).unwrap().len();
                assert_eq!(multiplicative_homs(&e, &m, &l).unwrap().len(), n);
            }
        }
    }

    #[test]
    fn stability_from_two_to_three() {
        let l = Limits::default();
        for lie in [l1(), l2()] {
            let r = stability_check(&lie, 2, &l).unwrap();
            assert!(r.passed(), "{:?}", r.first_violation());
        }
    }

    #[test]
    fn envelope_is_functorial() {
        let l = Limits::default();
        let (e2, e1) = (enveloping(&l2(), 2, &l).unwrap(), enveloping(&l1(), 2, &l).unwrap());
        let maps = enumerate_lie_morphisms(&l2(), &l1(), &l).unwrap();
        assert_eq!(maps.len(), 2);
        for f in &maps {
            let uf = induced_map(&e2, &e1, f).unwrap();
            assert_eq!(e2.eta().then(&uf), f.then(e1.eta()));
        }
        let not_lie = Hom::linear(l2().carrier(), l1().carrier(), |_| vec![1]).unwrap();
        assert!(matches!(induced_map(&e2, &e1, &not_lie), Err(Error::Precondition(_))));
    }
}
