//! The tensor bimonoid `T≤d A = F1 ⊕ A ⊕ A⊗A ⊕ … ⊕ A^{⊗d}`, truncated at
//! degree `d`.
//!
//! Products of total degree above `d` are undefined rather than zero. The
//! comultiplication is the unshuffle sum, which preserves degree and so is
//! total; it is cross-checked against multiplicativity on construction.

use std::sync::Arc;

use crate::abelian::is_abelian;
use crate::limits::Limits;
use crate::monoidal::{BimonoidObject, ComonoidObject, HopfObject, MonoidObject};
use crate::report::{witness, ValidationReport};
use crate::semimodule::{Elem, FinSemimodule, Hom};
use crate::tensor::{tensor, Bimorphism, TensorObject};
use crate::{Error, Result};

/// A scalar multiple of a word of letters from `A`; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub coef: u32,
    pub letters: Vec<Elem>,
}

/// Components, their placement in the carrier and pure-word expansions.
#[derive(Clone, Debug)]
struct Layout {
    carrier: Arc<FinSemimodule>,
    components: Vec<Arc<FinSemimodule>>,
    /// `powers[n] = A^{⊗(n-1)} ⊗ A` for `n ≥ 2`.
    powers: Vec<Option<TensorObject>>,
    offsets: Vec<usize>,
    block_degree: Vec<usize>,
    /// Pure-word expansion of every block-local element of the carrier.
    words: Vec<Vec<Vec<Word>>>,
}

fn word_label(component: &FinSemimodule, n: usize, k: usize) -> String {
    match (n, component.display_label(k)) {
        (0, _) => "1".to_string(),
        (_, Some(l)) => l.replace('⊗', "·"),
        (_, None) if component.num_blocks() == 1 => format!("d{n}"),
        (_, None) => format!("d{n}.{k}"),
    }
}

impl Layout {
    fn new(a: &Arc<FinSemimodule>, degree: usize, limits: &Limits) -> Result<Self> {
        let base = a.base();
        let mut components = vec![Arc::new(FinSemimodule::unit(base))];
        let mut powers = vec![None];
        if degree >= 1 {
            components.push(a.clone());
            powers.push(None);
        }
        for n in 2..=degree {
            let t = tensor(&components[n - 1], a, limits)?;
            components.push(t.object().clone());
            powers.push(Some(t));
        }
        let (mut blocks, mut labels, mut offsets, mut block_degree) = (vec![], vec![], vec![], vec![]);
        for (n, c) in components.iter().enumerate() {
            offsets.push(blocks.len());
            for k in 0..c.num_blocks() {
                blocks.push(c.blocks()[k].clone());
                labels.push(Some(word_label(c, n, k)));
                block_degree.push(n);
            }
        }
        let carrier = Arc::new(FinSemimodule::new(base.clone(), blocks, labels));
        let mut l = Layout { carrier, components, powers, offsets, block_degree, words: vec![] };
        l.words = (0..l.carrier.num_blocks())
            .map(|b| l.carrier.block(b).elements().map(|v| l.expand(b, v)).collect())
            .collect();
        Ok(l)
    }

    fn embed(&self, n: usize, z: &[u32]) -> Elem {
        let mut x = self.carrier.zero();
        x[self.offsets[n]..self.offsets[n] + z.len()].copy_from_slice(z);
        x
    }

    fn project(&self, n: usize, x: &[u32]) -> Elem {
        x[self.offsets[n]..self.offsets[n] + self.components[n].num_blocks()].to_vec()
    }

    fn word_elem(&self, w: &Word) -> Elem {
        let Some((first, rest)) = w.letters.split_first() else {
            return self.carrier.inject(0, w.coef);
        };
        let mut z = first.clone();
        for (k, a) in rest.iter().enumerate() {
            z = self.powers[k + 2].as_ref().expect("power built").pure(&z, a);
        }
        self.carrier.act(w.coef, &self.embed(w.letters.len(), &z))
    }

    fn words_of(&self, x: &[u32]) -> Vec<Word> {
        x.iter().enumerate().flat_map(|(b, &v)| self.words[b][v as usize].iter().cloned()).collect()
    }

    fn expand(&self, b: usize, v: u32) -> Vec<Word> {
        let c = &self.carrier;
        if v == c.block(b).zero() {
            return vec![];
        }
        let n = self.block_degree[b];
        if n == 0 {
            return vec![Word { coef: v, letters: vec![] }];
        }
        let z = self.project(n, &c.inject(b, v));
        self.component_words(n, &z).into_iter().map(|letters| Word { coef: c.base().one(), letters }).collect()
    }

    /// Letter sequences whose pure tensors sum to `z ∈ A^{⊗n}`, `n ≥ 1`.
    fn component_words(&self, n: usize, z: &[u32]) -> Vec<Vec<Elem>> {
        if n == 1 {
            return vec![vec![z.to_vec()]];
        }
        let t = self.powers[n].as_ref().expect("power built");
        t.decompose(z)
            .into_iter()
            .flat_map(|(u, a)| {
                self.component_words(n - 1, &u).into_iter().map(move |mut w| {
                    w.push(a.clone());
                    w
                })
            })
            .collect()
    }

    fn degree_of(&self, x: &[u32]) -> usize {
        let c = &self.carrier;
        (0..x.len()).filter(|&b| x[b] != c.block(b).zero()).map(|b| self.block_degree[b]).max().unwrap_or(0)
    }

    /// `Σ_I a_I ⊗ a_{I^c}` over subsets of letter positions, summed over the words of `x`.
    fn unshuffle(&self, square: &TensorObject, x: &[u32]) -> Elem {
        let one = self.carrier.base().one();
        let mut terms = Vec::new();
        for w in self.words_of(x) {
            let n = w.letters.len();
            for mask in 0..1u32 << n {
                let pick = |inside: bool, coef: u32| Word {
                    coef,
                    letters: (0..n).filter(|&i| (mask >> i & 1 == 1) == inside).map(|i| w.letters[i].clone()).collect(),
                };
                terms.push(square.pure(&self.word_elem(&pick(true, w.coef)), &self.word_elem(&pick(false, one))));
            }
        }
        square.object().sum(&terms)
    }
}

#[derive(Clone, Debug)]
pub struct GradedBimonoid {
    generators: Arc<FinSemimodule>,
    degree: usize,
    layout: Layout,
    bimonoid: BimonoidObject,
    iota1: Hom,
}

pub fn truncated_tensor_algebra(a: &Arc<FinSemimodule>, degree: usize, limits: &Limits) -> Result<GradedBimonoid> {
    let base = a.base();
    let l = Layout::new(a, degree, limits)?;
    let carrier = l.carrier.clone();
    let iota1 = if degree >= 1 { Hom::from_fn(a, &carrier, |x| l.embed(1, x)) } else { Hom::zero(a, &carrier) };
    let mult = Bimorphism::from_partial_fn(&carrier, &carrier, &carrier, |x, y| {
        if carrier.is_zero(x) || carrier.is_zero(y) {
            return Some(carrier.zero());
        }
        if l.degree_of(x) + l.degree_of(y) > degree {
            return None;
        }
        let (u, v) = (l.words_of(x), l.words_of(y));
        let terms: Vec<Elem> = u
            .iter()
            .flat_map(|w| v.iter().map(move |w2| (w, w2)))
            .map(|(w, w2)| {
                let letters = w.letters.iter().chain(&w2.letters).cloned().collect();
                l.word_elem(&Word { coef: base.mul(w.coef, w2.coef), letters })
            })
            .collect();
        Some(carrier.sum(&terms))
    })
    .validated()?;
    let unit = carrier.inject(0, base.one());
    let square = tensor(&carrier, &carrier, limits)?;
    let comult = Hom::from_fn(&carrier, square.object(), |x| l.unshuffle(&square, x)).validated()?;
    let f1 = Arc::new(FinSemimodule::unit(base));
    let counit = Hom::from_fn(&carrier, &f1, |x| vec![x[0]]);
    let bimonoid = BimonoidObject::new(MonoidObject::new(mult, unit)?, ComonoidObject::new(square, comult, counit)?)?;
    let t = GradedBimonoid { generators: a.clone(), degree, layout: l, bimonoid, iota1 };
    t.cross_check_unshuffle()?;
    Ok(t)
}

impl GradedBimonoid {
    pub fn generators(&self) -> &Arc<FinSemimodule> {
        &self.generators
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn carrier(&self) -> &Arc<FinSemimodule> {
        self.bimonoid.carrier()
    }

    pub fn component(&self, n: usize) -> &Arc<FinSemimodule> {
        &self.layout.components[n]
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

    pub fn iota1(&self) -> &Hom {
        &self.iota1
    }

    pub fn block_degree(&self, b: usize) -> usize {
        self.layout.block_degree[b]
    }

    /// Highest degree with a nonzero component in `x`.
    pub fn degree_of(&self, x: &[u32]) -> usize {
        self.layout.degree_of(x)
    }

    /// Component-`n` element placed in the carrier.
    pub fn embed(&self, n: usize, z: &[u32]) -> Elem {
        self.layout.embed(n, z)
    }

    /// The degree-`n` part of a carrier element, as an element of `A^{⊗n}`.
    pub fn project(&self, n: usize, x: &[u32]) -> Elem {
        self.layout.project(n, x)
    }

    pub fn word_elem(&self, w: &Word) -> Elem {
        self.layout.word_elem(w)
    }

    /// Pure words summing to `x`.
    pub fn words_of(&self, x: &[u32]) -> Vec<Word> {
        self.layout.words_of(x)
    }

    /// `T f`: the letterwise image of words under `f: A → B`, into `T≤d B`.
    pub fn map_generators(&self, target: &GradedBimonoid, f: &Hom) -> Result<Hom> {
        if !(f.source().same_as(&self.generators) && f.target().same_as(&target.generators)) {
            return Err(Error::Mismatch("map must go between the generator objects".into()));
        }
        if target.degree < self.degree {
            return Err(Error::InvalidParameter("target degree bound is smaller than the source's".into()));
        }
        let c = target.carrier();
        Hom::from_fn(self.carrier(), c, |x| {
            let terms: Vec<Elem> = self
                .words_of(x)
                .into_iter()
                .map(|w| {
                    target.word_elem(&Word { coef: w.coef, letters: w.letters.iter().map(|a| f.apply(a)).collect() })
                })
                .collect();
            c.sum(&terms)
        })
        .validated()
    }

    /// `μ(uv) = μ(u)μ(v)` on spanning pairs within the degree bound.
    fn cross_check_unshuffle(&self) -> Result<()> {
        let (m, c) = (self.monoid(), self.comonoid());
        let span = self.carrier().spanning_elements();
        for x in &span {
            for y in &span {
                let Some(xy) = m.mul(x, y) else { continue };
                if self.bimonoid.square_mul(&c.comult().apply(x), &c.comult().apply(y)) != Some(c.comult().apply(&xy)) {
                    return Err(Error::Internal(format!(
                        "unshuffle coproduct is not multiplicative at {}·{}",
                        self.carrier().name(x),
                        self.carrier().name(y)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `S(a₁⋯aₙ) = (−1)ⁿ aₙ⋯a₁`; needs every element of `A` invertible.
    pub fn antipode(&self) -> Result<Hom> {
        if !is_abelian(&self.generators) {
            return Err(Error::Precondition(
                "the tensor antipode needs an abelian generator object (every element invertible)".into(),
            ));
        }
        let c = self.carrier();
        Hom::from_fn(c, c, |x| {
            let terms: Vec<Elem> = self
                .words_of(x)
                .into_iter()
                .map(|mut w| {
                    w.letters.reverse();
                    let n = w.letters.len();
                    let v = self.word_elem(&w);
                    if n % 2 == 1 {
                        c.neg(&v).expect("abelian carrier")
                    } else {
                        v
                    }
                })
                .collect();
            c.sum(&terms)
        })
        .validated()
    }

    pub fn hopf(&self) -> Result<HopfObject> {
        HopfObject::new(self.bimonoid.clone(), self.antipode()?)
    }

    /// The unique multiplicative `T≤d A → M` extending `f: A → M`.
    pub fn free_extension(&self, m: &MonoidObject, f: &Hom) -> Result<Hom> {
        if !(f.source().same_as(&self.generators) && f.target().same_as(m.carrier())) {
            return Err(Error::Mismatch("extension needs a map from the generators into the monoid".into()));
        }
        let target = m.carrier();
        let mut undefined = false;
        let g = Hom::from_fn(self.carrier(), target, |x| {
            let terms: Vec<Elem> = self
                .words_of(x)
                .iter()
                .map(|w| {
                    let prod = w.letters.iter().try_fold(m.unit().clone(), |acc, a| m.mul(&acc, &f.apply(a)));
                    target.act(
                        w.coef,
                        &prod.unwrap_or_else(|| {
                            undefined = true;
                            target.zero()
                        }),
                    )
                })
                .collect();
            target.sum(&terms)
        });
        if undefined {
            return Err(Error::Precondition("the target monoid leaves a product undefined".into()));
        }
        g.validated()
    }
}

/// `μ(ι₁a) = ι₁a⊗1 + 1⊗ι₁a` and `ε(ι₁a) = 0` for every `a`.
pub fn check_generators_primitive(t: &GradedBimonoid) -> Result<ValidationReport> {
    if t.degree < 1 {
        return Err(Error::InvalidParameter("generators live in degree 1; the bound must be at least 1".into()));
    }
    let c = t.comonoid();
    let sq = c.square();
    let e = t.monoid().unit();
    let a = &t.generators;
    let mut r = ValidationReport::new("generators primitive");
    r.law(
        "comult",
        a.spanning_elements().into_iter().map(|x| {
            let g = t.iota1.apply(&x);
            let expect = sq.object().add(&sq.pure(&g, e), &sq.pure(e, &g));
            witness(c.comult().apply(&g) == expect, || a.name(&x))
        }),
    );
    r.law(
        "counit",
        a.spanning_elements().into_iter().map(|x| {
            let g = t.iota1.apply(&x);
            witness(c.counit_scalar(&g) == a.base().zero(), || a.name(&x))
        }),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::tests::{dual_numbers, free_mod};
    use crate::monoidal::{check_bimonoid, check_hopf, convolution};
    use crate::semimodule::{chain, enumerate_homs};
    use crate::semiring::Builtin;

    fn word(t: &GradedBimonoid, letters: &[usize]) -> Elem {
        let a = t.generators();
        let one = a.base().one();
        t.word_elem(&Word { coef: one, letters: letters.iter().map(|&i| a.inject(i, one)).collect() })
    }

    #[test]
    fn degree_zero_is_the_unit() {
        let l = Limits::default();
        let t = truncated_tensor_algebra(&free_mod(Builtin::ZMod(2), 1), 0, &l).unwrap();
        assert_eq!(t.carrier().size(), 2);
        let e = t.monoid().unit().clone();
        assert_eq!(t.comonoid().comult().apply(&e), t.comonoid().square().pure(&e, &e));
    }

    #[test]
    fn sizes_and_counit() {
        let l = Limits::default();
        let t = truncated_tensor_algebra(&free_mod(Builtin::ZMod(2), 1), 2, &l).unwrap();
        assert_eq!(t.carrier().size(), 8);
        let t2 = truncated_tensor_algebra(&free_mod(Builtin::ZMod(2), 2), 2, &l).unwrap();
        assert_eq!(t2.carrier().num_blocks(), 1 + 2 + 4);
        for x in t2.generators().elements(&l).unwrap() {
            assert_eq!(t2.comonoid().counit_scalar(&t2.iota1().apply(&x)), 0);
        }
    }

    #[test]
    fn unshuffle_of_a_two_letter_word() {
        let l = Limits::default();
        let t = truncated_tensor_algebra(&free_mod(Builtin::ZMod(2), 2), 2, &l).unwrap();
        let sq = t.comonoid().square();
        let (e, x, y, xy) = (word(&t, &[]), word(&t, &[0]), word(&t, &[1]), word(&t, &[0, 1]));
        let expect = sq.object().sum(&[sq.pure(&xy, &e), sq.pure(&x, &y), sq.pure(&y, &x), sq.pure(&e, &xy)]);
        assert_eq!(t.comonoid().comult().apply(&xy), expect);
        assert_eq!(t.monoid().mul(&x, &y).as_ref(), Some(&xy));
        assert_eq!(t.monoid().mul(&xy, &x), None);
    }

    #[test]
    fn graded_laws_hold() {
        let l = Limits::default();
        for (a, d) in
            [(free_mod(Builtin::ZMod(2), 2), 2), (free_mod(Builtin::ZMod(3), 1), 3), (chain(2), 3), (chain(3), 1)]
        {
            let t = truncated_tensor_algebra(&a, d, &l).unwrap();
            let r = check_bimonoid(t.bimonoid(), &l).unwrap();
            assert!(r.passed(), "{:?}", r.first_violation());
            assert!(check_generators_primitive(&t).unwrap().passed());
        }
    }

    #[test]
    fn primitive_generators_edge_cases() {
        let l = Limits::default();
        let triv = Arc::new(FinSemimodule::trivial(free_mod(Builtin::ZMod(2), 1).base()));
        let t = truncated_tensor_algebra(&triv, 2, &l).unwrap();
        assert!(check_generators_primitive(&t).unwrap().passed());
        let t0 = truncated_tensor_algebra(&free_mod(Builtin::ZMod(2), 1), 0, &l).unwrap();
        assert!(check_generators_primitive(&t0).is_err());
    }

    #[test]
    fn antipode_reverses_with_sign() {
        let l = Limits::default();
        let t = truncated_tensor_algebra(&free_mod(Builtin::ZMod(2), 2), 2, &l).unwrap();
        let s = t.antipode().unwrap();
        assert_eq!(s.apply(&word(&t, &[])), word(&t, &[]));
        assert_eq!(s.apply(&word(&t, &[0, 1])), word(&t, &[1, 0]));
        assert_eq!(s.then(&s), Hom::identity(t.carrier()));
        let h = t.hopf().unwrap();
        let r = check_hopf(&h, &l).unwrap();
        assert!(r.passed(), "{:?}", r.first_violation());
        let conv = convolution(&s, &Hom::identity(t.carrier()), t.comonoid(), t.monoid()).unwrap();
        for x in t.carrier().elements(&l).unwrap() {
            assert_eq!(conv.apply(&x), t.monoid().unit_times(t.comonoid().counit_scalar(&x)));
        }

        let t3 = truncated_tensor_algebra(&free_mod(Builtin::ZMod(3), 1), 3, &l).unwrap();
        let s3 = t3.antipode().unwrap();
        let x = word(&t3, &[0]);
        assert_eq!(s3.apply(&x), t3.carrier().act(2, &x));
        assert!(check_hopf(&t3.hopf().unwrap(), &l).unwrap().passed());

        let tc = truncated_tensor_algebra(&chain(2), 2, &l).unwrap();
        assert!(matches!(tc.antipode(), Err(Error::Precondition(_))));
    }

    #[test]
    fn free_extension_is_the_unique_multiplicative_one() {
        let l = Limits::default();
        let m = dual_numbers();
        let a = free_mod(Builtin::ZMod(2), 1);
        let t = truncated_tensor_algebra(&a, 2, &l).unwrap();
        let all = enumerate_homs(t.carrier(), m.carrier(), &l).unwrap();
        let span = t.carrier().spanning_elements();
        let multiplicative: Vec<&Hom> = all
            .iter()
            .filter(|g| {
                g.apply(t.monoid().unit()) == *m.unit()
                    && span.iter().all(|x| {
                        span.iter().all(|y| match t.monoid().mul(x, y) {
                            None => true,
                            Some(xy) => m.mul(&g.apply(x), &g.apply(y)) == Some(g.apply(&xy)),
                        })
                    })
            })
            .collect();
        let gens = enumerate_homs(&a, m.carrier(), &l).unwrap();
        assert_eq!(multiplicative.len(), gens.len());
        for f in &gens {
            let g = t.free_extension(&m, f).unwrap();
            assert_eq!(t.iota1().then(&g), *f);
            let agreeing: Vec<_> = multiplicative.iter().filter(|h| t.iota1().then(h) == *f).collect();
            assert_eq!(agreeing.len(), 1);
            assert_eq!(**agreeing[0], g);
        }
    }
}
