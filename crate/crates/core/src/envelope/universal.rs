//! The universal property of `U≤d L`, functoriality and degree stability.

use std::sync::Arc;

use crate::abelian::is_abelian;
use crate::lie::{enumerate_lie_morphisms, is_lie_morphism, lie_of_monoid};
use crate::limits::Limits;
use crate::monoidal::MonoidObject;
use crate::report::{witness, ValidationReport};
use crate::semimodule::{enumerate_homs, Elem, FinSemimodule, Hom};
use crate::{Error, Result};

use super::{enveloping, EnvelopeObject};
use crate::lie::LieObject;

/// The multiplicative `f̃: U≤d L → M` with `f̃ ∘ η = f`, for a Lie morphism
/// `f: L → Lie(M)`.
pub fn universal_factorization(e: &EnvelopeObject, m: &MonoidObject, f: &Hom) -> Result<Hom> {
    if !is_abelian(e.lie.carrier()) {
        return Err(Error::Precondition("universal factorization needs an abelian Lie object".into()));
    }
    let (lie_m, sub) = lie_of_monoid(m)?;
    if !(f.source().same_as(e.lie.carrier()) && f.target().same_as(lie_m.carrier())) {
        return Err(Error::Mismatch("f must map L into the invertible part of M".into()));
    }
    if !is_lie_morphism(f, &e.lie, &lie_m) {
        return Err(Error::Precondition("f does not preserve brackets".into()));
    }
    let fm = f.then(&sub.embedding);
    let gt = e.g.tensor.free_extension(m, &fm)?;
    let ft = Hom::from_fn(e.g.quotient(), m.carrier(), |u| gt.apply(&e.lift(u))).validated()?;
    let tc = e.g.tensor.carrier();
    if let Some(x) = tc.spanning_elements().iter().find(|x| ft.apply(&e.g.q().apply(x)) != gt.apply(x)) {
        return Err(Error::Internal(format!("extension does not descend at {}", tc.name(x))));
    }
    if e.eta.then(&ft) != fm {
        return Err(Error::Internal("factorization does not restrict to f".into()));
    }
    Ok(ft)
}

/// Every hom `U≤d L → M` preserving the unit and every product defined
/// within degree `d`. Blocks are assigned in order of lift degree and
/// candidates are pruned as soon as a product among assigned blocks fails.
pub fn multiplicative_homs(e: &EnvelopeObject, m: &MonoidObject, limits: &Limits) -> Result<Vec<Hom>> {
    let u = e.g.quotient();
    let mc = m.carrier();
    let group: Vec<usize> = e.g.piece.lift_degree.iter().map(|b| b.iter().copied().max().unwrap_or(0)).collect();
    let level = |x: &[u32]| (0..x.len()).filter(|&b| x[b] != u.block(b).zero()).map(|b| group[b]).max().unwrap_or(0);
    let levels = e.degree() + 1;
    let members: Vec<Vec<usize>> =
        (0..levels).map(|n| (0..u.num_blocks()).filter(|&b| group[b] == n).collect()).collect();
    let candidates: Vec<Vec<Hom>> = members
        .iter()
        .map(|bs| {
            let blocks = bs.iter().map(|&b| u.blocks()[b].clone()).collect();
            let labels = bs.iter().map(|&b| u.labels()[b].clone()).collect();
            let sub = Arc::new(FinSemimodule::new(u.base().clone(), blocks, labels));
            enumerate_homs(&sub, mc, limits)
        })
        .collect::<Result<_>>()?;
    let span: Vec<Elem> = u.spanning_elements().into_iter().filter(|x| !u.is_zero(x)).collect();
    let um = e.monoid();
    let mut products = vec![vec![]; levels];
    for x in &span {
        for y in &span {
            if let Some(xy) = um.mul(x, y) {
                let n = level(x).max(level(y)).max(level(&xy));
                products[n].push((x.clone(), y.clone(), xy));
            }
        }
    }
    let mut search = Search {
        u,
        m,
        unit_level: level(um.unit()),
        unit: um.unit().clone(),
        members,
        candidates,
        products,
        parts: vec![vec![]; u.num_blocks()],
        out: vec![],
        tried: 0,
        limits,
    };
    search.run(0)?;
    Ok(search.out)
}

struct Search<'a> {
    u: &'a Arc<FinSemimodule>,
    m: &'a MonoidObject,
    unit_level: usize,
    unit: Elem,
    members: Vec<Vec<usize>>,
    candidates: Vec<Vec<Hom>>,
    /// `(x, y, xy)` grouped by the highest level among the three.
    products: Vec<Vec<(Elem, Elem, Elem)>>,
    parts: Vec<Vec<Elem>>,
    out: Vec<Hom>,
    tried: u128,
    limits: &'a Limits,
}

impl Search<'_> {
    fn eval(&self, x: &[u32]) -> Elem {
        let terms: Vec<&Elem> =
            (0..x.len()).filter(|&b| x[b] != self.u.block(b).zero()).map(|b| &self.parts[b][x[b] as usize]).collect();
        self.m.carrier().sum(terms)
    }

    fn consistent(&self, n: usize) -> bool {
        (n != self.unit_level || self.eval(&self.unit) == *self.m.unit())
            && self.products[n].iter().all(|(x, y, xy)| self.m.mul(&self.eval(x), &self.eval(y)) == Some(self.eval(xy)))
    }

    fn run(&mut self, n: usize) -> Result<()> {
        if n == self.members.len() {
            self.out.push(Hom::from_parts(self.u, self.m.carrier(), self.parts.clone()));
            return Ok(());
        }
        for k in 0..self.candidates[n].len() {
            self.tried += 1;
            self.limits.check_budget("multiplicative hom search", self.tried)?;
            for (i, &b) in self.members[n].iter().enumerate() {
                self.parts[b] = self.candidates[n][k].parts()[i].clone();
            }
            if self.consistent(n) {
                self.run(n + 1)?;
            }
        }
        Ok(())
    }
}

/// Both sides of `Lie(L, Lie M) ≅ Mon≤d(U≤d L, M)` enumerated independently
/// and compared through `f ↦ f̃` and `g ↦ g ∘ η`.
pub fn check_universal_property(e: &EnvelopeObject, m: &MonoidObject, limits: &Limits) -> Result<ValidationReport> {
    let (lie_m, sub) = lie_of_monoid(m)?;
    let lie_ms = enumerate_lie_morphisms(&e.lie, &lie_m, limits)?;
    let mult = multiplicative_homs(e, m, limits)?;
    let facts: Vec<Hom> = lie_ms.iter().map(|f| universal_factorization(e, m, f)).collect::<Result<_>>()?;
    let mut r = ValidationReport::new("envelope universal property");
    r.law(
        "cardinality",
        [witness(lie_ms.len() == mult.len(), || {
            format!("{} Lie morphisms, {} multiplicative homs", lie_ms.len(), mult.len())
        })],
    );
    r.law(
        "factorization.multiplicative",
        facts.iter().enumerate().map(|(i, ft)| witness(mult.contains(ft), || format!("f#{i}"))),
    );
    r.law(
        "factorization.unique",
        lie_ms.iter().enumerate().map(|(i, f)| {
            let fm = f.then(&sub.embedding);
            witness(mult.iter().filter(|g| e.eta.then(g) == fm).count() == 1, || format!("f#{i}"))
        }),
    );
    r.law(
        "factorization.injective",
        (0..facts.len())
            .flat_map(|i| (i + 1..facts.len()).map(move |j| (i, j)))
            .map(|(i, j)| witness(facts[i] != facts[j], || format!("f#{i} and f#{j}"))),
    );
    r.law(
        "round_trip",
        mult.iter().enumerate().map(|(i, g)| {
            let back = e.eta.then(g);
            let f: Option<Vec<Elem>> =
                e.lie.carrier().spanning_elements().iter().map(|x| sub.corestrict(&back.apply(x))).collect();
            let ok = f.is_some() && {
                let f = Hom::from_fn(e.lie.carrier(), lie_m.carrier(), |x| {
                    sub.corestrict(&back.apply(x)).expect("checked")
                });
                lie_ms.contains(&f) && universal_factorization(e, m, &f).is_ok_and(|ft| ft == *g)
            };
            witness(ok, || format!("g#{i}"))
        }),
    );
    Ok(r)
}

/// `U l` with `U l ∘ q = q' ∘ T l`, for a Lie morphism `l: L → L'`.
pub fn induced_map(e: &EnvelopeObject, e2: &EnvelopeObject, l: &Hom) -> Result<Hom> {
    if !is_lie_morphism(l, &e.lie, &e2.lie) {
        return Err(Error::Precondition("the map does not preserve brackets".into()));
    }
    let tl = e.g.tensor.map_generators(&e2.g.tensor, l)?;
    let ul = Hom::from_fn(e.g.quotient(), e2.g.quotient(), |u| e2.g.q().apply(&tl.apply(&e.lift(u)))).validated()?;
    let tc = e.g.tensor.carrier();
    if let Some(x) = tc.spanning_elements().iter().find(|x| ul.apply(&e.g.q().apply(x)) != e2.g.q().apply(&tl.apply(x)))
    {
        return Err(Error::Internal(format!("induced map does not descend at {}", tc.name(x))));
    }
    Ok(ul)
}

/// Compares `U≤d L` with the image of `T≤d L` in `U≤(d+1) L`: the sizes
/// agree and `q_{d+1}` identifies exactly what `q_d` does.
pub fn stability_check(l: &LieObject, degree: usize, limits: &Limits) -> Result<ValidationReport> {
    let e = enveloping(l, degree, limits)?;
    let e1 = enveloping(l, degree + 1, limits)?;
    let mut r = ValidationReport::new(format!("stability {degree} → {}", degree + 1));
    let (size, size1) = (e.quotient().size(), e1.filtration_size(degree));
    r.law("size", [witness(size == size1, || format!("{size} vs {size1}"))]);
    // T≤d is a prefix of T≤(d+1), block for block.
    let t1 = e1.tensor().carrier();
    let widen = |x: &Elem| {
        let mut y = t1.zero();
        y[..x.len()].copy_from_slice(x);
        y
    };
    let tc = e.tensor().carrier();
    r.law(
        "kernel",
        tc.spanning_elements().into_iter().map(|x| {
            let via = e1.q().apply(&widen(&e.lift(&e.q().apply(&x))));
            witness(via == e1.q().apply(&widen(&x)), || tc.name(&x))
        }),
    );
    Ok(r)
}
