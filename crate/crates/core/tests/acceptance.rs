//! Acceptance suite: one line per criterion, exact equality throughout.
//! Expected counts and sets come from brute-force oracles defined here.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use entropic::abelian::{abelian_reflection, check_tensor_closure, inv, is_abelian};
use entropic::cli::{law_suites, run};
use entropic::envelope::{check_envelope, check_universal_property, enveloping, multiplicative_homs, stability_check};
use entropic::lie::{lie_of_monoid, LieObject};
use entropic::monoidal::{check_antipode, check_bimonoid, BimonoidObject, HopfObject, MonoidObject};
use entropic::primitives::{adjunction_check, check_antipode_on_primitives, primitives};
use entropic::semimodule::{enumerate_homs, free, Elem, FinSemimodule, Hom};
use entropic::semiring::{builtin, Builtin};
use entropic::tensor::{tensor, TensorObject};
use entropic::tensor_algebra::{check_generators_primitive, truncated_tensor_algebra, GradedBimonoid, Word};
use entropic::text::{self, library, parse, serialize, AlgebraFile, Decl};
use entropic::Limits;

type Outcome = Result<(), String>;

/// Name, runtime budget in seconds, and the check.
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lim() -> Limits {
    Limits::default()
}

fn elems(a: &FinSemimodule) -> Vec<Elem> {
    a.elements(&lim()).unwrap()
}

fn basis(a: &FinSemimodule) -> Vec<Elem> {
    (0..a.num_blocks()).flat_map(|i| a.block(i).generators().iter().map(move |&g| a.inject(i, g))).collect()
}

/// The semimodule declarations of the library, in file order.
fn fixture_modules(lib: &AlgebraFile) -> Vec<(String, Arc<FinSemimodule>)> {
    lib.entries
        .iter()
        .filter_map(|e| match &e.decl {
            Decl::Semimodule { module, .. } => Some((e.name.clone(), module.clone())),
            _ => None,
        })
        .collect()
}

/// Index tables for `+` and the action on a materialized carrier.
struct Tables {
    n: usize,
    add: Vec<Vec<usize>>,
    act: Vec<Vec<usize>>,
    zero: usize,
}

fn tables(a: &FinSemimodule) -> Tables {
    let xs = elems(a);
    let idx = |x: &Elem| a.index_of(x);
    Tables {
        n: xs.len(),
        add: xs.iter().map(|x| xs.iter().map(|y| idx(&a.add(x, y))).collect()).collect(),
        act: a.base().elements().map(|s| xs.iter().map(|x| idx(&a.act(s, x))).collect()).collect(),
        zero: idx(&a.zero()),
    }
}

/// Every function `A → C` (as index tables) preserving zero, sums and the action.
fn brute_homs(a: &Tables, c: &Tables) -> Vec<Vec<usize>> {
    let total = (c.n as u128).pow(a.n as u32);
    assert!(total <= 1 << 22, "brute-force hom space too large");
    let mut out = vec![];
    for code in 0..total {
        let mut f = Vec::with_capacity(a.n);
        let mut k = code;
        for _ in 0..a.n {
            f.push((k % c.n as u128) as usize);
            k /= c.n as u128;
        }
        let additive = (0..a.n).all(|x| (0..a.n).all(|y| f[a.add[x][y]] == c.add[f[x]][f[y]]));
        let action = a.act.iter().zip(&c.act).all(|(sa, sc)| (0..a.n).all(|x| f[sa[x]] == sc[f[x]]));
        if f[a.zero] == c.zero && additive && action {
            out.push(f);
        }
    }
    out
}

/// Bimorphisms `A × B → C` counted as families `(h_b)` of homs out of `A`
/// that are also homs in `b` pointwise, by backtracking over `B`.
fn bimorphism_count(a: &FinSemimodule, b: &FinSemimodule, c: &FinSemimodule) -> u64 {
    let (ta, tb, tc) = (tables(a), tables(b), tables(c));
    let ha = brute_homs(&ta, &tc);
    let mut chosen: Vec<Option<usize>> = vec![None; tb.n];
    fn go(k: usize, ha: &[Vec<usize>], tb: &Tables, tc: &Tables, chosen: &mut Vec<Option<usize>>) -> u64 {
        if k == tb.n {
            return 1;
        }
        let mut count = 0;
        for h in 0..ha.len() {
            chosen[k] = Some(h);
            if consistent(k, ha, tb, tc, chosen) {
                count += go(k + 1, ha, tb, tc, chosen);
            }
        }
        chosen[k] = None;
        count
    }
    fn consistent(k: usize, ha: &[Vec<usize>], tb: &Tables, tc: &Tables, chosen: &[Option<usize>]) -> bool {
        let f = |i: usize| chosen[i].map(|h| &ha[h]);
        let fk = f(k).unwrap();
        if k == tb.zero && fk.iter().any(|&v| v != tc.zero) {
            return false;
        }
        for i in 0..=k {
            for j in 0..=k {
                let l = tb.add[i][j];
                if i != k && j != k && l != k {
                    continue;
                }
                if let (Some(x), Some(y), Some(z)) = (f(i), f(j), f(l)) {
                    if (0..z.len()).any(|p| z[p] != tc.add[x[p]][y[p]]) {
                        return false;
                    }
                }
            }
        }
        for (sb, sc) in tb.act.iter().zip(&tc.act) {
            for (i, &l) in sb.iter().enumerate().take(k + 1) {
                if i != k && l != k {
                    continue;
                }
                if let (Some(x), Some(z)) = (f(i), f(l)) {
                    if (0..z.len()).any(|p| z[p] != sc[x[p]]) {
                        return false;
                    }
                }
            }
        }
        true
    }
    go(0, &ha, &tb, &tc, &mut chosen)
}

fn law_suites_pass() -> Outcome {
    let lib = library();
    for e in &lib.entries {
        for r in law_suites(&e.decl, &lim()).map_err(|err| format!("{}: {err}", e.name))? {
            ensure(r.passed(), || format!("{}: {}", e.name, r.first_violation().unwrap_or_default()))?;
        }
    }
    Ok(())
}

fn tensor_universal_property() -> Outcome {
    let mods = fixture_modules(&library());
    let mut pairs = 0;
    for (an, a) in mods.iter().filter(|(_, a)| a.size() <= 4) {
        for (bn, b) in mods.iter().filter(|(_, b)| b.size() <= 4 && b.base() == a.base()) {
            let t = tensor(a, b, &lim()).map_err(|e| e.to_string())?;
            for (cn, c) in mods.iter().filter(|(_, c)| c.base() == a.base()) {
                let homs = enumerate_homs(t.object(), c, &lim()).map_err(|e| e.to_string())?.len() as u64;
                let bims = bimorphism_count(a, b, c);
                ensure(homs == bims, || format!("{an}⊗{bn} → {cn}: {homs} homs vs {bims} bimorphisms"))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs > 0, || "no fixture triples".into())
}

fn abelian_closure() -> Outcome {
    let mods = fixture_modules(&library());
    let ab: Vec<_> = mods.iter().filter(|(_, a)| is_abelian(a)).collect();
    for (gn, g) in &ab {
        for (hn, h) in ab.iter().filter(|(_, h)| h.base() == g.base()) {
            let t = tensor(g, h, &lim()).map_err(|e| e.to_string())?;
            let gh = t.object();
            // An element of a direct sum is invertible exactly when each component is.
            for (i, blk) in gh.blocks().iter().enumerate() {
                for v in blk.elements() {
                    ensure(blk.neg(v).is_some(), || {
                        format!("{gn}⊗{hn}: {} has no negative", gh.name(&gh.inject(i, v)))
                    })?;
                }
            }
            let r = check_tensor_closure(g, h, &lim()).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{gn}⊗{hn}: {}", r.first_violation().unwrap_or_default()))?;
        }
    }
    Ok(())
}

fn semilattice_core_is_zero() -> Outcome {
    let lib = library();
    let b2 = lib.semiring("B2").unwrap().clone();
    let mut seen = 0;
    for (n, a) in fixture_modules(&lib).iter().filter(|(_, a)| *a.base() == b2) {
        let i = inv(a);
        ensure(i.object.size() == 1, || format!("Inv({n}) has {} elements", i.object.size()))?;
        let (r, _) = abelian_reflection(a);
        ensure(r.size() == 1, || format!("{n}_ab has {} elements", r.size()))?;
        seen += 1;
    }
    ensure(seen >= 2, || "fewer than two semilattice fixtures".into())
}

/// All words of length `n` over `letters`.
fn words(letters: &[Elem], n: usize) -> Vec<Vec<Elem>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.iter().flat_map(|w| letters.iter().map(move |x| [w.clone(), vec![x.clone()]].concat())).collect()
    })
}

/// `Δ(w) = Σ_S w_S ⊗ w_{S^c}` over subsets of positions.
fn unshuffle(t: &GradedBimonoid, w: &[Elem]) -> Elem {
    let one = t.generators().base().one();
    let sq = t.comonoid().square();
    let terms: Vec<Elem> = (0u32..1 << w.len())
        .map(|mask| {
            let (mut l, mut r) = (vec![], vec![]);
            for (i, x) in w.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    l.push(x.clone())
                } else {
                    r.push(x.clone())
                }
            }
            sq.pure(&t.word_elem(&Word { coef: one, letters: l }), &t.word_elem(&Word { coef: one, letters: r }))
        })
        .collect();
    sq.object().sum(&terms)
}

fn graded_bimonoid() -> Outcome {
    let z2 = Arc::new(builtin(Builtin::ZMod(2)).unwrap());
    for rank in 1..=2 {
        let a = Arc::new(free(&z2, rank, &lim()).unwrap());
        for d in 1..=3 {
            let tag = format!("T≤{d} of rank {rank}");
            let t = truncated_tensor_algebra(&a, d, &lim()).map_err(|e| e.to_string())?;
            let b = check_bimonoid(t.bimonoid(), &lim()).map_err(|e| e.to_string())?;
            ensure(b.passed(), || format!("{tag}: {}", b.first_violation().unwrap_or_default()))?;
            let g = check_generators_primitive(&t).map_err(|e| e.to_string())?;
            ensure(g.passed(), || format!("{tag}: {}", g.first_violation().unwrap_or_default()))?;
            let h = t.hopf().map_err(|e| e.to_string())?;
            let s = check_antipode(&h);
            ensure(s.passed(), || format!("{tag}: {}", s.first_violation().unwrap_or_default()))?;

            let one = z2.one();
            let (m, c) = (t.monoid(), t.comonoid());
            let letters = basis(&a);
            for n in 0..=d {
                for w in words(&letters, n) {
                    let x = t.word_elem(&Word { coef: one, letters: w.clone() });
                    let expected = unshuffle(&t, &w);
                    ensure(c.comult().apply(&x) == expected, || format!("{tag}: Δ of a length-{n} word"))?;
                    // The same value, extended multiplicatively from the letters.
                    let mut direct = c.comult().apply(m.unit());
                    for l in &w {
                        let letter = t.word_elem(&Word { coef: one, letters: vec![l.clone()] });
                        direct = t.bimonoid().square_mul(&direct, &c.comult().apply(&letter)).unwrap();
                    }
                    ensure(direct == expected, || format!("{tag}: multiplicative extension of a length-{n} word"))?;
                    // S ⋆ id = e∘ε on the same word.
                    let terms: Vec<Elem> =
                        c.split(&x).iter().map(|(p, q)| m.mul(&h.antipode.apply(p), q).unwrap()).collect();
                    let conv = t.carrier().sum(&terms);
                    ensure(conv == m.unit_times(c.counit_scalar(&x)), || {
                        format!("{tag}: S ⋆ id on a length-{n} word")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// `f ⊗ g` applied to an element of a tensor square, through decompositions.
fn tensor_map(from: &TensorObject, to: &TensorObject, f: &Hom, z: &[u32]) -> Elem {
    let terms: Vec<Elem> = from.decompose(z).iter().map(|(x, y)| to.pure(&f.apply(x), &f.apply(y))).collect();
    to.object().sum(&terms)
}

/// The additive map out of a free module sending basis element `i` to `images[i]`.
fn extend(target: &FinSemimodule, images: &[Elem], x: &[u32]) -> Elem {
    let terms: Vec<Elem> = x.iter().zip(images).map(|(&s, y)| target.act(s, y)).collect();
    target.sum(&terms)
}

/// Images of the basis of a free `L` under every Lie morphism into the
/// commutator bracket of `m`.
fn lie_morphisms_into(l: &LieObject, m: &MonoidObject) -> BTreeSet<Vec<Elem>> {
    let a = l.carrier();
    let mc = m.carrier();
    let b = basis(a);
    let targets: Vec<Elem> = elems(mc).into_iter().filter(|x| mc.neg(x).is_some()).collect();
    let mut out = BTreeSet::new();
    for images in words(&targets, b.len()) {
        let f = |x: &Elem| extend(mc, &images, x);
        let ok = b.iter().all(|x| {
            b.iter().all(|y| {
                let (fx, fy) = (f(x), f(y));
                let comm = mc.add(&m.mul(&fx, &fy).unwrap(), &mc.neg(&m.mul(&fy, &fx).unwrap()).unwrap());
                f(&l.br(x, y).unwrap()) == comm
            })
        });
        if ok {
            out.insert(images);
        }
    }
    out
}

fn envelope() -> Outcome {
    let lib = library();
    let targets = [("X2", lib.monoid("X2").unwrap().clone()), ("UT", lib.monoid("UT").unwrap().clone())];
    for ln in ["L1", "L2"] {
        let l = lib.lie(ln).unwrap();
        for d in 2..=3 {
            let tag = format!("U≤{d} {ln}");
            let e = enveloping(l, d, &lim()).map_err(|e| format!("{tag}: {e}"))?;
            let r = check_envelope(&e, &lim()).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{tag}: {}", r.first_violation().unwrap_or_default()))?;

            // q is compatible with comultiplication, element by element.
            let (t, q) = (e.tensor(), e.q());
            for x in t.carrier().spanning_elements() {
                let lhs = e.comonoid().comult().apply(&q.apply(&x));
                let rhs = tensor_map(t.comonoid().square(), e.comonoid().square(), q, &t.comonoid().comult().apply(&x));
                ensure(lhs == rhs, || format!("{tag}: comultiplication at {}", t.carrier().name(&x)))?;
            }

            for (mn, m) in &targets {
                let u = check_universal_property(&e, m, &lim()).map_err(|e| e.to_string())?;
                ensure(u.passed(), || format!("{tag} → {mn}: {}", u.first_violation().unwrap_or_default()))?;
                let homs = multiplicative_homs(&e, m, &lim()).map_err(|e| e.to_string())?;
                let restricted: BTreeSet<Vec<Elem>> = homs
                    .iter()
                    .map(|g| basis(l.carrier()).iter().map(|x| g.apply(&e.eta().apply(x))).collect())
                    .collect();
                let expected = lie_morphisms_into(l, m);
                ensure(restricted.len() == homs.len(), || {
                    format!("{tag} → {mn}: restriction along η is not injective")
                })?;
                ensure(restricted == expected, || {
                    format!("{tag} → {mn}: {} multiplicative homs vs {} Lie morphisms", homs.len(), expected.len())
                })?;
            }
            let s = stability_check(l, d, &lim()).map_err(|e| e.to_string())?;
            ensure(s.passed(), || format!("{tag}: {}", s.first_violation().unwrap_or_default()))?;
        }
    }
    // The Lie objects of the monoid targets are what the oracle brackets against.
    for (mn, m) in &targets {
        let (lm, _) = lie_of_monoid(m).map_err(|e| e.to_string())?;
        ensure(
            lm.carrier().size() == elems(m.carrier()).iter().filter(|x| m.carrier().neg(x).is_some()).count() as u128,
            || format!("Lie({mn}) is not carried by the invertible elements"),
        )?;
    }
    Ok(())
}

/// Primitive elements by direct scan.
fn prim_scan(b: &BimonoidObject) -> Vec<Elem> {
    let a = b.carrier();
    let c = &b.comonoid;
    let one = b.monoid.unit();
    let sq = c.square();
    elems(a)
        .into_iter()
        .filter(|x| {
            let target = sq.object().add(&sq.pure(x, one), &sq.pure(one, x));
            c.comult().apply(x) == target && c.counit_scalar(x) == a.base().zero()
        })
        .collect()
}

fn primitives_and_antipode() -> Outcome {
    let lib = library();
    let mut strict_sign = false;
    for e in &lib.entries {
        let (b, h) = match &e.decl {
            Decl::Bimonoid { bimonoid, .. } => (bimonoid.clone(), None),
            Decl::Hopf { hopf, .. } => (hopf.bimonoid.clone(), Some(hopf.clone())),
            _ => continue,
        };
        let n = &e.name;
        let p = primitives(&b, &lim()).map_err(|err| format!("{n}: {err}"))?;
        let scan = prim_scan(&b);
        ensure(p.members == scan, || format!("{n}: equalizer and scan disagree"))?;
        let Some(h) = h else { continue };
        let r = check_antipode_on_primitives(&h, &lim()).map_err(|err| err.to_string())?;
        ensure(r.passed(), || format!("{n}: {}", r.first_violation().unwrap_or_default()))?;
        let a = h.carrier();
        for x in &scan {
            let neg = a.neg(x).ok_or_else(|| format!("{n}: primitive {} is not invertible", a.name(x)))?;
            ensure(h.antipode.apply(x) == neg, || format!("{n}: S({}) ≠ -{}", a.name(x), a.name(x)))?;
            strict_sign |= neg != *x;
        }
    }
    ensure(strict_sign, || "no Hopf fixture has a primitive with -p ≠ p".into())
}

fn hopf_morphism(f: &Hom, u: &HopfObject, h: &HopfObject) -> bool {
    let (mu, mh) = (&u.bimonoid.monoid, &h.bimonoid.monoid);
    let (cu, ch) = (&u.bimonoid.comonoid, &h.bimonoid.comonoid);
    let span = f.source().spanning_elements();
    let mult = span.iter().all(|x| {
        span.iter().all(|y| match mu.mul(x, y) {
            Some(xy) => mh.mul(&f.apply(x), &f.apply(y)) == Some(f.apply(&xy)),
            None => true,
        })
    });
    mult && f.apply(mu.unit()) == *mh.unit()
        && span.iter().all(|x| {
            tensor_map(cu.square(), ch.square(), f, &cu.comult().apply(x)) == ch.comult().apply(&f.apply(x))
                && ch.counit_scalar(&f.apply(x)) == cu.counit_scalar(x)
                && f.apply(&u.antipode.apply(x)) == h.antipode.apply(&f.apply(x))
        })
}

/// Lie morphisms from a free `L` into the primitives of `h` with the
/// commutator bracket, where that bracket is defined.
fn lie_morphisms_into_prim(l: &LieObject, h: &HopfObject) -> usize {
    let a = l.carrier();
    let m = &h.bimonoid.monoid;
    let hc = h.carrier();
    let prim = prim_scan(&h.bimonoid);
    let b = basis(a);
    words(&prim, b.len())
        .into_iter()
        .filter(|images| {
            let f = |x: &Elem| extend(hc, images, x);
            b.iter().all(|x| {
                b.iter().all(|y| {
                    let (fx, fy) = (f(x), f(y));
                    let comm = hc.add(&m.mul(&fx, &fy).unwrap(), &hc.neg(&m.mul(&fy, &fx).unwrap()).unwrap());
                    f(&l.br(x, y).unwrap()) == comm
                })
            })
        })
        .count()
}

fn adjunction() -> Outcome {
    let extra = "\nsemimodule Zero3 over zmod3 = free\nlie Trivial3 on Zero3\n  bracket\n    0: 0\nend\n";
    let lib = parse(&format!("{}{extra}", text::LIBRARY), &lim()).map_err(|e| e.to_string())?;
    let pairs = [("L1", "X2"), ("L2", "X2"), ("Trivial", "X2"), ("Trivial", "G2"), ("Trivial3", "P3")];
    for (ln, hn) in pairs {
        let (l, h) = (lib.lie(ln).unwrap(), lib.hopf(hn).unwrap());
        let tag = format!("({ln}, {hn})");
        let adj = adjunction_check(l, h, 2, &lim()).map_err(|e| format!("{tag}: {e}"))?;
        ensure(adj.conclusive, || format!("{tag}: not conclusive"))?;
        ensure(adj.report.passed(), || format!("{tag}: {}", adj.report.first_violation().unwrap_or_default()))?;
        let lie_side = lie_morphisms_into_prim(l, h);
        let u = enveloping(l, 2, &lim()).and_then(|e| e.hopf()).map_err(|e| e.to_string())?;
        let hopf_side = enumerate_homs(u.carrier(), h.carrier(), &lim())
            .map_err(|e| e.to_string())?
            .iter()
            .filter(|f| hopf_morphism(f, &u, h))
            .count();
        ensure(lie_side == hopf_side, || format!("{tag}: {lie_side} Lie morphisms vs {hopf_side} Hopf morphisms"))?;
        ensure(adj.lie_morphisms.len() == lie_side && adj.hopf_morphisms.len() == hopf_side, || {
            format!(
                "{tag}: reported {} / {}, enumerated {lie_side} / {hopf_side}",
                adj.lie_morphisms.len(),
                adj.hopf_morphisms.len()
            )
        })?;
    }
    Ok(())
}

fn cli() -> Outcome {
    let l = lim();
    let lib = library();
    let again = parse(&serialize(&lib, &l).unwrap(), &l).map_err(|e| e.to_string())?;
    ensure(again == lib, || "library does not round-trip".into())?;
    let b2_path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/b2.alg");
    let b2 = text::parse_file(std::path::Path::new(b2_path), &l).map_err(|e| e.to_string())?;
    ensure(parse(&serialize(&b2, &l).unwrap(), &l).unwrap() == b2, || "b2.alg does not round-trip".into())?;

    let entropic = |args: &str| run(std::iter::once("entropic").chain(args.split_whitespace()));
    for args in [
        "check laws X2",
        "--format json check laws P3",
        "inv C3",
        "envelope L2 --degree 2",
        "--format json primitives X2",
        "check adjunction L2 X2 --degree 2",
    ] {
        ensure(entropic(args) == entropic(args), || format!("`{args}` is not deterministic"))?;
    }
    let dir = std::env::temp_dir().join(format!("entropic-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = |name: &str, src: &str| {
        let p = dir.join(name);
        std::fs::write(&p, src).unwrap();
        p.display().to_string()
    };
    let unresolved = file("u.alg", "semimodule A over R = free x\n");
    let dimension = file(
        "d.alg",
        "semiring B = builtin bool\nsemimodule C over B\n  elements 0 1\n  zero 0\n  add\n    0: 0 1\n    1: 1\nend\n",
    );
    let unlawful = file(
        "m.alg",
        "semiring B = builtin zmod 2\nsemimodule A over B = free 1 x\nmonoid M on A\n  unit 1\n  mul\n    0: 0 0 0 0\n    x: 0 0 x x\n    1: 0 0 1 1\n    1+x: 0 0 1+x 1+x\nend\n",
    );
    let cases = [
        ("check laws X2".to_string(), 0),
        ("inv C3".into(), 0),
        (format!("check laws {unlawful}:M"), 1),
        ("envelope L2".into(), 2),
        ("--cap 2 inv A2".into(), 3),
        (format!("list {unresolved}"), 4),
        (format!("list {dimension}"), 5),
    ];
    for (args, code) in cases {
        let got = entropic(&args).code;
        ensure(got == code, || format!("`{args}` exits {got}, expected {code}"))?;
    }
    ensure(entropic("inv C3").stdout.contains("Inv = {0}\n"), || "`inv C3` does not report Inv = {0}".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("law suites on every fixture", Some(30), law_suites_pass),
        ("tensor universal property", Some(60), tensor_universal_property),
        ("closure of internal groups under tensor", None, abelian_closure),
        ("abelian core of semilattices is zero", None, semilattice_core_is_zero),
        ("truncated tensor bimonoid", Some(60), graded_bimonoid),
        ("enveloping monoid", Some(120), envelope),
        ("primitives and the antipode on them", None, primitives_and_antipode),
        ("adjunction at degree 2", None, adjunction),
        ("text format and command line", None, cli),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|()| match budget {
            Some(s) if elapsed > Duration::from_secs(*s) => Err(format!("took {elapsed:.1?}, budget {s} s")),
            _ => Ok(()),
        });
        match result {
            Ok(()) => println!("criterion {}: PASS {name} ({elapsed:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
