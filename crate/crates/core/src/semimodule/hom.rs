use std::collections::VecDeque;
use std::sync::Arc;

use super::block::Block;
use super::module::{Elem, FinSemimodule};
use crate::limits::{sat_pow, Limits};
use crate::report::{witness, ValidationReport};
use crate::{Error, Result};

/// A homomorphism between semimodules over the same base.
///
/// Stored as one table per source block (the image of every block-local
/// element); the value on a general element is the sum over its blocks.
#[derive(Clone, Debug)]
pub struct Hom {
    source: Arc<FinSemimodule>,
    target: Arc<FinSemimodule>,
    parts: Vec<Vec<Elem>>,
}

impl PartialEq for Hom {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_as(&other.source) && self.target.same_as(&other.target) && self.parts == other.parts
    }
}

impl Eq for Hom {}

impl Hom {
    /// Tabulates `f` on block-local elements. Call [`Hom::check`] unless
    /// `f` is known to be additive.
    pub fn from_fn(source: &Arc<FinSemimodule>, target: &Arc<FinSemimodule>, mut f: impl FnMut(&Elem) -> Elem) -> Self {
        let parts = (0..source.num_blocks())
            .map(|i| source.block(i).elements().map(|v| f(&source.inject(i, v))).collect())
            .collect();
        Hom { source: source.clone(), target: target.clone(), parts }
    }

    pub(crate) fn from_parts(source: &Arc<FinSemimodule>, target: &Arc<FinSemimodule>, parts: Vec<Vec<Elem>>) -> Self {
        Hom { source: source.clone(), target: target.clone(), parts }
    }

    /// The linear map on a free module with `e_i ↦ value(i)`.
    pub fn linear(
        source: &Arc<FinSemimodule>,
        target: &Arc<FinSemimodule>,
        mut value: impl FnMut(usize) -> Elem,
    ) -> Result<Self> {
        if !source.is_free() {
            return Err(Error::Precondition("linear extension needs a free source".into()));
        }
        let parts = (0..source.num_blocks())
            .map(|i| {
                let v = value(i);
                source.base().elements().map(|s| target.act(s, &v)).collect()
            })
            .collect();
        Ok(Hom { source: source.clone(), target: target.clone(), parts })
    }

    pub fn identity(a: &Arc<FinSemimodule>) -> Self {
        Hom::from_fn(a, a, |x| x.clone())
    }

    pub fn zero(source: &Arc<FinSemimodule>, target: &Arc<FinSemimodule>) -> Self {
        let z = target.zero();
        Hom::from_fn(source, target, |_| z.clone())
    }

    pub fn source(&self) -> &Arc<FinSemimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinSemimodule> {
        &self.target
    }

    pub fn parts(&self) -> &[Vec<Elem>] {
        &self.parts
    }

    pub fn apply(&self, x: &[u32]) -> Elem {
        let mut acc = self.target.zero();
        for (i, part) in self.parts.iter().enumerate() {
            if x[i] != self.source.block(i).zero() {
                self.target.add_assign(&mut acc, &part[x[i] as usize]);
            }
        }
        acc
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Hom) -> Hom {
        let parts = self.parts.iter().map(|p| p.iter().map(|y| g.apply(y)).collect()).collect();
        Hom { source: self.source.clone(), target: g.target.clone(), parts }
    }

    /// Pointwise sum of parallel homs.
    pub fn plus(&self, other: &Hom) -> Hom {
        let t = &self.target;
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(p, q)| p.iter().zip(q).map(|(x, y)| t.add(x, y)).collect())
            .collect();
        Hom { source: self.source.clone(), target: t.clone(), parts }
    }

    pub fn scale(&self, s: u32) -> Hom {
        let t = &self.target;
        let parts = self.parts.iter().map(|p| p.iter().map(|y| t.act(s, y)).collect()).collect();
        Hom { source: self.source.clone(), target: t.clone(), parts }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().flatten().all(|y| self.target.is_zero(y))
    }

    /// Checks that each block table is additive, zero preserving and
    /// action preserving, which is exactly the hom condition on the sum.
    pub fn check(&self) -> ValidationReport {
        let (s, t) = (&*self.source, &*self.target);
        let mut r = ValidationReport::new("hom");
        let scalars = s.base().size() as u32;
        for (i, part) in self.parts.iter().enumerate() {
            let b = s.block(i);
            let f = |v: u32| &part[v as usize];
            let name = |v: u32| s.name(&s.inject(i, v));
            let ok = r.law(format!("block{i}.zero"), [witness(t.is_zero(f(b.zero())), || "0".into())])
                && r.law(
                    format!("block{i}.additive"),
                    b.elements().flat_map(|x| b.elements().map(move |y| (x, y))).map(|(x, y)| {
                        witness(*f(b.add(x, y)) == t.add(f(x), f(y)), || format!("{} + {}", name(x), name(y)))
                    }),
                )
                && r.law(
                    format!("block{i}.action"),
                    (0..scalars).flat_map(|c| b.elements().map(move |x| (c, x))).map(|(c, x)| {
                        witness(*f(b.act(c, x)) == t.act(c, f(x)), || {
                            format!("{}·{}", s.base().element_name(c), name(x))
                        })
                    }),
                );
            if !ok {
                break;
            }
        }
        r
    }

    pub fn validated(self) -> Result<Hom> {
        self.check().into_result()?;
        Ok(self)
    }

    /// Extends prescribed values to a hom by closing them under addition
    /// and action. Fails if the values are inconsistent or do not determine
    /// the map on the whole source.
    ///
    /// When every prescribed element lies in a single block, the closure
    /// runs block by block; otherwise the whole carrier is enumerated.
    pub fn extend(
        source: &Arc<FinSemimodule>,
        target: &Arc<FinSemimodule>,
        values: &[(Elem, Elem)],
        limits: &Limits,
    ) -> Result<Hom> {
        let home = |x: &Elem| {
            let nz: Vec<usize> = (0..x.len()).filter(|&i| x[i] != source.block(i).zero()).collect();
            (nz.len() <= 1).then(|| nz.first().copied())
        };
        if values.iter().all(|(x, _)| home(x).is_some()) {
            let mut per_block: Vec<Vec<(u32, Elem)>> = vec![Vec::new(); source.num_blocks()];
            for (x, y) in values {
                match home(x).flatten() {
                    Some(i) => per_block[i].push((x[i], y.clone())),
                    None if !target.is_zero(y) => {
                        return Err(Error::Malformed(format!("0 cannot map to {}", target.name(y))))
                    }
                    None => {}
                }
            }
            let mut parts = Vec::with_capacity(source.num_blocks());
            for (i, vals) in per_block.iter().enumerate() {
                let blk = source.block(i);
                let name = |v: u32| source.name(&source.inject(i, v));
                let scalars: Vec<u32> = blk.base().elements().collect();
                parts.push(close_values(
                    blk.size(),
                    blk.zero(),
                    vals,
                    target,
                    &name,
                    &scalars,
                    |x, y| blk.add(x, y),
                    |s, x| blk.act(s, x),
                )?);
            }
            return Hom::from_parts(source, target, parts).validated();
        }
        let n = source.size();
        limits.check("hom extension", n)?;
        let vals: Vec<(u32, Elem)> = values.iter().map(|(x, y)| (source.index_of(x) as u32, y.clone())).collect();
        let elem = |v: u32| source.element_at(v as usize);
        let name = |v: u32| source.name(&elem(v));
        let zero = source.index_of(&source.zero()) as u32;
        let scalars: Vec<u32> = source.base().elements().collect();
        let map = close_values(
            n as usize,
            zero,
            &vals,
            target,
            &name,
            &scalars,
            |x, y| source.index_of(&source.add(&elem(x), &elem(y))) as u32,
            |s, x| source.index_of(&source.act(s, &elem(x))) as u32,
        )?;
        Hom::from_fn(source, target, |x| map[source.index_of(x)].clone()).validated()
    }
}

/// Propagates prescribed values over a carrier `0..n` along sums and the
/// action, returning the full table.
struct Closure<'a> {
    target: &'a FinSemimodule,
    name: &'a dyn Fn(u32) -> String,
    map: Vec<Option<Elem>>,
    known: Vec<u32>,
    queue: VecDeque<u32>,
}

impl Closure<'_> {
    fn assign(&mut self, x: u32, y: Elem) -> Result<()> {
        match &self.map[x as usize] {
            Some(prev) if *prev != y => Err(Error::Malformed(format!(
                "inconsistent values at {}: {} vs {}",
                (self.name)(x),
                self.target.name(prev),
                self.target.name(&y)
            ))),
            Some(_) => Ok(()),
            None => {
                self.map[x as usize] = Some(y);
                self.known.push(x);
                self.queue.push_back(x);
                Ok(())
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn close_values(
    n: usize,
    zero: u32,
    values: &[(u32, Elem)],
    target: &FinSemimodule,
    name: &dyn Fn(u32) -> String,
    scalars: &[u32],
    add: impl Fn(u32, u32) -> u32,
    act: impl Fn(u32, u32) -> u32,
) -> Result<Vec<Elem>> {
    let mut c = Closure { target, name, map: vec![None; n], known: Vec::new(), queue: VecDeque::new() };
    c.assign(zero, target.zero())?;
    for (x, y) in values {
        c.assign(*x, y.clone())?;
    }
    while let Some(x) = c.queue.pop_front() {
        let fx = c.map[x as usize].clone().expect("queued elements are mapped");
        for &s in scalars {
            c.assign(act(s, x), target.act(s, &fx))?;
        }
        // Sums with everything mapped so far; later arrivals pair with x
        // when they are dequeued themselves.
        for k in 0..c.known.len() {
            let y = c.known[k];
            let fy = c.map[y as usize].clone().expect("known elements are mapped");
            c.assign(add(x, y), target.add(&fx, &fy))?;
        }
    }
    c.map
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| Error::Malformed(format!("values do not determine the map at {}", name(i as u32))))
        })
        .collect()
}

/// All homs from one block into `target`, via images of the block's
/// generators. Each candidate is propagated along addition by additive
/// generators and along the action; consistency on every edge is exactly
/// the hom condition.
pub(crate) fn block_homs(block: &Block, target: &FinSemimodule, target_elems: &[Elem]) -> Vec<Vec<Elem>> {
    let gens = block.generators();
    let addgens = block.additive_generators();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    let scalars = block.base().size() as u32;
    'outer: loop {
        let mut map: Vec<Option<Elem>> = vec![None; block.size()];
        map[block.zero() as usize] = Some(target.zero());
        let mut consistent = true;
        for (k, &g) in gens.iter().enumerate() {
            let y = target_elems[choice[k]].clone();
            match &map[g as usize] {
                Some(prev) if *prev != y => consistent = false,
                _ => map[g as usize] = Some(y),
            }
        }
        // Values of additive generators follow from generator images.
        if consistent {
            for &g in gens {
                let fg = map[g as usize].clone().unwrap();
                for s in 0..scalars {
                    let x = block.act(s, g);
                    let y = target.act(s, &fg);
                    match &map[x as usize] {
                        Some(prev) if *prev != y => consistent = false,
                        _ => map[x as usize] = Some(y),
                    }
                }
            }
        }
        if consistent {
            let mut queue = VecDeque::from([block.zero()]);
            let mut seen = vec![false; block.size()];
            seen[block.zero() as usize] = true;
            'bfs: while let Some(x) = queue.pop_front() {
                let fx = map[x as usize].clone().unwrap();
                let edges = addgens
                    .iter()
                    .map(|&t| (block.add(x, t), target.add(&fx, map[t as usize].as_ref().unwrap())))
                    .chain((0..scalars).map(|s| (block.act(s, x), target.act(s, &fx))));
                for (y, fy) in edges.collect::<Vec<_>>() {
                    match &map[y as usize] {
                        Some(prev) if *prev != fy => {
                            consistent = false;
                            break 'bfs;
                        }
                        Some(_) => {}
                        None => map[y as usize] = Some(fy),
                    }
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        if consistent {
            out.push(map.into_iter().map(|v| v.expect("generators span the block")).collect());
        }
        // Next candidate in lexicographic order.
        for k in (0..gens.len()).rev() {
            choice[k] += 1;
            if choice[k] < target_elems.len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    out
}

/// Every hom `A → B`, in a deterministic order. The list is complete and
/// free of duplicates.
pub fn enumerate_homs(a: &Arc<FinSemimodule>, b: &Arc<FinSemimodule>, limits: &Limits) -> Result<Vec<Hom>> {
    let target_elems = b.elements(limits)?;
    let candidates = a
        .blocks()
        .iter()
        .fold(1u128, |acc, blk| acc.saturating_mul(sat_pow(target_elems.len() as u128, blk.generators().len())));
    limits.check_budget("hom enumeration", candidates)?;
    let per_block: Vec<Vec<Vec<Elem>>> = a.blocks().iter().map(|blk| block_homs(blk, b, &target_elems)).collect();
    let mut out = vec![Vec::new()];
    for options in &per_block {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for opt in options {
                let mut p: Vec<Vec<Elem>> = prefix.clone();
                p.push(opt.clone());
                next.push(p);
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(|parts| Hom::from_parts(a, b, parts)).collect())
}
