//! The twisted arrow construction and its relatives, computed as nerves
//! `F^*ℂ` of a simplex-level cosimplicial object: an `n`-simplex is a scaled
//! map `F(n) → ℂ`, stored as the image of the top simplex of `F(n)`.

use crate::error::{check_cap, Error, Result};
use crate::scaled::{mark, scale, Decoration, MarkedSet, ScaledSet};
use crate::sset::{
    collapse, op_simplex, opposite, ordmap, product, FinitePoset, Product, Simplex, SimplexId, SimplicialMap,
    SimplicialSet,
};
use crate::zoo::SimplexObject;
use itertools::Itertools;
use std::collections::{BTreeSet, HashMap};

/// `F^*ℂ` truncated at `max_dim`, with the witness of every simplex.
#[derive(Clone, Debug)]
pub struct Singular {
    pub shape: SimplexObject,
    pub target: ScaledSet,
    pub set: SimplicialSet,
    /// Witness of each nondegenerate simplex, by dimension and index.
    pub witness: Vec<Vec<Simplex>>,
    /// Every admissible witness, degenerate ones included, with its simplex.
    index: Vec<HashMap<Simplex, Simplex>>,
}

impl Singular {
    pub fn max_dim(&self) -> usize {
        self.index.len() - 1
    }

    /// The simplex with the given witness, if the witness is admissible.
    pub fn simplex_of(&self, w: &Simplex) -> Option<&Simplex> {
        self.index.get(self.level_of(w.dim())?)?.get(w)
    }

    fn level_of(&self, top: usize) -> Option<usize> {
        (0..=self.max_dim()).find(|&n| self.shape.top(n) == top)
    }

    pub fn witness_of(&self, s: &Simplex) -> Simplex {
        let w = &self.witness[s.base.dim][s.base.idx];
        if s.word.is_empty() {
            w.clone()
        } else {
            let eta = s.surjection();
            self.target.base.act(&self.shape.fmap(&eta, s.base.dim), w)
        }
    }

    /// Edges whose witness has every triangle thin.
    pub fn marking(&self) -> Result<MarkedSet> {
        let c = &self.target;
        let top = self.shape.top(1);
        let tris: Vec<Vec<usize>> = (0..=top).combinations(3).collect();
        let marked: Vec<usize> = self
            .set
            .ids(1)
            .filter(|id| {
                let w = &self.witness[1][id.idx];
                tris.iter().all(|t| c.is_decorated(&c.base.act(t, w)))
            })
            .map(|id| id.idx)
            .collect();
        mark(&self.set, Decoration::Ids(marked))
    }

    /// The map `F^*ℂ → G^*ℂ` given by precomposing witnesses with a natural
    /// family of vertex maps `G(n) → F(n)`.
    pub fn restrict_along(&self, other: &Singular, along: impl Fn(usize) -> Vec<usize>) -> Result<SimplicialMap> {
        let c = &self.target.base;
        let assign = (0..self.set.counts().len())
            .map(|d| {
                self.set
                    .ids(d)
                    .map(|id| {
                        let w = c.act(&along(d), &self.witness[d][id.idx]);
                        other.simplex_of(&w).cloned().ok_or_else(|| {
                            Error::Invalid(format!("restricted witness {} is not admissible", c.describe(&w)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(self.set.clone(), other.set.clone(), assign)
    }

    /// The map `F^*ℂ → F^*𝔻` induced by a scaled map `ℂ → 𝔻`.
    pub fn push_forward(&self, other: &Singular, f: &SimplicialMap) -> Result<SimplicialMap> {
        let assign = (0..self.set.counts().len())
            .map(|d| {
                self.set
                    .ids(d)
                    .map(|id| {
                        let w = f.apply(&self.witness[d][id.idx]);
                        other.simplex_of(&w).cloned().ok_or_else(|| Error::Invalid("image witness is not admissible".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(self.set.clone(), other.set.clone(), assign)
    }
}

/// Image-of-vertex constraint on witnesses: `allowed(n, t, v)` says whether
/// vertex `t` of `F(n)` may go to vertex `v` of `ℂ`.
pub type VertexConstraint<'a> = &'a dyn Fn(usize, usize, usize) -> bool;

/// Build `F^*ℂ` up to `max_dim`.
pub fn singular(shape: SimplexObject, c: &ScaledSet, max_dim: usize, allowed: VertexConstraint) -> Result<Singular> {
    check_cap(max_dim)?;
    let base = &c.base;
    let mut set = SimplicialSet::empty();
    let mut witness: Vec<Vec<Simplex>> = Vec::new();
    let mut index: Vec<HashMap<Simplex, Simplex>> = Vec::new();
    for n in 0..=max_dim {
        let top = shape.top(n);
        let thin = shape.thin(n);
        let mut level = Vec::new();
        let mut idx = HashMap::new();
        let mut cands = base.all_simplices(top);
        cands.sort();
        for w in cands {
            let vs = base.vertices(&w);
            if !vs.iter().enumerate().all(|(t, &v)| allowed(n, t, v)) {
                continue;
            }
            if !thin.iter().all(|t| c.is_decorated(&base.act(t, &w))) {
                continue;
            }
            // degenerate at j iff w = s_j d_j w
            let word: Vec<usize> = (0..n)
                .rev()
                .filter(|&j| {
                    let d = base.act(&shape.fmap(&ordmap::coface(n, j), n), &w);
                    base.act(&shape.fmap(&ordmap::codegeneracy(n - 1, j), n - 1), &d) == w
                })
                .collect();
            let simplex = if word.is_empty() {
                let id = if n == 0 {
                    let label = vs.iter().map(|&v| base.label(v)).collect::<Vec<_>>().join("");
                    SimplexId::new(0, set.push_vertex(label))
                } else {
                    let faces = (0..=n)
                        .map(|i| {
                            let d = base.act(&shape.fmap(&ordmap::coface(n, i), n), &w);
                            index[n - 1].get(&d).cloned().expect("faces of admissible witnesses are admissible")
                        })
                        .collect();
                    set.push(faces)?
                };
                level.push(w.clone());
                Simplex::nondeg(id)
            } else {
                // the nondegenerate part is the restriction along the
                // section picking the first element of each fiber
                let word_set: BTreeSet<usize> = word.iter().copied().collect();
                let section: Vec<usize> = (0..=n).filter(|t| *t == 0 || !word_set.contains(&(t - 1))).collect();
                let y = base.act(&shape.fmap(&section, n), &w);
                let ys = index[section.len() - 1].get(&y).cloned().expect("nondegenerate part was enumerated");
                debug_assert!(ys.word.is_empty());
                Simplex { word, base: ys.base }
            };
            idx.insert(w, simplex);
        }
        witness.push(level);
        index.push(idx);
    }
    while witness.last().is_some_and(|l| l.is_empty()) && witness.len() > 1 {
        witness.pop();
    }
    Ok(Singular { shape, target: c.clone(), set: set.seal(), witness, index })
}

fn any_vertex(_: usize, _: usize, _: usize) -> bool {
    true
}

/// The subcomplex of `ℂ` on simplices all of whose triangles are thin.
pub fn core(c: &ScaledSet) -> Result<(SimplicialSet, HashMap<SimplexId, SimplexId>)> {
    let keep: BTreeSet<SimplexId> = c
        .base
        .all_ids()
        .into_iter()
        .filter(|id| {
            let s = Simplex::nondeg(*id);
            c.all_faces_decorated(&s)
        })
        .collect();
    let (set, back) = c.base.subcomplex(|id| keep.contains(&id))?;
    let mut fwd = HashMap::new();
    for (d, l) in back.iter().enumerate() {
        for (k, old) in l.iter().enumerate() {
            fwd.insert(*old, SimplexId::new(d, k));
        }
    }
    Ok((set, fwd))
}

/// `Tw(ℂ)` with its marking and the projection to `𝒞 × 𝒞^op`.
#[derive(Clone, Debug)]
pub struct TwComplex {
    pub nerve: Singular,
    pub marked: MarkedSet,
    pub base_product: Product,
    pub projection: SimplicialMap,
}

pub fn tw(c: &ScaledSet, max_dim: usize) -> Result<TwComplex> {
    let nerve = singular(SimplexObject::Q, c, max_dim, &any_vertex)?;
    let marked = nerve.marking()?;
    let (core_set, fwd) = core(c)?;
    let base_product = product(&core_set, &opposite(&core_set));
    let to_core = |s: Simplex| Simplex { word: s.word.clone(), base: fwd[&s.base] };
    let projection = {
        let cb = &c.base;
        let assign = (0..nerve.set.counts().len())
            .map(|n| {
                nerve
                    .set
                    .ids(n)
                    .map(|id| {
                        let w = &nerve.witness[n][id.idx];
                        let a = cb.act(&(0..=n).collect::<Vec<_>>(), w);
                        let b = cb.act(&(n + 1..=2 * n + 1).collect::<Vec<_>>(), w);
                        base_product.pair(&to_core(a), &op_simplex(&to_core(b)))
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(nerve.set.clone(), base_product.set.clone(), assign)?
    };
    Ok(TwComplex { nerve, marked, base_product, projection })
}

/// The classical twisted arrow poset: pairs `a ≤ b` with
/// `(a,b) ≤ (a',b')` iff `a ≤ a'` and `b' ≤ b`.
pub fn tw_poset(p: &FinitePoset) -> FinitePoset {
    let pairs: Vec<(usize, usize)> =
        (0..p.len()).flat_map(|a| (0..p.len()).map(move |b| (a, b))).filter(|&(a, b)| p.leq(a, b)).collect();
    let names = pairs.iter().map(|&(a, b)| format!("{}{}", p.name(a), p.name(b))).collect();
    let leq = pairs.iter().map(|&(a, b)| pairs.iter().map(|&(c, d)| p.leq(a, c) && p.leq(d, b)).collect()).collect();
    FinitePoset::new(names, leq).expect("twisted arrow order")
}

/// The fiber of `Tw(ℂ)` over `(x, y)`: witnesses constant at `x` on `Δⁿ` and
/// at `y` on `(Δⁿ)^op`.
pub fn tw_fiber(c: &ScaledSet, x: usize, y: usize, max_dim: usize) -> Result<Singular> {
    check_vertex(c, x)?;
    check_vertex(c, y)?;
    singular(SimplexObject::Q, c, max_dim, &|n, t, v| if t <= n { v == x } else { v == y })
}

/// The fiber `Tw(ℂ)_y` of the second projection.
pub fn tw_fiber_right(c: &ScaledSet, y: usize, max_dim: usize) -> Result<Singular> {
    check_vertex(c, y)?;
    singular(SimplexObject::Q, c, max_dim, &|n, t, v| t <= n || v == y)
}

fn check_vertex(c: &ScaledSet, v: usize) -> Result<()> {
    if v < c.base.count(0) {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{v} is not a vertex")))
    }
}

/// `ℂ_{/y}`: maps `★(n) → ℂ` sending the cone point to `y`.
pub fn slice_outer(c: &ScaledSet, y: usize, max_dim: usize) -> Result<Singular> {
    check_vertex(c, y)?;
    singular(SimplexObject::Star, c, max_dim, &|n, t, v| t <= n || v == y)
}

/// `𝓜_y` together with `ρ : 𝓜_y → ℂ_{/y}` and `π : 𝓜_y → Tw(ℂ)_y`.
#[derive(Clone, Debug)]
pub struct MSpan {
    pub m: Singular,
    pub slice: Singular,
    pub fiber: Singular,
    pub rho: SimplicialMap,
    pub pi: SimplicialMap,
}

/// Maps `⊞(n) → ℂ` sending `J₁ = {n+1, …, 2n+2}` to `y`.
pub fn m_y(c: &ScaledSet, y: usize, max_dim: usize) -> Result<MSpan> {
    check_vertex(c, y)?;
    let m = singular(SimplexObject::Boxtimes, c, max_dim, &|n, t, v| t <= n || v == y)?;
    let slice = slice_outer(c, y, max_dim)?;
    let fiber = tw_fiber_right(c, y, max_dim)?;
    let rho = m.restrict_along(&slice, |n| (0..=n).chain([2 * n + 2]).collect())?;
    let pi = m.restrict_along(&fiber, |n| (0..=2 * n + 1).collect())?;
    Ok(MSpan { m, slice, fiber, rho, pi })
}

/// A level with its `J₁` block collapsed to a point, and the quotient map.
#[derive(Clone, Debug)]
pub struct RightQuotient {
    pub set: ScaledSet,
    pub quotient: SimplicialMap,
}

/// `F(n)^R`: collapse the `J₁` block of `F(n)`; thin triangles are the images
/// of thin triangles.
pub fn right_quotient(shape: SimplexObject, n: usize) -> Result<RightQuotient> {
    let level = shape.level(n)?;
    let x = &level.set.base;
    let (_, j1) = shape.partition(n);
    let block = x.lookup_id(&j1).expect("J₁ spans a face");
    let (q, map) = collapse(x, &[x.closure(&[block])])?;
    let thin: Vec<usize> = level
        .set
        .cells()
        .iter()
        .map(|&c| map.image(SimplexId::new(2, c)))
        .filter(|s| !s.is_degenerate())
        .map(|s| s.base.idx)
        .collect();
    Ok(RightQuotient { set: scale(&q, Decoration::Ids(thin))?, quotient: map })
}

/// The maps `iₙ : Q(n)^R → ⊞(n)^R` and `rₙ : ⊞(n)^R → Q(n)^R`, with the
/// quotients they descend along.
#[derive(Clone, Debug)]
pub struct RetractionPair {
    pub q: RightQuotient,
    pub b: RightQuotient,
    pub i: SimplicialMap,
    pub r: SimplicialMap,
}

/// Descend a vertex map `F(n) → G(n)` of simplices to the right quotients.
fn descend(
    src_shape: SimplexObject,
    tgt: &RightQuotient,
    src: &RightQuotient,
    n: usize,
    vmap: &[usize],
) -> Result<SimplicialMap> {
    let s_level = src_shape.level(n)?.set.base;
    let t_level = tgt.quotient.source().clone();
    let upstairs = SimplicialMap::from_vertex_map(&s_level, &t_level, vmap)?;
    let composite = upstairs.then(&tgt.quotient)?;
    // a quotient map is surjective on nondegenerate simplices; pick any lift
    let q = src.quotient.assignment();
    let counts = src.set.base.counts();
    let mut assign: Vec<Vec<Option<Simplex>>> = counts.iter().map(|&c| vec![None; c]).collect();
    for (d, l) in q.iter().enumerate() {
        for (k, img) in l.iter().enumerate() {
            if img.is_degenerate() {
                continue;
            }
            let val = composite.image(SimplexId::new(d, k)).clone();
            let slot = &mut assign[img.base.dim][img.base.idx];
            match slot {
                Some(prev) if *prev != val => return Err(Error::Invalid("vertex map does not descend".into())),
                _ => *slot = Some(val),
            }
        }
    }
    let assign = assign
        .into_iter()
        .map(|l| l.into_iter().map(|s| s.ok_or_else(|| Error::Invalid("quotient is not surjective".into()))).collect())
        .collect::<Result<Vec<Vec<Simplex>>>>()?;
    SimplicialMap::new(src.set.base.clone(), tgt.set.base.clone(), assign)
}

pub fn retraction_pair(n: usize) -> Result<RetractionPair> {
    let q = right_quotient(SimplexObject::Q, n)?;
    let b = right_quotient(SimplexObject::Boxtimes, n)?;
    let top = 2 * n + 2;
    let i = descend(SimplexObject::Q, &b, &q, n, &(0..top).collect::<Vec<_>>())?;
    let rv: Vec<usize> = (0..=top).map(|v| if v < top { v } else { v - 1 }).collect();
    let r = descend(SimplexObject::Boxtimes, &q, &b, n, &rv)?;
    Ok(RetractionPair { q, b, i, r })
}

impl RetractionPair {
    /// Components of the homotopy `iₙ∘rₙ ⇒ id`, i.e. the images in `⊞(n)^R`
    /// of the edges `ir(v) → v`.
    pub fn homotopy_components(&self, n: usize) -> Vec<Simplex> {
        let top = 2 * n + 2;
        let x = self.b.quotient.source();
        (0..=top)
            .map(|v| {
                let from = if v < top { v } else { v - 1 };
                let e = x.lookup(&[from, v]).expect("monotone edge");
                self.b.quotient.apply(&e)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{nerve, standard};

    fn sharp(n: usize) -> ScaledSet {
        ScaledSet::sharp(&standard(n))
    }

    #[test]
    fn small_tw() {
        let t0 = tw(&sharp(0), 3).unwrap();
        assert_eq!(t0.nerve.set.counts(), vec![1]);
        let t1 = tw(&sharp(1), 3).unwrap();
        assert_eq!(t1.nerve.set.counts(), vec![3, 2]);
        assert_eq!(t1.marked.count(), 2);
        assert_eq!(tw(&sharp(2), 2).unwrap().nerve.set.count(0), 6);
        t1.nerve.set.validate().unwrap();
        t1.projection.validate().unwrap();
    }

    #[test]
    fn tw_poset_examples() {
        assert_eq!(tw_poset(&FinitePoset::chain(0)).len(), 1);
        let p1 = tw_poset(&FinitePoset::chain(1));
        assert_eq!(p1.len(), 3);
        let i = |s: &str| p1.index_of(s).unwrap();
        assert!(p1.lt(i("01"), i("00")) && p1.lt(i("01"), i("11")));
        let p2 = tw_poset(&FinitePoset::chain(2));
        assert_eq!(p2.len(), 6);
        assert!(p2.leq(p2.index_of("02").unwrap(), p2.index_of("11").unwrap()));
    }

    #[test]
    fn oracle_on_chains() {
        for n in 0..=2 {
            let p = FinitePoset::chain(n);
            let t = tw(&ScaledSet::sharp(&nerve(&p)), 3).unwrap();
            let o = nerve(&tw_poset(&p)).skeleton(3);
            assert!(crate::sset::isomorphic(&t.nerve.set, &o).is_some());
        }
    }

    #[test]
    fn slices_and_m() {
        assert_eq!(slice_outer(&sharp(1), 1, 2).unwrap().set.counts(), vec![2, 1]);
        assert_eq!(slice_outer(&sharp(0), 0, 2).unwrap().set.counts(), vec![1]);
        assert_eq!(slice_outer(&sharp(2), 2, 1).unwrap().set.count(0), 3);
        let span = m_y(&sharp(1), 1, 2).unwrap();
        assert_eq!(span.m.set.count(0), 2);
        assert_eq!(m_y(&sharp(0), 0, 2).unwrap().m.set.counts(), vec![1]);
        span.rho.validate().unwrap();
        span.pi.validate().unwrap();
        assert!(slice_outer(&sharp(1), 5, 1).is_err());
    }

    #[test]
    fn fiber_is_fiber_of_projection() {
        let c = sharp(2);
        let t = tw(&c, 2).unwrap();
        for (x, y) in [(0, 2), (1, 1), (0, 1)] {
            let f = tw_fiber(&c, x, y, 2).unwrap();
            let over: usize = t
                .nerve
                .set
                .all_ids()
                .iter()
                .filter(|id| {
                    let img = t.projection.image(**id);
                    t.base_product.set.vertices(img).iter().all(|&v| v == x * 3 + y)
                })
                .count();
            assert_eq!(f.set.total(), over, "({x},{y})");
        }
    }

    #[test]
    fn retraction() {
        for n in 0..=2 {
            let rp = retraction_pair(n).unwrap();
            let ri = rp.i.then(&rp.r).unwrap();
            assert!(ri.same_as(&SimplicialMap::identity(&rp.q.set.base)));
            assert!(rp.q.set.preserved_by(&rp.i, &rp.b.set));
            assert!(rp.b.set.preserved_by(&rp.r, &rp.q.set));
            assert!(rp.homotopy_components(n).iter().all(|e| e.is_degenerate()));
        }
    }

    #[test]
    fn functorial_on_inclusion() {
        let c = sharp(1);
        let d = sharp(2);
        let f = SimplicialMap::from_vertex_map(&c.base, &d.base, &[0, 2]).unwrap();
        let (tc, td) = (tw(&c, 2).unwrap(), tw(&d, 2).unwrap());
        let g = tc.nerve.push_forward(&td.nerve, &f).unwrap();
        g.validate().unwrap();
        assert!(g.is_mono());
    }
}
